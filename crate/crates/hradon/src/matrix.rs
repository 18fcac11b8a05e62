//! Dense integer matrices and validated signed matrices.
//!
//! [`IntMatrix`] is a plain row-major integer matrix used for exact products,
//! Kronecker products, and identity tests. [`SignedMatrix`] wraps a square
//! [`IntMatrix`] whose entries are restricted to {-1, 0, +1}; it is the
//! representation of J-operators, Hurwitz-Radon family members, and
//! change-of-basis maps. All arithmetic is exact; overflow panics in debug
//! builds and the supported orders (at most 64) keep products far below the
//! i64 range.

use crate::error::{Error, Result};
use serde_json::Value;

/// Row-major integer matrix of shape `rows x cols`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    /// Zero matrix of the given shape.
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    /// Identity matrix of order `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from explicit rows. All rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Domain("rows of unequal length".into()));
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry at `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.data[row * self.cols + col]
    }

    /// Sets the entry at `(row, col)`.
    pub fn set(&mut self, row: usize, col: usize, value: i64) {
        self.data[row * self.cols + col] = value;
    }

    /// Matrix sum. Panics if the shapes differ.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Matrix difference. Panics if the shapes differ.
    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Entrywise negation.
    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    /// Entrywise scaling by `c`.
    pub fn scale(&self, c: i64) -> Self {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// Matrix product. Panics if the inner dimensions differ.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if b != 0 {
                        out.set(i, j, out.get(i, j) + a * b);
                    }
                }
            }
        }
        out
    }

    /// Transpose.
    pub fn transpose(&self) -> Self {
        let mut out = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Kronecker product: entry at `(ia*rb + ib, ja*cb + jb)` is
    /// `self[ia][ja] * other[ib][jb]`.
    ///
    /// With column-major vectorization this satisfies
    /// `vec(A X B) = (Bᵀ ⊗ A) vec(X)`.
    pub fn kronecker(&self, other: &Self) -> Self {
        let mut out = IntMatrix::zero(self.rows * other.rows, self.cols * other.cols);
        for ia in 0..self.rows {
            for ja in 0..self.cols {
                let a = self.get(ia, ja);
                if a == 0 {
                    continue;
                }
                for ib in 0..other.rows {
                    for jb in 0..other.cols {
                        let b = other.get(ib, jb);
                        if b != 0 {
                            out.set(ia * other.rows + ib, ja * other.cols + jb, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    /// True when every entry is zero.
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&a| a == 0)
    }

    /// True when the matrix equals `c` times the identity.
    pub fn is_scaled_identity(&self, c: i64) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                let want = if i == j { c } else { 0 };
                if self.get(i, j) != want {
                    return false;
                }
            }
        }
        true
    }

    /// Applies the matrix to an integer column vector.
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    /// Rows as owned vectors, for display and serialization.
    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j)).collect())
            .collect()
    }
}

/// Square integer matrix with entries in {-1, 0, +1}.
///
/// The type does not require the signed-permutation property; use
/// [`SignedMatrix::is_signed_permutation`] to test it. This keeps sums and
/// intermediate objects representable while the constructor still rejects
/// entries outside the sign range.
///
/// # Examples
///
/// ```
/// use hradon::SignedMatrix;
///
/// let p = SignedMatrix::from_rows(vec![vec![0, -1], vec![1, 0]]).unwrap();
/// assert!(p.is_signed_permutation());
/// assert!(p.is_skew());
/// assert!(p.to_int().mul(&p.to_int()).is_scaled_identity(-1));
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedMatrix(IntMatrix);

impl SignedMatrix {
    /// Validates entries and squareness.
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let m = IntMatrix::from_rows(rows)?;
        SignedMatrix::from_int(m)
    }

    /// Validates an existing integer matrix.
    pub fn from_int(m: IntMatrix) -> Result<Self> {
        if m.rows() != m.cols() {
            return Err(Error::Domain(format!(
                "signed matrix must be square, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let e = m.get(i, j);
                if !(-1..=1).contains(&e) {
                    return Err(Error::Domain(format!(
                        "entry {} at ({}, {}) outside {{-1, 0, 1}}",
                        e, i, j
                    )));
                }
            }
        }
        Ok(SignedMatrix(m))
    }

    /// Builds the matrix column by column: `f(col)` returns the row index of
    /// the single nonzero in that column together with its sign.
    pub fn from_column_action(n: usize, f: impl Fn(usize) -> (usize, i64)) -> Result<Self> {
        let mut m = IntMatrix::zero(n, n);
        for col in 0..n {
            let (row, sign) = f(col);
            if row >= n || (sign != 1 && sign != -1) {
                return Err(Error::Domain(format!(
                    "column action out of range at column {}",
                    col
                )));
            }
            m.set(row, col, sign);
        }
        SignedMatrix::from_int(m)
    }

    /// Order of the matrix.
    pub fn order(&self) -> usize {
        self.0.rows()
    }

    /// Entry at `(row, col)`.
    pub fn entry(&self, row: usize, col: usize) -> i64 {
        self.0.get(row, col)
    }

    /// Borrows the underlying integer matrix.
    pub fn as_int(&self) -> &IntMatrix {
        &self.0
    }

    /// Copies into a plain integer matrix.
    pub fn to_int(&self) -> IntMatrix {
        self.0.clone()
    }

    /// Transpose.
    pub fn transpose(&self) -> Self {
        SignedMatrix(self.0.transpose())
    }

    /// Entrywise negation.
    pub fn neg(&self) -> Self {
        SignedMatrix(self.0.neg())
    }

    /// True when every row and every column has exactly one nonzero entry.
    pub fn is_signed_permutation(&self) -> bool {
        let n = self.order();
        let mut row_counts = vec![0usize; n];
        let mut col_counts = vec![0usize; n];
        for (i, rc) in row_counts.iter_mut().enumerate() {
            for (j, cc) in col_counts.iter_mut().enumerate() {
                if self.entry(i, j) != 0 {
                    *rc += 1;
                    *cc += 1;
                }
            }
        }
        row_counts.iter().all(|&c| c == 1) && col_counts.iter().all(|&c| c == 1)
    }

    /// True when the matrix is skew-symmetric.
    pub fn is_skew(&self) -> bool {
        let n = self.order();
        (0..n).all(|i| (0..n).all(|j| self.entry(i, j) == -self.entry(j, i)))
    }

    /// True when the matrix is symmetric.
    pub fn is_symmetric(&self) -> bool {
        let n = self.order();
        (0..n).all(|i| (0..n).all(|j| self.entry(i, j) == self.entry(j, i)))
    }

    /// The square as an integer matrix.
    pub fn square(&self) -> IntMatrix {
        self.0.mul(&self.0)
    }

    /// True when the supports are entrywise disjoint.
    pub fn hadamard_disjoint(&self, other: &Self) -> bool {
        let n = self.order();
        if other.order() != n {
            return false;
        }
        (0..n).all(|i| (0..n).all(|j| self.entry(i, j) == 0 || other.entry(i, j) == 0))
    }

    /// Positions of nonzero entries as `(row, col, sign)`, row-major order.
    pub fn support(&self) -> Vec<(usize, usize, i64)> {
        let n = self.order();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let e = self.entry(i, j);
                if e != 0 {
                    out.push((i, j, e));
                }
            }
        }
        out
    }

    /// Serializes as a JSON array of arrays of integers.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.0
                .to_rows()
                .into_iter()
                .map(|row| Value::Array(row.into_iter().map(Value::from).collect()))
                .collect(),
        )
    }

    /// Parses the array-of-arrays JSON form.
    pub fn from_json(v: &Value) -> Result<Self> {
        let outer = v
            .as_array()
            .ok_or_else(|| Error::Parse("expected a JSON array of rows".into()))?;
        let mut rows = Vec::with_capacity(outer.len());
        for row in outer {
            let cells = row
                .as_array()
                .ok_or_else(|| Error::Parse("expected each row to be a JSON array".into()))?;
            let mut out = Vec::with_capacity(cells.len());
            for cell in cells {
                let e = cell
                    .as_i64()
                    .ok_or_else(|| Error::Parse("expected integer matrix entries".into()))?;
                out.push(e);
            }
            rows.push(out);
        }
        SignedMatrix::from_rows(rows).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let a = IntMatrix::from_rows(vec![vec![1, 2], vec![3, 4]]).unwrap();
        let b = IntMatrix::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(
            a.mul(&b),
            IntMatrix::from_rows(vec![vec![2, 1], vec![4, 3]]).unwrap()
        );
        assert_eq!(
            a.transpose(),
            IntMatrix::from_rows(vec![vec![1, 3], vec![2, 4]]).unwrap()
        );
    }

    #[test]
    fn kronecker_matches_hand_expansion() {
        let p = IntMatrix::from_rows(vec![vec![0, -1], vec![1, 0]]).unwrap();
        let q = IntMatrix::from_rows(vec![vec![1, 0], vec![0, -1]]).unwrap();
        let k = p.kronecker(&q);
        let want = IntMatrix::from_rows(vec![
            vec![0, 0, -1, 0],
            vec![0, 0, 0, 1],
            vec![1, 0, 0, 0],
            vec![0, -1, 0, 0],
        ])
        .unwrap();
        assert_eq!(k, want);
    }

    #[test]
    fn kronecker_vec_identity() {
        // vec(A X B) = (B^T kron A) vec(X) with column-major vec.
        let a = IntMatrix::from_rows(vec![vec![1, 2], vec![3, 4]]).unwrap();
        let b = IntMatrix::from_rows(vec![vec![0, 1], vec![-1, 2]]).unwrap();
        let x = IntMatrix::from_rows(vec![vec![5, -1], vec![2, 7]]).unwrap();
        let axb = a.mul(&x).mul(&b);
        let vec_of = |m: &IntMatrix| -> Vec<i64> {
            let mut v = Vec::new();
            for col in 0..m.cols() {
                for row in 0..m.rows() {
                    v.push(m.get(row, col));
                }
            }
            v
        };
        let lhs = vec_of(&axb);
        let rhs = b.transpose().kronecker(&a).apply(&vec_of(&x));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn signed_matrix_rejects_large_entries() {
        assert!(SignedMatrix::from_rows(vec![vec![0, 2], vec![1, 0]]).is_err());
        assert!(SignedMatrix::from_rows(vec![vec![0, 1, 0], vec![1, 0, 0]]).is_err());
    }

    #[test]
    fn signed_permutation_and_symmetry_classes() {
        let p = SignedMatrix::from_rows(vec![vec![0, -1], vec![1, 0]]).unwrap();
        assert!(p.is_signed_permutation());
        assert!(p.is_skew());
        assert!(!p.is_symmetric());
        assert!(p.square().is_scaled_identity(-1));

        let q = SignedMatrix::from_rows(vec![vec![1, 0], vec![0, -1]]).unwrap();
        assert!(q.is_signed_permutation());
        assert!(q.is_symmetric());
        assert!(q.square().is_scaled_identity(1));

        let not_perm = SignedMatrix::from_rows(vec![vec![1, 0], vec![1, 0]]).unwrap();
        assert!(!not_perm.is_signed_permutation());
    }

    #[test]
    fn hadamard_disjoint_detects_overlap() {
        let p = SignedMatrix::from_rows(vec![vec![0, -1], vec![1, 0]]).unwrap();
        let q = SignedMatrix::from_rows(vec![vec![1, 0], vec![0, -1]]).unwrap();
        assert!(p.hadamard_disjoint(&q));
        assert!(!p.hadamard_disjoint(&p));
    }

    #[test]
    fn json_round_trip() {
        let p = SignedMatrix::from_rows(vec![vec![0, -1], vec![1, 0]]).unwrap();
        let v = p.to_json();
        assert_eq!(SignedMatrix::from_json(&v).unwrap(), p);
        assert!(SignedMatrix::from_json(&Value::from("nope")).is_err());
    }

    #[test]
    fn column_action_builder() {
        // Column x maps to row x XOR 1 with alternating signs.
        let m = SignedMatrix::from_column_action(2, |x| (x ^ 1, if x == 0 { 1 } else { -1 }))
            .unwrap();
        assert_eq!(
            m,
            SignedMatrix::from_rows(vec![vec![0, -1], vec![1, 0]]).unwrap()
        );
    }
}
