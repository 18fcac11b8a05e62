//! Exact rational linear algebra: rank, nullspace, and span comparison.
//!
//! Everything here runs over arbitrary-precision rationals, so ranks and
//! nullspaces are exact. Nullspace bases are returned as primitive integer
//! vectors (coprime entries, first nonzero entry positive), which keeps the
//! output stable for tests and serialization.

use num::{BigInt, BigRational, Signed, Zero};

/// Converts an integer row to rationals.
pub fn rational_row(row: &[i64]) -> Vec<BigRational> {
    row.iter()
        .map(|&a| BigRational::from_integer(BigInt::from(a)))
        .collect()
}

/// Reduced row echelon form in place. Returns the pivot column of each
/// nonzero row, in order.
fn rref(rows: &mut [Vec<BigRational>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= p * &f;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Rank of a rational matrix given as rows.
pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    let mut work: Vec<Vec<BigRational>> = rows.to_vec();
    rref(&mut work).len()
}

/// Rank of an integer matrix given as rows.
pub fn rank_i64(rows: &[Vec<i64>]) -> usize {
    let work: Vec<Vec<BigRational>> = rows.iter().map(|r| rational_row(r)).collect();
    rank(&work)
}

/// Scales a rational vector to a primitive integer vector: multiply by the
/// denominator lcm, divide by the entry gcd, and make the first nonzero
/// entry positive.
fn primitive_integer(v: &[BigRational]) -> Vec<BigInt> {
    let mut lcm = BigInt::from(1);
    for x in v {
        lcm = num::integer::lcm(lcm, x.denom().clone());
    }
    let mut ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = num::integer::gcd(g, x.abs());
    }
    if !g.is_zero() {
        for x in ints.iter_mut() {
            *x = &*x / &g;
        }
    }
    if let Some(first) = ints.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in ints.iter_mut() {
                *x = -&*x;
            }
        }
    }
    ints
}

/// Basis of the right nullspace { v : A v = 0 } as primitive integer
/// vectors, one per free column, in free-column order.
pub fn nullspace(rows: &[Vec<BigRational>], ncols: usize) -> Vec<Vec<BigInt>> {
    let mut work: Vec<Vec<BigRational>> = rows.to_vec();
    let pivots = rref(&mut work);
    let pivot_set: Vec<Option<usize>> = {
        let mut m = vec![None; ncols];
        for (row, &c) in pivots.iter().enumerate() {
            m[c] = Some(row);
        }
        m
    };
    let mut basis = Vec::new();
    for f in 0..ncols {
        if pivot_set[f].is_some() {
            continue;
        }
        let mut v = vec![BigRational::zero(); ncols];
        v[f] = BigRational::from_integer(BigInt::from(1));
        for (c, slot) in pivot_set.iter().enumerate() {
            if let Some(row) = slot {
                v[c] = -work[*row][f].clone();
            }
        }
        basis.push(primitive_integer(&v));
    }
    basis
}

/// Nullspace of an integer matrix given as rows of length `ncols`.
pub fn nullspace_i64(rows: &[Vec<i64>], ncols: usize) -> Vec<Vec<BigInt>> {
    let work: Vec<Vec<BigRational>> = rows.iter().map(|r| rational_row(r)).collect();
    nullspace(&work, ncols)
}

/// True when the two integer row sets span the same rational subspace.
pub fn same_span(a: &[Vec<i64>], b: &[Vec<i64>]) -> bool {
    let ra = rank_i64(a);
    let rb = rank_i64(b);
    if ra != rb {
        return false;
    }
    let mut stacked: Vec<Vec<i64>> = a.to_vec();
    stacked.extend_from_slice(b);
    rank_i64(&stacked) == ra
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_known_matrices() {
        assert_eq!(rank_i64(&[vec![1, 0], vec![0, 1]]), 2);
        assert_eq!(rank_i64(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank_i64(&[vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(rank_i64(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]), 2);
    }

    #[test]
    fn nullspace_is_primitive() {
        // x + y = 0, z free: basis { (1, -1, 0), (0, 0, 1) } up to order.
        let basis = nullspace_i64(&[vec![2, 2, 0]], 3);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            let row: Vec<i64> = v.iter().map(|x| i64::try_from(x).unwrap()).collect();
            assert_eq!(2 * row[0] + 2 * row[1], 0);
        }
        assert_eq!(basis[0], vec![BigInt::from(1), BigInt::from(-1), BigInt::from(0)]);
        assert_eq!(basis[1], vec![BigInt::from(0), BigInt::from(0), BigInt::from(1)]);
    }

    #[test]
    fn nullspace_of_full_rank_matrix_is_empty() {
        assert!(nullspace_i64(&[vec![1, 0], vec![0, 1]], 2).is_empty());
    }

    #[test]
    fn span_comparison() {
        let a = vec![vec![1, 0, 0], vec![0, 1, 0]];
        let b = vec![vec![1, 1, 0], vec![1, -1, 0]];
        let c = vec![vec![1, 0, 0], vec![0, 0, 1]];
        assert!(same_span(&a, &b));
        assert!(!same_span(&a, &c));
    }
}
