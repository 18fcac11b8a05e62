//! Orthogonal designs with signed-variable entries, built from families of
//! signed-permutation matrices.
//!
//! A design of order n is an n x n matrix whose entries are zero or signed
//! variables; it is orthogonal of type (u_1, ..., u_v) when D D^T expands to
//! (sum_k u_k x_k^2) I. Two designs X and Y on disjoint variables are
//! amicable when X Y^T = Y X^T. All verdicts here come from exact symbolic
//! expansion over integer coefficient matrices; the random evaluation
//! checks are independent numeric oracles, not the source of truth.

use crate::error::{Error, Result};
use crate::hr_arith;
use crate::hr_family::HRFamily;
use crate::matrix::{IntMatrix, SignedMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt;

/// A square matrix whose entries are zero or a signed variable, stored as
/// `(index, sign)` with 1-based variable indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DesignMatrix {
    n: usize,
    var_count: usize,
    entries: Vec<Vec<Option<(usize, i8)>>>,
}

impl DesignMatrix {
    /// Wraps an entry grid, checking shape, variable range, and signs.
    pub fn new(entries: Vec<Vec<Option<(usize, i8)>>>, var_count: usize) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::Domain("design must have at least one row".into()));
        }
        if entries.iter().any(|row| row.len() != n) {
            return Err(Error::Domain("design must be square".into()));
        }
        for row in &entries {
            for &cell in row {
                if let Some((k, sign)) = cell {
                    if k == 0 || k > var_count {
                        return Err(Error::Domain(format!(
                            "variable index {} outside 1..={}",
                            k, var_count
                        )));
                    }
                    if sign != 1 && sign != -1 {
                        return Err(Error::Domain(format!("entry sign must be +-1, got {}", sign)));
                    }
                }
            }
        }
        Ok(DesignMatrix {
            n,
            var_count,
            entries,
        })
    }

    /// Side length of the design.
    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of variables, including any that do not occur in an entry.
    pub fn var_count(&self) -> usize {
        self.var_count
    }

    /// Entry at (i, j): `None` for zero, otherwise the signed variable.
    pub fn entry(&self, i: usize, j: usize) -> Option<(usize, i8)> {
        self.entries[i][j]
    }

    /// The 0/+-1 matrix multiplying variable `k` (1-based) in the design.
    pub fn coefficient(&self, k: usize) -> IntMatrix {
        assert!(k >= 1 && k <= self.var_count, "variable index out of range");
        let mut m = IntMatrix::zero(self.n, self.n);
        for (i, row) in self.entries.iter().enumerate() {
            for (j, &cell) in row.iter().enumerate() {
                if let Some((v, sign)) = cell {
                    if v == k {
                        m.set(i, j, sign as i64);
                    }
                }
            }
        }
        m
    }

    /// Substitutes one integer per variable.
    pub fn evaluate(&self, values: &[i64]) -> Result<IntMatrix> {
        if values.len() != self.var_count {
            return Err(Error::Domain(format!(
                "expected {} values, got {}",
                self.var_count,
                values.len()
            )));
        }
        let mut m = IntMatrix::zero(self.n, self.n);
        for (i, row) in self.entries.iter().enumerate() {
            for (j, &cell) in row.iter().enumerate() {
                if let Some((k, sign)) = cell {
                    m.set(i, j, sign as i64 * values[k - 1]);
                }
            }
        }
        Ok(m)
    }

    /// Bracket layout with one row per line and entries like `x2`, `-x3`,
    /// or `0`, right-aligned; `letter` names the variable namespace.
    pub fn render(&self, letter: char) -> String {
        let token = |cell: Option<(usize, i8)>| match cell {
            None => "0".to_string(),
            Some((k, 1)) => format!("{}{}", letter, k),
            Some((k, _)) => format!("-{}{}", letter, k),
        };
        let width = self
            .entries
            .iter()
            .flatten()
            .map(|&c| token(c).len())
            .max()
            .unwrap_or(1);
        let lines: Vec<String> = self
            .entries
            .iter()
            .map(|row| {
                let cells: Vec<String> = row
                    .iter()
                    .map(|&c| format!("{:>width$}", token(c), width = width))
                    .collect();
                format!("[ {} ]", cells.join(" "))
            })
            .collect();
        lines.join("\n")
    }

    /// Serializes as `{"n", "var_count", "entries"}` with each entry either
    /// `0` or a `[k, sign]` pair.
    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|row| {
                let cells: Vec<Value> = row
                    .iter()
                    .map(|&cell| match cell {
                        None => json!(0),
                        Some((k, sign)) => json!([k, sign]),
                    })
                    .collect();
                json!(cells)
            })
            .collect();
        json!({
            "n": self.n,
            "var_count": self.var_count,
            "entries": entries,
        })
    }

    /// Parses the [`to_json`](Self::to_json) format.
    pub fn from_json(v: &Value) -> Result<Self> {
        let var_count = v["var_count"]
            .as_u64()
            .ok_or_else(|| Error::Parse("missing integer field \"var_count\"".into()))?
            as usize;
        let rows_json = v["entries"]
            .as_array()
            .ok_or_else(|| Error::Parse("missing array field \"entries\"".into()))?;
        let mut entries = Vec::with_capacity(rows_json.len());
        for row in rows_json {
            let cells_json = row
                .as_array()
                .ok_or_else(|| Error::Parse("expected each row to be an array".into()))?;
            let mut cells = Vec::with_capacity(cells_json.len());
            for cell in cells_json {
                if cell.as_i64() == Some(0) {
                    cells.push(None);
                    continue;
                }
                let pair = cell
                    .as_array()
                    .filter(|a| a.len() == 2)
                    .ok_or_else(|| Error::Parse("expected 0 or a [k, sign] entry".into()))?;
                let k = pair[0]
                    .as_u64()
                    .ok_or_else(|| Error::Parse("bad variable index".into()))?;
                let sign = pair[1]
                    .as_i64()
                    .ok_or_else(|| Error::Parse("bad entry sign".into()))?;
                cells.push(Some((k as usize, sign as i8)));
            }
            entries.push(cells);
        }
        DesignMatrix::new(entries, var_count).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl fmt::Display for DesignMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render('x'))
    }
}

/// A quadratic form in the design variables with integer matrix
/// coefficients: the map sends each unordered variable pair (a, b) with
/// a <= b to the matrix multiplying x_a x_b. Zero coefficients are not
/// stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicQuadratic {
    n: usize,
    coefficients: BTreeMap<(usize, usize), IntMatrix>,
}

impl SymbolicQuadratic {
    fn add_term(&mut self, a: usize, b: usize, m: IntMatrix) {
        if !m.is_zero() {
            self.coefficients.insert((a.min(b), a.max(b)), m);
        }
    }

    /// Order of the coefficient matrices.
    pub fn order(&self) -> usize {
        self.n
    }

    /// Coefficient matrix of x_a x_b, in either argument order; `None`
    /// when the pair does not occur.
    pub fn coefficient(&self, a: usize, b: usize) -> Option<&IntMatrix> {
        self.coefficients.get(&(a.min(b), a.max(b)))
    }

    /// Variable pairs with a nonzero coefficient, each with a <= b.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.coefficients.keys().copied().collect()
    }

    /// Whether the whole form vanishes.
    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }
}

/// Expands D D^T symbolically: the coefficient of x_a^2 is X_a X_a^T and
/// the coefficient of x_a x_b for a < b is X_a X_b^T + X_b X_a^T.
pub fn symbolic_gram(d: &DesignMatrix) -> SymbolicQuadratic {
    let coeffs: Vec<IntMatrix> = (1..=d.var_count()).map(|k| d.coefficient(k)).collect();
    let mut q = SymbolicQuadratic {
        n: d.order(),
        coefficients: BTreeMap::new(),
    };
    for a in 0..coeffs.len() {
        for b in a..coeffs.len() {
            let m = if a == b {
                coeffs[a].mul(&coeffs[a].transpose())
            } else {
                coeffs[a]
                    .mul(&coeffs[b].transpose())
                    .add(&coeffs[b].mul(&coeffs[a].transpose()))
            };
            q.add_term(a + 1, b + 1, m);
        }
    }
    q
}

/// Expands X Y^T - Y X^T symbolically over the joint variable list, with
/// the variables of `y` renumbered to follow those of `x`. The pair is
/// amicable exactly when the result is zero.
pub fn symbolic_commutator(x: &DesignMatrix, y: &DesignMatrix) -> Result<SymbolicQuadratic> {
    if x.order() != y.order() {
        return Err(Error::Domain(format!(
            "orders differ: {} vs {}",
            x.order(),
            y.order()
        )));
    }
    let mut q = SymbolicQuadratic {
        n: x.order(),
        coefficients: BTreeMap::new(),
    };
    for a in 1..=x.var_count() {
        let xa = x.coefficient(a);
        for b in 1..=y.var_count() {
            let yb = y.coefficient(b);
            let m = xa.mul(&yb.transpose()).sub(&yb.mul(&xa.transpose()));
            q.add_term(a, x.var_count() + b, m);
        }
    }
    Ok(q)
}

fn design_from_members(
    n: usize,
    members: &[SignedMatrix],
    include_identity: bool,
) -> Result<DesignMatrix> {
    let mut entries = vec![vec![None; n]; n];
    let offset = usize::from(include_identity);
    if include_identity {
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = Some((1, 1));
        }
    }
    for (idx, m) in members.iter().enumerate() {
        if m.order() != n {
            return Err(Error::Domain(format!(
                "member {} has order {}, expected {}",
                idx + 1,
                m.order(),
                n
            )));
        }
        for (row, col, sign) in m.support() {
            if entries[row][col].is_some() {
                return Err(Error::Domain(format!(
                    "support collision at ({}, {}) while placing member {}",
                    row,
                    col,
                    idx + 1
                )));
            }
            entries[row][col] = Some((idx + 1 + offset, sign as i8));
        }
    }
    DesignMatrix::new(entries, members.len() + offset)
}

/// Builds the design whose k-th variable occupies the support of the k-th
/// family member; with `include_identity` the diagonal carries variable 1
/// and the members shift up by one.
///
/// # Examples
///
/// ```
/// use hradon::{design_core, hr_family};
///
/// let fam = hr_family::build_positive(1, 1).unwrap();
/// let d = design_core::from_family(&fam, true).unwrap();
/// assert_eq!(d.to_string(), "[  x1 -x2 ]\n[  x2  x1 ]");
/// ```
pub fn from_family(fam: &HRFamily, include_identity: bool) -> Result<DesignMatrix> {
    if fam.members.len() != fam.s + fam.t {
        return Err(Error::Domain(format!(
            "family declares s + t = {} but has {} members",
            fam.s + fam.t,
            fam.members.len()
        )));
    }
    design_from_members(fam.n, &fam.members, include_identity)
}

/// Whether D D^T = (sum_k u_k x_k^2) I symbolically for the given
/// positive weights, one per variable. Any other weight shape fails.
///
/// # Examples
///
/// ```
/// use hradon::{design_core, hr_family};
///
/// let fam = hr_family::build_positive(3, 7).unwrap();
/// let d = design_core::from_family(&fam, true).unwrap();
/// assert!(design_core::verify_od(&d, &[1; 8]));
/// assert!(!design_core::verify_od(&d, &[1; 7]));
/// ```
pub fn verify_od(d: &DesignMatrix, type_weights: &[i64]) -> bool {
    if type_weights.len() != d.var_count() || type_weights.iter().any(|&w| w <= 0) {
        return false;
    }
    let q = symbolic_gram(d);
    if q.pairs().iter().any(|&(a, b)| a != b) {
        return false;
    }
    (1..=d.var_count()).all(|k| match q.coefficient(k, k) {
        Some(m) => m.is_scaled_identity(type_weights[k - 1]),
        None => false,
    })
}

/// Whether X Y^T = Y X^T symbolically; the two designs keep separate
/// variable namespaces.
///
/// # Examples
///
/// ```
/// use hradon::design_core::{verify_amicable, DesignMatrix};
///
/// let x = DesignMatrix::new(
///     vec![
///         vec![Some((1, 1)), Some((2, 1))],
///         vec![Some((2, 1)), Some((1, -1))],
///     ],
///     2,
/// )
/// .unwrap();
/// let y = DesignMatrix::new(
///     vec![
///         vec![Some((1, 1)), Some((2, 1))],
///         vec![Some((2, -1)), Some((1, 1))],
///     ],
///     2,
/// )
/// .unwrap();
/// assert!(verify_amicable(&x, &y));
/// ```
pub fn verify_amicable(x: &DesignMatrix, y: &DesignMatrix) -> bool {
    match symbolic_commutator(x, y) {
        Ok(q) => q.is_zero(),
        Err(_) => false,
    }
}

/// The amicable pair generated by a family with at least one symmetric
/// member: X carries the identity and the skew members on variables
/// x_1, ..., x_{s+1}, and Y carries the symmetric members on y_1, ..., y_t.
pub fn amicable_pair(fam: &HRFamily) -> Result<(DesignMatrix, DesignMatrix)> {
    if fam.members.len() != fam.s + fam.t {
        return Err(Error::Domain(format!(
            "family declares s + t = {} but has {} members",
            fam.s + fam.t,
            fam.members.len()
        )));
    }
    if fam.t == 0 {
        return Err(Error::Domain(
            "an amicable pair needs at least one symmetric member".into(),
        ));
    }
    let x = design_from_members(fam.n, &fam.members[..fam.s], true)?;
    let y = design_from_members(fam.n, &fam.members[fam.s..], false)?;
    Ok((x, y))
}

/// Recovers a family from an amicable pair with signed-permutation
/// coefficients: with E_k = X_1^T X_k and F_j = X_1^T Y_j, the matrices
/// E_2, ..., E_s, F_2, ..., F_t form the returned family. Feed the result
/// to [`verify_family`](crate::hr_family::verify_family); pairs produced
/// by [`amicable_pair`] pass, while general pairs may fail the
/// support-disjointness checks.
pub fn derived_family(x: &DesignMatrix, y: &DesignMatrix) -> Result<HRFamily> {
    if x.order() != y.order() {
        return Err(Error::Domain(format!(
            "orders differ: {} vs {}",
            x.order(),
            y.order()
        )));
    }
    if x.var_count() == 0 || y.var_count() == 0 {
        return Err(Error::Domain(
            "both designs need at least one variable".into(),
        ));
    }
    let base = SignedMatrix::from_int(x.coefficient(1))
        .ok()
        .filter(|m| m.is_signed_permutation())
        .ok_or_else(|| {
            Error::Domain("the first coefficient of x is not a signed permutation".into())
        })?;
    let mut members = Vec::with_capacity(x.var_count() + y.var_count() - 2);
    let mut derive = |coeff: IntMatrix, label: &str, k: usize| -> Result<()> {
        let product = base.as_int().transpose().mul(&coeff);
        let member = SignedMatrix::from_int(product)
            .ok()
            .filter(|m| m.is_signed_permutation())
            .ok_or_else(|| {
                Error::Domain(format!(
                    "coefficient {} of {} does not derive a signed permutation",
                    k, label
                ))
            })?;
        members.push(member);
        Ok(())
    };
    for k in 2..=x.var_count() {
        derive(x.coefficient(k), "x", k)?;
    }
    for j in 2..=y.var_count() {
        derive(y.coefficient(j), "y", j)?;
    }
    Ok(HRFamily {
        n: x.order(),
        s: x.var_count() - 1,
        t: y.var_count() - 1,
        members,
    })
}

/// Outcome of the metric check for one family member.
#[derive(Clone, Debug)]
pub struct EtaCheck {
    /// 1-based member index.
    pub index: usize,
    /// Position says the member should be skew (isometry) rather than
    /// symmetric (anti-isometry).
    pub skew: bool,
    /// eta E^T eta equals E^{-1} for skew positions and -E^{-1} for
    /// symmetric ones.
    pub pass: bool,
}

/// Results of [`verify_eta`] for a whole family.
#[derive(Clone, Debug)]
pub struct EtaReport {
    /// Order of the metric and the members.
    pub n: usize,
    /// One entry per member, in family order.
    pub checks: Vec<EtaCheck>,
    /// Conjunction of all checks.
    pub pass: bool,
}

impl EtaReport {
    /// Serializes as `{"n", "checks", "pass"}`.
    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                json!({
                    "index": c.index,
                    "kind": if c.skew { "skew" } else { "symmetric" },
                    "pass": c.pass,
                })
            })
            .collect();
        json!({ "n": self.n, "checks": checks, "pass": self.pass })
    }
}

impl fmt::Display for EtaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let (kind, law) = if c.skew {
                ("skew", "isometry")
            } else {
                ("symmetric", "anti-isometry")
            };
            writeln!(
                f,
                "member {} ({}): {} {}",
                c.index,
                kind,
                law,
                if c.pass { "ok" } else { "FAIL" }
            )?;
        }
        write!(f, "eta: {}", if self.pass { "pass" } else { "FAIL" })
    }
}

/// Checks each member against a diagonal +-1 metric: the first `s`
/// members must satisfy eta E^T eta = E^{-1} and the remaining `t` must
/// satisfy eta E^T eta = -E^{-1}. Verdicts are report content; only a
/// malformed metric or family is an error.
///
/// # Examples
///
/// ```
/// use hradon::{design_core, hr_family};
///
/// let fam = hr_family::build_mixed(2, 1, 2).unwrap();
/// let eta = hr_family::block_eta(4).unwrap();
/// assert!(design_core::verify_eta(&fam, &eta).unwrap().pass);
/// ```
pub fn verify_eta(fam: &HRFamily, eta: &SignedMatrix) -> Result<EtaReport> {
    if eta.order() != fam.n {
        return Err(Error::Domain(format!(
            "metric order {} does not match family order {}",
            eta.order(),
            fam.n
        )));
    }
    let diagonal = eta.support().len() == fam.n && eta.support().iter().all(|&(i, j, _)| i == j);
    if !diagonal {
        return Err(Error::Domain(
            "metric must be diagonal with entries +-1".into(),
        ));
    }
    if fam.members.len() != fam.s + fam.t {
        return Err(Error::Domain(format!(
            "family declares s + t = {} but has {} members",
            fam.s + fam.t,
            fam.members.len()
        )));
    }
    let eta_int = eta.as_int();
    let mut checks = Vec::with_capacity(fam.members.len());
    for (idx, e) in fam.members.iter().enumerate() {
        let skew = idx < fam.s;
        let pass = e.order() == fam.n && e.is_signed_permutation() && {
            let conjugated = eta_int.mul(&e.as_int().transpose()).mul(eta_int);
            let inverse = e.as_int().transpose();
            conjugated == if skew { inverse } else { inverse.neg() }
        };
        checks.push(EtaCheck {
            index: idx + 1,
            skew,
            pass,
        });
    }
    let pass = checks.iter().all(|c| c.pass);
    Ok(EtaReport {
        n: fam.n,
        checks,
        pass,
    })
}

/// Largest number of variables of an orthogonal design of order n, which
/// is rho(n).
///
/// # Examples
///
/// ```
/// assert_eq!(hradon::design_core::max_variables(8).unwrap(), 8);
/// assert_eq!(hradon::design_core::max_variables(12).unwrap(), 4);
/// assert_eq!(hradon::design_core::max_variables(7).unwrap(), 1);
/// ```
pub fn max_variables(n: u64) -> Result<u64> {
    hr_arith::rho(n)
}

/// Largest number of variables of a design amicable to one with `t`
/// variables at even order n: one more than the maximal skew signature at
/// the power-of-two part of n, or `None` when no signature admits `t`.
///
/// # Examples
///
/// ```
/// use hradon::design_core::max_amicable_s;
///
/// assert_eq!(max_amicable_s(16, 2).unwrap(), Some(6));
/// assert_eq!(max_amicable_s(4, 3).unwrap(), None);
/// assert_eq!(max_amicable_s(2, 1).unwrap(), Some(1));
/// ```
pub fn max_amicable_s(n: u64, t: u32) -> Result<Option<u64>> {
    if t == 0 {
        return Err(Error::Domain("max_amicable_s requires t >= 1".into()));
    }
    let d = hr_arith::decompose(n)?;
    let r = 4 * d.alpha + d.beta;
    if r == 0 {
        return Err(Error::Domain(format!(
            "max_amicable_s requires an even order, got {}",
            n
        )));
    }
    Ok(hr_arith::max_signature_s(r, t)?.map(|s| s + 1))
}

/// Numeric cross-check of [`verify_od`]: evaluates the design at `trials`
/// seeded random small-integer assignments and tests D D^T against the
/// weighted sum of squares each time.
pub fn random_check_od(d: &DesignMatrix, type_weights: &[i64], seed: u64, trials: usize) -> bool {
    if type_weights.len() != d.var_count() {
        return false;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let values: Vec<i64> = (0..d.var_count()).map(|_| rng.gen_range(-9..=9)).collect();
        let e = d.evaluate(&values).expect("value count matches");
        let scale: i64 = type_weights
            .iter()
            .zip(&values)
            .map(|(w, v)| w * v * v)
            .sum();
        if !e.mul(&e.transpose()).is_scaled_identity(scale) {
            return false;
        }
    }
    true
}

/// Numeric cross-check of [`verify_amicable`] at `trials` seeded random
/// assignments of both variable lists.
pub fn random_check_amicable(x: &DesignMatrix, y: &DesignMatrix, seed: u64, trials: usize) -> bool {
    if x.order() != y.order() {
        return false;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let vx: Vec<i64> = (0..x.var_count()).map(|_| rng.gen_range(-9..=9)).collect();
        let vy: Vec<i64> = (0..y.var_count()).map(|_| rng.gen_range(-9..=9)).collect();
        let ex = x.evaluate(&vx).expect("value count matches");
        let ey = y.evaluate(&vy).expect("value count matches");
        if ex.mul(&ey.transpose()) != ey.mul(&ex.transpose()) {
            return false;
        }
    }
    true
}
