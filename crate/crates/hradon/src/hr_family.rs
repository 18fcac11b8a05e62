//! Construction and verification of Hurwitz-Radon families.
//!
//! An HR(s, t) family of order n consists of s skew members with square -I
//! followed by t symmetric members with square +I, all signed permutations,
//! pairwise anticommuting, with pairwise disjoint supports. The classical
//! case t = 0 is built from hardcoded maximal base families at orders 2, 4,
//! and 8 (the octonion left-multiplication table) extended by the doubling
//! rule {P tensor I} + {Q tensor E_i}. Mixed signatures are built by
//! solving a GF(2) sign system for an all-skew family on chosen supports
//! and right-multiplying the designated members by a diagonal involution,
//! which turns them symmetric while preserving every anticommutation.
//!
//! Every member of a constructed family permutes the basis by XOR with a
//! mask: member with mask a sends basis vector x to sign * (x XOR a).
//! Masks below n/2 preserve the two half-blocks; masks from n/2 up swap
//! them, which is what makes the diagonal symmetrization work.

use crate::algebra_core::OmegaVector;
use crate::error::{Error, Result};
use crate::graph_factor::OneFactor;
use crate::hr_arith;
use crate::matrix::SignedMatrix;
use serde_json::{json, Value};
use std::collections::BTreeMap;

/// Largest order accepted by the block-diagonal builder.
pub const MAX_REPEATED_ORDER: u64 = 128;

/// Cap on mask subsets tried by the mixed-signature fallback search.
const MIXED_SEARCH_CAP: usize = 512;

/// A family of signed-permutation matrices: `s` skew members with square
/// -I first, then `t` symmetric members with square +I, all pairwise
/// anticommuting with pairwise disjoint supports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRFamily {
    /// Matrix order.
    pub n: usize,
    /// Number of skew members.
    pub s: usize,
    /// Number of symmetric members.
    pub t: usize,
    /// The members, skew first.
    pub members: Vec<SignedMatrix>,
}

impl HRFamily {
    /// JSON form: `{ "n", "s", "t", "members" }` with members as
    /// array-of-arrays matrices.
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "s": self.s,
            "t": self.t,
            "members": Value::Array(self.members.iter().map(SignedMatrix::to_json).collect()),
        })
    }

    /// Parses the JSON form, checking counts and orders.
    pub fn from_json(v: &Value) -> Result<Self> {
        let n = v["n"]
            .as_u64()
            .ok_or_else(|| Error::Parse("missing integer field \"n\"".into()))?
            as usize;
        let s = v["s"]
            .as_u64()
            .ok_or_else(|| Error::Parse("missing integer field \"s\"".into()))?
            as usize;
        let t = v["t"]
            .as_u64()
            .ok_or_else(|| Error::Parse("missing integer field \"t\"".into()))?
            as usize;
        let members_json = v["members"]
            .as_array()
            .ok_or_else(|| Error::Parse("missing array field \"members\"".into()))?;
        let members: Vec<SignedMatrix> = members_json
            .iter()
            .map(SignedMatrix::from_json)
            .collect::<Result<_>>()?;
        if members.len() != s + t {
            return Err(Error::Parse(format!(
                "family declares s + t = {} but has {} members",
                s + t,
                members.len()
            )));
        }
        if members.iter().any(|m| m.order() != n) {
            return Err(Error::Parse("member order differs from n".into()));
        }
        Ok(HRFamily { n, s, t, members })
    }
}

/// Verification result for one member.
#[derive(Clone, Debug)]
pub struct MemberCheck {
    /// 1-based member index.
    pub index: usize,
    /// True when the member position expects a skew matrix.
    pub expected_skew: bool,
    /// Exactly one nonzero per row and column.
    pub signed_permutation: bool,
    /// Skew for skew positions, symmetric for symmetric positions.
    pub symmetry_ok: bool,
    /// Square is -I for skew positions and +I for symmetric positions.
    pub square_ok: bool,
}

/// Verification result for one member pair.
#[derive(Clone, Debug)]
pub struct PairCheck {
    /// 1-based index of the first member.
    pub i: usize,
    /// 1-based index of the second member.
    pub j: usize,
    /// E_i E_j + E_j E_i = 0.
    pub anticommute: bool,
    /// Supports are entrywise disjoint.
    pub disjoint_support: bool,
}

/// Full verification report for a family.
#[derive(Clone, Debug)]
pub struct FamilyReport {
    /// Declared counts match the member list and orders match n.
    pub counts_consistent: bool,
    /// Per-member checks.
    pub members: Vec<MemberCheck>,
    /// Per-pair checks.
    pub pairs: Vec<PairCheck>,
    /// Conjunction of every check.
    pub pass: bool,
}

impl FamilyReport {
    /// JSON form mirroring the report fields.
    pub fn to_json(&self) -> Value {
        json!({
            "counts_consistent": self.counts_consistent,
            "members": self.members.iter().map(|m| json!({
                "index": m.index,
                "class": if m.expected_skew { "skew" } else { "symmetric" },
                "signed_permutation": m.signed_permutation,
                "symmetry_ok": m.symmetry_ok,
                "square_ok": m.square_ok,
            })).collect::<Vec<_>>(),
            "pairs": self.pairs.iter().map(|p| json!({
                "i": p.i,
                "j": p.j,
                "anticommute": p.anticommute,
                "disjoint_support": p.disjoint_support,
            })).collect::<Vec<_>>(),
            "pass": self.pass,
        })
    }
}

impl std::fmt::Display for FamilyReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "counts: {}",
            if self.counts_consistent { "ok" } else { "FAIL" }
        )?;
        for m in &self.members {
            writeln!(
                f,
                "member {} ({}): signed-permutation {} symmetry {} square {}",
                m.index,
                if m.expected_skew { "skew" } else { "symmetric" },
                ok(m.signed_permutation),
                ok(m.symmetry_ok),
                ok(m.square_ok),
            )?;
        }
        for p in &self.pairs {
            writeln!(
                f,
                "pair ({}, {}): anticommute {} disjoint {}",
                p.i,
                p.j,
                ok(p.anticommute),
                ok(p.disjoint_support),
            )?;
        }
        write!(f, "family: {}", if self.pass { "pass" } else { "FAIL" })
    }
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAIL"
    }
}

/// Checks every family invariant and reports each result; failures are
/// report content, not errors.
pub fn verify_family(fam: &HRFamily) -> FamilyReport {
    let counts_consistent =
        fam.s + fam.t == fam.members.len() && fam.members.iter().all(|m| m.order() == fam.n);
    let mut members = Vec::new();
    for (idx0, e) in fam.members.iter().enumerate() {
        let expected_skew = idx0 < fam.s;
        let symmetry_ok = if expected_skew {
            e.is_skew()
        } else {
            e.is_symmetric()
        };
        let square_ok = e
            .square()
            .is_scaled_identity(if expected_skew { -1 } else { 1 });
        members.push(MemberCheck {
            index: idx0 + 1,
            expected_skew,
            signed_permutation: e.is_signed_permutation(),
            symmetry_ok,
            square_ok,
        });
    }
    let mut pairs = Vec::new();
    for i in 0..fam.members.len() {
        for j in i + 1..fam.members.len() {
            let a = fam.members[i].as_int();
            let b = fam.members[j].as_int();
            pairs.push(PairCheck {
                i: i + 1,
                j: j + 1,
                anticommute: a.mul(b).add(&b.mul(a)).is_zero(),
                disjoint_support: fam.members[i].hadamard_disjoint(&fam.members[j]),
            });
        }
    }
    let pass = counts_consistent
        && members
            .iter()
            .all(|m| m.signed_permutation && m.symmetry_ok && m.square_ok)
        && pairs.iter().all(|p| p.anticommute && p.disjoint_support);
    FamilyReport {
        counts_consistent,
        members,
        pairs,
        pass,
    }
}

/// Per-column signs of the hardcoded base members: entry x of the inner
/// array is the sign with which the member of mask m sends basis vector x
/// to x XOR m. Masks run 1, 2, ... in order.
const BASE_ORDER_2: [[i64; 2]; 1] = [[1, -1]];

const BASE_ORDER_4: [[i64; 4]; 3] = [
    [1, -1, -1, 1],
    [1, 1, -1, -1],
    [-1, 1, -1, 1],
];

/// Octonion left multiplication by the seven imaginary units, in the
/// Cayley-Dickson basis.
const BASE_ORDER_8: [[i64; 8]; 7] = [
    [1, -1, 1, -1, 1, -1, -1, 1],
    [1, -1, -1, 1, 1, 1, -1, -1],
    [1, 1, -1, -1, 1, -1, 1, -1],
    [1, -1, -1, -1, -1, 1, 1, 1],
    [1, 1, -1, 1, -1, -1, -1, 1],
    [1, 1, 1, -1, -1, 1, -1, -1],
    [1, -1, 1, 1, -1, -1, 1, -1],
];

fn member_from_signs(n: usize, mask: usize, signs: &[i64]) -> SignedMatrix {
    SignedMatrix::from_column_action(n, |x| (x ^ mask, signs[x]))
        .expect("base table signs are unit")
}

fn base_family(r: u32) -> Vec<SignedMatrix> {
    match r {
        1 => BASE_ORDER_2
            .iter()
            .enumerate()
            .map(|(i, row)| member_from_signs(2, i + 1, row))
            .collect(),
        2 => BASE_ORDER_4
            .iter()
            .enumerate()
            .map(|(i, row)| member_from_signs(4, i + 1, row))
            .collect(),
        3 => BASE_ORDER_8
            .iter()
            .enumerate()
            .map(|(i, row)| member_from_signs(8, i + 1, row))
            .collect(),
        _ => unreachable!("base families exist for r = 1, 2, 3"),
    }
}

/// Doubles an all-skew family from order n to order 2n: members E become
/// Q tensor E (Q = diag(1, -1)) and one new member P tensor I is appended
/// (P the order-2 complex structure). The result has one more member and
/// satisfies every family invariant whenever the input does.
pub fn double_positive(members: &[SignedMatrix], n: usize) -> Vec<SignedMatrix> {
    let p = SignedMatrix::from_rows(vec![vec![0, -1], vec![1, 0]]).unwrap();
    let q = SignedMatrix::from_rows(vec![vec![1, 0], vec![0, -1]]).unwrap();
    let identity = SignedMatrix::from_column_action(n, |x| (x, 1)).unwrap();
    let mut out: Vec<SignedMatrix> = members
        .iter()
        .map(|e| SignedMatrix::from_int(q.as_int().kronecker(e.as_int())).unwrap())
        .collect();
    out.push(SignedMatrix::from_int(p.as_int().kronecker(identity.as_int())).unwrap());
    out
}

/// Builds the first `count` members of the maximal all-skew family of
/// order 2^r.
///
/// Orders 2, 4, and 8 come from hardcoded base tables; orders 16 and 32
/// are doubled from order 8. Members are ordered by XOR mask, which is
/// also lexicographic order of their support matchings.
///
/// # Examples
///
/// ```
/// let fam = hradon::hr_family::build_positive(1, 1).unwrap();
/// assert_eq!(fam.members[0].entry(1, 0), 1);
/// assert_eq!(fam.members[0].entry(0, 1), -1);
/// ```
pub fn build_positive(r: u32, count: usize) -> Result<HRFamily> {
    if !(1..=5).contains(&r) {
        return Err(Error::Domain(format!(
            "build_positive supports exponents 1..=5, got r={}",
            r
        )));
    }
    let n = 1usize << r;
    let max = hr_arith::rho(n as u64)? as usize - 1;
    if count == 0 || count > max {
        return Err(Error::Domain(format!(
            "order {} admits between 1 and {} skew members, got count={}",
            n, max, count
        )));
    }
    let mut members = base_family(r.min(3));
    let mut built = 1usize << r.min(3);
    while built < n {
        members = double_positive(&members, built);
        built *= 2;
    }
    members.truncate(count);
    Ok(HRFamily {
        n,
        s: count,
        t: 0,
        members,
    })
}

fn block_diagonal(blocks: usize, m: &SignedMatrix) -> SignedMatrix {
    let b = m.order();
    let mut col_to = vec![(0usize, 0i64); b];
    for (row, col, sign) in m.support() {
        col_to[col] = (row, sign);
    }
    SignedMatrix::from_column_action(blocks * b, |x| {
        let (row, sign) = col_to[x % b];
        (x / b * b + row, sign)
    })
    .expect("block diagonal of a signed permutation")
}

/// Builds the maximal-count skew family at a general order n = u * 2^r
/// (u odd) by block-diagonal repetition of the order-2^r family; the bound
/// rho(n) - 1 depends only on the power-of-two part.
pub fn build_positive_n(n: u64, count: usize) -> Result<HRFamily> {
    if n == 0 || n > MAX_REPEATED_ORDER {
        return Err(Error::Domain(format!(
            "build_positive_n supports 1 <= n <= {}, got {}",
            MAX_REPEATED_ORDER, n
        )));
    }
    let d = hr_arith::decompose(n)?;
    let r = 4 * d.alpha + d.beta;
    if r == 0 {
        return Err(Error::Domain(format!(
            "odd order {} admits no skew member (rho = 1)",
            n
        )));
    }
    let base = build_positive(r, count)?;
    if d.u == 1 {
        return Ok(base);
    }
    let members = base
        .members
        .iter()
        .map(|m| block_diagonal(d.u as usize, m))
        .collect();
    Ok(HRFamily {
        n: n as usize,
        s: count,
        t: 0,
        members,
    })
}

/// Solves for per-member sign vectors making every mask-member skew with
/// square -I and all pairs anticommuting. Member i sends x to
/// (-1)^{y_i(x)} (x XOR masks[i]); the constraints are linear over GF(2):
///
/// - skewness and square -I: y_i(x) + y_i(x XOR a_i) = 1,
/// - anticommutation: y_j(x) + y_i(x XOR a_j) + y_i(x) + y_j(x XOR a_i) = 1.
///
/// Returns one solution (free variables zero) or None when inconsistent.
fn solve_skew_signs(n: usize, masks: &[usize]) -> Option<Vec<Vec<bool>>> {
    let m = masks.len();
    let nvars = m * n;
    let words = nvars.div_ceil(64);
    let var = |i: usize, x: usize| i * n + x;
    let mut rows: Vec<(Vec<u64>, bool)> = Vec::new();
    let push = |vars: &[usize], rows: &mut Vec<(Vec<u64>, bool)>| {
        let mut w = vec![0u64; words];
        for &v in vars {
            w[v / 64] ^= 1 << (v % 64);
        }
        rows.push((w, true));
    };
    for (i, &a) in masks.iter().enumerate() {
        for x in 0..n {
            if x < x ^ a {
                push(&[var(i, x), var(i, x ^ a)], &mut rows);
            }
        }
    }
    for i in 0..m {
        for j in i + 1..m {
            let (a, b) = (masks[i], masks[j]);
            for x in 0..n {
                push(
                    &[var(j, x), var(i, x ^ b), var(i, x), var(j, x ^ a)],
                    &mut rows,
                );
            }
        }
    }
    // Gauss-Jordan elimination over GF(2).
    let mut pivot_of_col = vec![usize::MAX; nvars];
    let mut rank = 0;
    for (c, pivot_slot) in pivot_of_col.iter_mut().enumerate() {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i].0[c / 64] >> (c % 64) & 1 == 1) else {
            continue;
        };
        rows.swap(rank, p);
        let (pivot_row, pivot_rhs) = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row.0[c / 64] >> (c % 64) & 1 == 1 {
                for (w, pw) in row.0.iter_mut().zip(&pivot_row) {
                    *w ^= pw;
                }
                row.1 ^= pivot_rhs;
            }
        }
        *pivot_slot = rank;
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    if rows[rank..]
        .iter()
        .any(|(w, rhs)| *rhs && w.iter().all(|&x| x == 0))
    {
        return None;
    }
    // Free variables take value 0, so each pivot variable equals its rhs.
    let mut y = vec![vec![false; n]; m];
    for c in 0..nvars {
        if pivot_of_col[c] != usize::MAX {
            y[c / n][c % n] = rows[pivot_of_col[c]].1;
        }
    }
    Some(y)
}

/// Diagonal involution with +1 on the first half-block and -1 on the
/// second; right-multiplying a cross-block skew member by it yields a
/// symmetric member with square +I.
pub fn block_eta(n: usize) -> Result<SignedMatrix> {
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::Domain(format!("block_eta needs even order, got {}", n)));
    }
    SignedMatrix::from_column_action(n, |x| (x, if x < n / 2 { 1 } else { -1 }))
}

/// Lexicographic k-subsets of `pool`, in order.
fn k_subsets(pool: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > pool.len() {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| pool[i]).collect());
        // Advance to the next combination.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + pool.len() - k {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Builds an HR(s, t) family of order 2^r, skew members first.
///
/// Realizability is decided by [`hr_arith::max_signature_s`]; signatures
/// beyond the admissible maximum are a [`Error::NonExistence`]. The
/// construction solves the all-skew sign system on s low masks and t high
/// masks and symmetrizes the high-mask members with [`block_eta`]; if the
/// canonical masks are infeasible a bounded lexicographic search over
/// other mask subsets runs, and its exhaustion is reported as
/// [`Error::NotFound`], distinct from non-existence.
///
/// # Examples
///
/// ```
/// let fam = hradon::hr_family::build_mixed(2, 1, 2).unwrap();
/// assert_eq!((fam.s, fam.t), (1, 2));
/// assert!(hradon::hr_family::verify_family(&fam).pass);
/// assert!(hradon::hr_family::build_mixed(2, 2, 1).is_err());
/// ```
pub fn build_mixed(r: u32, s: usize, t: usize) -> Result<HRFamily> {
    if !(1..=5).contains(&r) {
        return Err(Error::Domain(format!(
            "build_mixed supports exponents 1..=5, got r={}",
            r
        )));
    }
    let n = 1usize << r;
    if s + t == 0 {
        return Ok(HRFamily {
            n,
            s: 0,
            t: 0,
            members: vec![],
        });
    }
    if t == 0 {
        return build_positive(r, s);
    }
    let max_s = hr_arith::max_signature_s(r, t as u32)?;
    match max_s {
        None => {
            return Err(Error::NonExistence(format!(
                "no family with t = {} symmetric members exists at order {}",
                t, n
            )))
        }
        Some(m) if (s as u64) > m => {
            return Err(Error::NonExistence(format!(
                "signature ({}, {}) at order {} exceeds the maximal s = {}",
                s, t, n, m
            )))
        }
        Some(_) => {}
    }
    let low: Vec<usize> = (1..n / 2).collect();
    let high: Vec<usize> = (n / 2..n).collect();
    if s > low.len() || t > high.len() {
        return Err(Error::NotFound(format!(
            "order {} offers {} block-preserving and {} block-swapping masks, \
             not enough for signature ({}, {})",
            n,
            low.len(),
            high.len(),
            s,
            t
        )));
    }
    let eta = block_eta(n)?;
    let mut attempts = 0usize;
    for skew_masks in k_subsets(&low, s) {
        for sym_masks in k_subsets(&high, t) {
            attempts += 1;
            if attempts > MIXED_SEARCH_CAP {
                return Err(Error::NotFound(format!(
                    "no sign assignment found within {} mask subsets for \
                     signature ({}, {}) at order {}",
                    MIXED_SEARCH_CAP, s, t, n
                )));
            }
            let masks: Vec<usize> = skew_masks
                .iter()
                .chain(sym_masks.iter())
                .copied()
                .collect();
            let Some(y) = solve_skew_signs(n, &masks) else {
                continue;
            };
            let mut members = Vec::with_capacity(s + t);
            for (i, &a) in masks.iter().enumerate() {
                let signs: Vec<i64> = y[i].iter().map(|&b| if b { -1 } else { 1 }).collect();
                let e = member_from_signs(n, a, &signs);
                if i < s {
                    members.push(e);
                } else {
                    let symmetric = SignedMatrix::from_int(e.as_int().mul(eta.as_int()))
                        .expect("product of signed permutation and diagonal");
                    members.push(symmetric);
                }
            }
            return Ok(HRFamily { n, s, t, members });
        }
    }
    Err(Error::NotFound(format!(
        "no sign assignment found for signature ({}, {}) at order {}",
        s, t, n
    )))
}

/// The support matching of a signed permutation with zero diagonal and
/// symmetric support: pairs (i, j), 1-based, i < j, wherever the matrix
/// has a nonzero at (i, j).
pub fn support_factor(e: &SignedMatrix) -> Result<OneFactor> {
    if !e.is_signed_permutation() {
        return Err(Error::Domain("not a signed permutation".into()));
    }
    let n = e.order();
    for i in 0..n {
        if e.entry(i, i) != 0 {
            return Err(Error::Domain(format!(
                "diagonal entry at position {} has no support pair",
                i + 1
            )));
        }
        for j in 0..n {
            if (e.entry(i, j) != 0) != (e.entry(j, i) != 0) {
                return Err(Error::Domain(format!(
                    "support is not symmetric at ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let pairs: Vec<(usize, usize)> = e
        .support()
        .into_iter()
        .filter(|&(i, j, _)| i < j)
        .map(|(i, j, _)| (i + 1, j + 1))
        .collect();
    OneFactor::new(pairs)
}

/// Reads a skew or symmetric signed permutation into an omega vector: the
/// coefficient on the support pair (i, j), i < j, is the matrix entry at
/// row j, column i (1-based), which is the coefficient of e_j in the image
/// of e_i.
pub fn omega_from_matrix(e: &SignedMatrix) -> Result<OmegaVector> {
    let factor = support_factor(e)?;
    let mut coeffs = BTreeMap::new();
    for &(i, j) in factor.pairs() {
        coeffs.insert((i, j), e.entry(j - 1, i - 1) as i8);
    }
    OmegaVector::new(factor, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_factor;

    #[test]
    fn base_families_verify() {
        for (r, count) in [(1u32, 1usize), (2, 3), (3, 7), (4, 8), (5, 9)] {
            let fam = build_positive(r, count).unwrap();
            assert_eq!(fam.members.len(), count);
            assert_eq!(fam.n, 1 << r);
            let report = verify_family(&fam);
            assert!(report.pass, "order {} failed:\n{}", 1 << r, report);
        }
    }

    #[test]
    fn build_positive_rejections() {
        assert!(build_positive(0, 1).is_err());
        assert!(build_positive(6, 1).is_err());
        assert!(build_positive(2, 0).is_err());
        assert!(build_positive(2, 4).is_err());
        assert!(build_positive(4, 9).is_err());
    }

    #[test]
    fn order_2_member_is_the_complex_structure() {
        let fam = build_positive(1, 1).unwrap();
        assert_eq!(
            fam.members[0],
            SignedMatrix::from_rows(vec![vec![0, -1], vec![1, 0]]).unwrap()
        );
    }

    #[test]
    fn order_4_supports_match_the_k4_factors() {
        let fam = build_positive(2, 3).unwrap();
        let factors: Vec<OneFactor> = fam
            .members
            .iter()
            .map(|e| support_factor(e).unwrap())
            .collect();
        assert_eq!(factors[0].pairs(), &[(1, 2), (3, 4)]);
        assert_eq!(factors[1].pairs(), &[(1, 3), (2, 4)]);
        assert_eq!(factors[2].pairs(), &[(1, 4), (2, 3)]);
    }

    #[test]
    fn duplicated_member_fails_verification() {
        let mut fam = build_positive(2, 3).unwrap();
        fam.members[2] = fam.members[1].clone();
        let report = verify_family(&fam);
        assert!(!report.pass);
        let bad = report.pairs.iter().find(|p| (p.i, p.j) == (2, 3)).unwrap();
        assert!(!bad.anticommute);
        assert!(!bad.disjoint_support);
    }

    #[test]
    fn block_diagonal_repetition() {
        let fam = build_positive_n(12, 3).unwrap();
        assert_eq!(fam.n, 12);
        assert!(verify_family(&fam).pass);
        assert!(build_positive_n(12, 4).is_err());
        assert!(build_positive_n(3, 1).is_err());
        let pow2 = build_positive_n(8, 7).unwrap();
        assert_eq!(pow2, build_positive(3, 7).unwrap());
    }

    #[test]
    fn mixed_examples() {
        let fam = build_mixed(1, 0, 1).unwrap();
        assert_eq!((fam.s, fam.t), (0, 1));
        assert!(fam.members[0].is_symmetric());
        assert!(fam.members[0].square().is_scaled_identity(1));
        assert!(verify_family(&fam).pass);

        let fam = build_mixed(2, 1, 2).unwrap();
        assert!(verify_family(&fam).pass);

        match build_mixed(2, 2, 1) {
            Err(Error::NonExistence(_)) => {}
            other => panic!("expected non-existence, got {:?}", other),
        }
        match build_mixed(1, 0, 2) {
            Err(Error::NonExistence(_)) => {}
            other => panic!("expected non-existence, got {:?}", other),
        }
    }

    #[test]
    fn mixed_delegates_pure_cases() {
        assert_eq!(build_mixed(3, 7, 0).unwrap(), build_positive(3, 7).unwrap());
        let empty = build_mixed(2, 0, 0).unwrap();
        assert!(empty.members.is_empty());
    }

    #[test]
    fn mixed_realizable_cells_at_order_8() {
        for (s, t) in [(3usize, 4usize), (0, 4), (1, 4), (2, 4), (3, 1), (3, 2), (3, 3)] {
            let fam = build_mixed(3, s, t).unwrap();
            let report = verify_family(&fam);
            assert!(report.pass, "({}, {}) failed:\n{}", s, t, report);
        }
    }

    #[test]
    fn support_factor_rejections() {
        let q = SignedMatrix::from_rows(vec![vec![1, 0], vec![0, -1]]).unwrap();
        assert!(support_factor(&q).is_err());
        let cycle = SignedMatrix::from_rows(vec![
            vec![0, 0, 1, 0],
            vec![1, 0, 0, 0],
            vec![0, 0, 0, 1],
            vec![0, 1, 0, 0],
        ])
        .unwrap();
        assert!(support_factor(&cycle).is_err());
    }

    #[test]
    fn omega_from_matrix_examples() {
        let fam = build_positive(2, 3).unwrap();
        let omega = omega_from_matrix(&fam.members[0]).unwrap();
        assert_eq!(omega.coefficient(1, 2), Some(1));
        assert_eq!(omega.coefficient(3, 4), Some(-1));

        let p = SignedMatrix::from_rows(vec![vec![0, -1], vec![1, 0]]).unwrap();
        let omega = omega_from_matrix(&p).unwrap();
        assert_eq!(omega.coefficient(1, 2), Some(1));

        let e2_alt = SignedMatrix::from_rows(vec![
            vec![0, 0, 1, 0],
            vec![0, 0, 0, -1],
            vec![-1, 0, 0, 0],
            vec![0, 1, 0, 0],
        ])
        .unwrap();
        let omega = omega_from_matrix(&e2_alt).unwrap();
        assert_eq!(omega.coefficient(1, 3), Some(-1));
        assert_eq!(omega.coefficient(2, 4), Some(1));
    }

    #[test]
    fn square_subfamily_of_the_octonion_family() {
        let fam = build_positive(3, 7).unwrap();
        let factors = graph_factor::square_subfamily_from_hr(&fam).unwrap();
        assert_eq!(factors.len(), 7);
        for i in 0..7 {
            for j in i + 1..7 {
                assert!(graph_factor::is_square_pair(&factors[i], &factors[j]).unwrap());
            }
        }
    }

    #[test]
    fn square_subfamily_rejects_symmetric_members() {
        let fam = build_mixed(2, 1, 2).unwrap();
        assert!(graph_factor::square_subfamily_from_hr(&fam).is_err());
    }

    #[test]
    fn family_json_round_trip() {
        let fam = build_mixed(3, 2, 2).unwrap();
        let v = fam.to_json();
        assert_eq!(HRFamily::from_json(&v).unwrap(), fam);
    }

    #[test]
    fn doubling_preserves_invariants() {
        let mut members = base_family(1);
        let mut n = 2;
        while n < 32 {
            members = double_positive(&members, n);
            n *= 2;
            let fam = HRFamily {
                n,
                s: members.len(),
                t: 0,
                members: members.clone(),
            };
            assert!(verify_family(&fam).pass, "doubled to order {}", n);
        }
    }

    #[test]
    fn k_subset_order() {
        assert_eq!(
            k_subsets(&[1, 2, 3], 2),
            vec![vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(k_subsets(&[1, 2], 0), vec![Vec::<usize>::new()]);
        assert!(k_subsets(&[1], 2).is_empty());
    }
}
