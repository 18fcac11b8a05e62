//! Signed-permutation conjugacy between HR families and algebra lifts.
//!
//! A signed permutation B conjugates the family {E_l} to {F_l}, meaning
//! F_l = B E_l B^-1 for every l, exactly when the linear system
//! (E_l^T (x) I - I (x) F_l) vec(B) = 0 holds for every l, with (x) the
//! Kronecker product and vec the column-major vectorization. Each row of
//! the stacked system relates two entries of B with a sign, so the
//! solutions decompose into sign-linked orbits of entries; the solver
//! closes the orbits with a union-find carrying relative signs and then
//! backtracks over the matrix cells to select signed permutations from the
//! nullspace.

use crate::algebra_core::HTypeAlgebra;
use crate::error::{Error, Result};
use crate::hr_family::HRFamily;
use crate::matrix::{IntMatrix, SignedMatrix};
use serde_json::{json, Value};
use std::fmt;

/// Largest family order accepted by [`build_system`]; the dense Kronecker
/// blocks grow with the fourth power of the order.
pub const MAX_SYSTEM_ORDER: usize = 32;

/// Number of member orderings [`solve_with_matching`] tries before giving
/// up.
pub const MATCHING_PERMUTATION_CAP: usize = 5040;

/// Kronecker product of two signed matrices as an integer matrix.
///
/// Satisfies the transpose rule (A (x) B)^T = A^T (x) B^T and the
/// mixed-product identity (A (x) B)(C (x) D) = AC (x) BD.
pub fn kron(a: &SignedMatrix, b: &SignedMatrix) -> IntMatrix {
    a.as_int().kronecker(b.as_int())
}

/// Column-major vectorization: the columns of `m` stacked top to bottom.
///
/// For conformable triples, vec(A X B) = (B^T (x) A) vec(X).
pub fn vec(m: &IntMatrix) -> Vec<i64> {
    let mut out = Vec::with_capacity(m.rows() * m.cols());
    for col in 0..m.cols() {
        for row in 0..m.rows() {
            out.push(m.get(row, col));
        }
    }
    out
}

/// The stacked linear system cutting out the conjugators from one family
/// to another.
///
/// Block l is E_l^T (x) I - I (x) F_l, so a matrix B solves every block
/// equation on vec(B) exactly when F_l B = B E_l for all l. Systems built
/// by [`build_system`] have exactly two nonzero entries, both signs, in
/// every row.
#[derive(Clone, Debug)]
pub struct ConjugacySystem {
    /// One block per member pair, in member order.
    pub blocks: Vec<IntMatrix>,
    /// Order of the families.
    pub n: usize,
    /// Number of members.
    pub r: usize,
}

impl ConjugacySystem {
    /// All block rows stacked vertically, as plain vectors.
    pub fn stacked_rows(&self) -> Vec<Vec<i64>> {
        let mut rows = Vec::with_capacity(self.r * self.n * self.n);
        for block in &self.blocks {
            rows.extend(block.to_rows());
        }
        rows
    }

    /// The Gram matrix of the stacked system.
    pub fn gram(&self) -> IntMatrix {
        let nn = self.n * self.n;
        let mut g = IntMatrix::zero(nn, nn);
        for block in &self.blocks {
            g = g.add(&block.transpose().mul(block));
        }
        g
    }

    /// Serializes as `{"n", "r", "blocks"}` with each block an array of
    /// rows.
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "r": self.r,
            "blocks": self.blocks.iter().map(IntMatrix::to_rows).collect::<Vec<_>>(),
        })
    }
}

/// Builds the conjugacy system from `fam1` to `fam2`.
///
/// The families must have equal orders, equal declared signatures, and
/// equally many members; the order is capped by [`MAX_SYSTEM_ORDER`]. The
/// construction also checks the two-nonzeros-per-row shape, which holds
/// whenever the members have zero diagonal.
pub fn build_system(fam1: &HRFamily, fam2: &HRFamily) -> Result<ConjugacySystem> {
    if fam1.n != fam2.n {
        return Err(Error::Domain(format!(
            "family orders {} and {} differ",
            fam1.n, fam2.n
        )));
    }
    if (fam1.s, fam1.t) != (fam2.s, fam2.t) {
        return Err(Error::Domain(format!(
            "family signatures ({}, {}) and ({}, {}) differ",
            fam1.s, fam1.t, fam2.s, fam2.t
        )));
    }
    if fam1.members.len() != fam2.members.len() {
        return Err(Error::Domain(format!(
            "family sizes {} and {} differ",
            fam1.members.len(),
            fam2.members.len()
        )));
    }
    let n = fam1.n;
    if n > MAX_SYSTEM_ORDER {
        return Err(Error::Domain(format!(
            "conjugacy systems support order at most {}, got {}",
            MAX_SYSTEM_ORDER, n
        )));
    }
    let id = IntMatrix::identity(n);
    let mut blocks = Vec::with_capacity(fam1.members.len());
    for (l, (e, f)) in fam1.members.iter().zip(&fam2.members).enumerate() {
        let block = e
            .as_int()
            .transpose()
            .kronecker(&id)
            .sub(&id.kronecker(f.as_int()));
        for row in 0..n * n {
            let mut nonzeros = 0usize;
            let mut signs_only = true;
            for col in 0..n * n {
                let c = block.get(row, col);
                if c != 0 {
                    nonzeros += 1;
                    signs_only &= c == 1 || c == -1;
                }
            }
            if nonzeros != 2 || !signs_only {
                return Err(Error::Domain(format!(
                    "system block {} row {} does not have exactly two sign entries; \
                     members must have zero diagonal",
                    l + 1,
                    row
                )));
            }
        }
        blocks.push(block);
    }
    Ok(ConjugacySystem {
        blocks,
        n,
        r: fam1.members.len(),
    })
}

/// Union-find over the system variables carrying the sign of each variable
/// relative to its root. A contradictory sign relation forces the whole
/// orbit to zero.
struct SignedUnionFind {
    parent: Vec<usize>,
    rel: Vec<i64>,
    zero: Vec<bool>,
}

impl SignedUnionFind {
    fn new(n: usize) -> Self {
        SignedUnionFind {
            parent: (0..n).collect(),
            rel: vec![1; n],
            zero: vec![false; n],
        }
    }

    /// Root of `v` and the sign s with x_v = s * x_root, with path
    /// compression.
    fn find(&mut self, v: usize) -> (usize, i64) {
        let mut path = Vec::new();
        let mut x = v;
        while self.parent[x] != x {
            path.push(x);
            x = self.parent[x];
        }
        let root = x;
        let mut acc = 1;
        for &node in path.iter().rev() {
            acc *= self.rel[node];
            self.parent[node] = root;
            self.rel[node] = acc;
        }
        (root, self.rel[v])
    }

    /// Imposes x_u = s * x_v.
    fn union(&mut self, u: usize, v: usize, s: i64) {
        let (ru, su) = self.find(u);
        let (rv, sv) = self.find(v);
        if ru == rv {
            if su != s * sv {
                self.zero[ru] = true;
            }
        } else {
            self.parent[ru] = rv;
            self.rel[ru] = su * s * sv;
            self.zero[rv] |= self.zero[ru];
        }
    }

    /// Forces the orbit of `v` to zero.
    fn mark_zero(&mut self, v: usize) {
        let (r, _) = self.find(v);
        self.zero[r] = true;
    }
}

/// Closes the sign orbits of the system variables. Rows with two entries
/// a x_u + b x_v = 0 link u and v with relative sign -ab; rows with one
/// entry force that orbit to zero.
fn orbit_closure(sys: &ConjugacySystem) -> SignedUnionFind {
    let nn = sys.n * sys.n;
    let mut uf = SignedUnionFind::new(nn);
    for block in &sys.blocks {
        for row in 0..nn {
            let mut nz: Vec<(usize, i64)> = Vec::with_capacity(2);
            for col in 0..nn {
                let c = block.get(row, col);
                if c != 0 {
                    nz.push((col, c));
                }
            }
            match nz[..] {
                [(u, a), (v, b)] => uf.union(u, v, -a * b),
                [(u, _)] => uf.mark_zero(u),
                [] => {}
                _ => {
                    for &(u, _) in &nz {
                        uf.mark_zero(u);
                    }
                }
            }
        }
    }
    uf
}

struct PermSearch {
    n: usize,
    var_slot: Vec<usize>,
    var_sign: Vec<i64>,
    var_zero: Vec<bool>,
    slot_value: Vec<Option<i64>>,
    col_used: Vec<bool>,
    cells: Vec<i64>,
}

impl PermSearch {
    /// Cells are visited row by row; at each cell the values +1, -1, 0 are
    /// tried in that order, so the first solution maximizes early nonzero
    /// entries and prefers +1 over -1 cell by cell.
    fn dfs(&mut self, v: usize, row_filled: bool, out: &mut Vec<SignedMatrix>, cap: usize) {
        if out.len() >= cap {
            return;
        }
        let n = self.n;
        if v == n * n {
            let rows = self.cells.chunks(n).map(<[i64]>::to_vec).collect();
            out.push(SignedMatrix::from_rows(rows).expect("search cells are signs"));
            return;
        }
        let row = v / n;
        let col = v % n;
        let last_in_row = col == n - 1;
        let var = col * n + row;
        let slot = self.var_slot[var];
        let sgn = self.var_sign[var];
        let fixed: Option<i64> = if self.var_zero[var] {
            Some(0)
        } else {
            self.slot_value[slot].map(|root| sgn * root)
        };
        let pinned;
        let vals: &[i64] = match fixed {
            Some(x) => {
                pinned = [x];
                &pinned
            }
            None => &[1, -1, 0],
        };
        for &val in vals {
            if val != 0 && (self.col_used[col] || row_filled) {
                continue;
            }
            let filled_after = row_filled || val != 0;
            if last_in_row && !filled_after {
                continue;
            }
            let newly = fixed.is_none();
            if newly {
                self.slot_value[slot] = Some(sgn * val);
            }
            if val != 0 {
                self.col_used[col] = true;
            }
            self.cells[v] = val;
            self.dfs(v + 1, !last_in_row && filled_after, out, cap);
            self.cells[v] = 0;
            if val != 0 {
                self.col_used[col] = false;
            }
            if newly {
                self.slot_value[slot] = None;
            }
        }
    }
}

/// Enumerates signed-permutation solutions of the system, at most `cap`,
/// in the deterministic search order of [`solve_signed_perm`].
pub fn enumerate_signed_perm(sys: &ConjugacySystem, cap: usize) -> Vec<SignedMatrix> {
    let mut out = Vec::new();
    if cap == 0 {
        return out;
    }
    let n = sys.n;
    let nn = n * n;
    let mut uf = orbit_closure(sys);
    let resolved: Vec<(usize, i64)> = (0..nn).map(|v| uf.find(v)).collect();
    let mut slot_of_root = vec![usize::MAX; nn];
    let mut slots = 0usize;
    let mut var_slot = Vec::with_capacity(nn);
    for &(root, _) in &resolved {
        if slot_of_root[root] == usize::MAX {
            slot_of_root[root] = slots;
            slots += 1;
        }
        var_slot.push(slot_of_root[root]);
    }
    let mut search = PermSearch {
        n,
        var_slot,
        var_sign: resolved.iter().map(|&(_, s)| s).collect(),
        var_zero: resolved.iter().map(|&(root, _)| uf.zero[root]).collect(),
        slot_value: vec![None; slots],
        col_used: vec![false; n],
        cells: vec![0; nn],
    };
    search.dfs(0, false, &mut out, cap);
    out
}

/// First signed-permutation solution of the system in the deterministic
/// cell order: cells are scanned row by row and the values +1, -1, 0 are
/// preferred in that order, so identical families solve to the identity.
/// Returns None when the system has no signed-permutation solution.
pub fn solve_signed_perm(sys: &ConjugacySystem) -> Option<SignedMatrix> {
    enumerate_signed_perm(sys, 1).into_iter().next()
}

/// True when `b` is an orthogonal signed permutation with
/// F_l B = B E_l for every member pair of the two families.
pub fn verify_conjugacy(b: &SignedMatrix, fam1: &HRFamily, fam2: &HRFamily) -> bool {
    if !b.is_signed_permutation() {
        return false;
    }
    if fam1.n != fam2.n || b.order() != fam1.n || fam1.members.len() != fam2.members.len() {
        return false;
    }
    let bi = b.as_int();
    if !bi.mul(&bi.transpose()).is_scaled_identity(1) {
        return false;
    }
    fam1
        .members
        .iter()
        .zip(&fam2.members)
        .all(|(e, f)| f.as_int().mul(bi) == bi.mul(e.as_int()))
}

/// Advances `perm` to the next permutation in lexicographic order; false
/// when `perm` is already the last one.
fn next_permutation(perm: &mut [usize]) -> bool {
    if perm.len() < 2 {
        return false;
    }
    let mut i = perm.len() - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = perm.len() - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// Searches for a conjugator from `fam1` onto a reordering of `fam2`.
///
/// Member orderings of `fam2` are tried in lexicographic order starting
/// from the identity, so a plain conjugacy is found first when one exists.
/// Returns the conjugator together with the matching: entry l is the index
/// m with F_m = B E_l B^-1. At most [`MATCHING_PERMUTATION_CAP`] orderings
/// are tried.
pub fn solve_with_matching(fam1: &HRFamily, fam2: &HRFamily) -> Option<(SignedMatrix, Vec<usize>)> {
    if fam1.members.len() != fam2.members.len() {
        return None;
    }
    let r = fam1.members.len();
    let mut perm: Vec<usize> = (0..r).collect();
    for _ in 0..MATCHING_PERMUTATION_CAP {
        let reordered = HRFamily {
            n: fam2.n,
            s: fam2.s,
            t: fam2.t,
            members: perm.iter().map(|&m| fam2.members[m].clone()).collect(),
        };
        if let Ok(sys) = build_system(fam1, &reordered) {
            if let Some(b) = solve_signed_perm(&sys) {
                return Some((b, perm));
            }
        }
        if !next_permutation(&mut perm) {
            return None;
        }
    }
    None
}

/// Exact witness that the stacked conjugacy system is rank-deficient.
///
/// The operators A_j = E_j (x) F_j are commuting involutions, the Gram
/// matrix of the system is F = 2 sum_j (I - A_j), and F annihilates the
/// product P = prod_j (I + A_j). A nonzero P therefore certifies a
/// nontrivial nullspace; P vanishes exactly when no nonzero intertwiner
/// exists.
#[derive(Clone, Debug)]
pub struct RankCertificate {
    /// Every A_j squares to the identity.
    pub involutions_ok: bool,
    /// The A_j commute pairwise.
    pub commute_ok: bool,
    /// P = prod (I + A_j) is nonzero.
    pub product_nonzero: bool,
    /// F * P = 0.
    pub annihilates: bool,
    /// F equals the Gram matrix of the stacked system.
    pub gram_matches: bool,
    /// Conjunction of the other flags: the system is certified
    /// rank-deficient.
    pub valid: bool,
    /// The Gram matrix F.
    pub gram: IntMatrix,
}

impl RankCertificate {
    /// Serializes the flags and the Gram matrix.
    pub fn to_json(&self) -> Value {
        json!({
            "involutions_ok": self.involutions_ok,
            "commute_ok": self.commute_ok,
            "product_nonzero": self.product_nonzero,
            "annihilates": self.annihilates,
            "gram_matches": self.gram_matches,
            "valid": self.valid,
            "gram": self.gram.to_rows(),
        })
    }
}

impl fmt::Display for RankCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let line = |ok: bool| if ok { "ok" } else { "FAIL" };
        writeln!(f, "involutions: {}", line(self.involutions_ok))?;
        writeln!(f, "commutation: {}", line(self.commute_ok))?;
        writeln!(f, "product nonzero: {}", line(self.product_nonzero))?;
        writeln!(f, "gram annihilates product: {}", line(self.annihilates))?;
        writeln!(f, "gram matches system: {}", line(self.gram_matches))?;
        write!(
            f,
            "certificate: {}",
            if self.valid { "valid" } else { "invalid" }
        )
    }
}

/// Builds the rank-deficiency certificate for the conjugacy system of the
/// two families. The families must have equal orders and sizes.
pub fn rank_deficiency_certificate(fam1: &HRFamily, fam2: &HRFamily) -> Result<RankCertificate> {
    if fam1.n != fam2.n {
        return Err(Error::Domain(format!(
            "family orders {} and {} differ",
            fam1.n, fam2.n
        )));
    }
    if fam1.members.len() != fam2.members.len() {
        return Err(Error::Domain(format!(
            "family sizes {} and {} differ",
            fam1.members.len(),
            fam2.members.len()
        )));
    }
    if fam1.n > MAX_SYSTEM_ORDER {
        return Err(Error::Domain(format!(
            "certificates support order at most {}, got {}",
            MAX_SYSTEM_ORDER, fam1.n
        )));
    }
    let n = fam1.n;
    let nn = n * n;
    let id_small = IntMatrix::identity(n);
    let id = IntMatrix::identity(nn);
    let a: Vec<IntMatrix> = fam1
        .members
        .iter()
        .zip(&fam2.members)
        .map(|(e, f)| e.as_int().kronecker(f.as_int()))
        .collect();
    let involutions_ok = a.iter().all(|m| m.mul(m).is_scaled_identity(1));
    let commute_ok = (0..a.len()).all(|i| (i + 1..a.len()).all(|j| a[i].mul(&a[j]) == a[j].mul(&a[i])));
    let mut f = IntMatrix::zero(nn, nn);
    for m in &a {
        f = f.add(&id.sub(m));
    }
    let f = f.scale(2);
    let mut p = id.clone();
    for m in &a {
        p = p.mul(&id.add(m));
    }
    let product_nonzero = !p.is_zero();
    let annihilates = f.mul(&p).is_zero();
    let mut gram = IntMatrix::zero(nn, nn);
    for (e, ft) in fam1.members.iter().zip(&fam2.members) {
        let block = e
            .as_int()
            .transpose()
            .kronecker(&id_small)
            .sub(&id_small.kronecker(ft.as_int()));
        gram = gram.add(&block.transpose().mul(&block));
    }
    let gram_matches = gram == f;
    let valid = involutions_ok && commute_ok && product_nonzero && annihilates && gram_matches;
    Ok(RankCertificate {
        involutions_ok,
        commute_ok,
        product_nonzero,
        annihilates,
        gram_matches,
        valid,
        gram,
    })
}

/// An isomorphism of quotient algebras induced by a conjugator: the
/// horizontal change of basis together with the image of each center
/// basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraIso {
    /// Change of basis on the horizontal layer.
    pub horizontal: SignedMatrix,
    /// Entry l is (m, sign): the l-th center basis vector maps to sign
    /// times the m-th one of the target.
    pub center_map: Vec<(usize, i8)>,
}

impl AlgebraIso {
    /// Serializes as the horizontal matrix plus the center map.
    pub fn to_json(&self) -> Value {
        json!({
            "horizontal": self.horizontal.to_json(),
            "center_map": self.center_map.iter().map(|&(m, s)| json!([m, s])).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for AlgebraIso {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.horizontal.order();
        for i in 1..=n {
            for row in 0..n {
                let c = self.horizontal.entry(row, i - 1);
                if c != 0 {
                    let sign = if c < 0 { "-" } else { "" };
                    writeln!(f, "e_{} -> {}e_{}", i, sign, row + 1)?;
                }
            }
        }
        for (l, &(m, s)) in self.center_map.iter().enumerate() {
            let sign = if s < 0 { "-" } else { "" };
            writeln!(f, "omega_{} -> {}omega_{}", l + 1, sign, m + 1)?;
        }
        Ok(())
    }
}

/// Lifts a family conjugator to an isomorphism of the quotient algebras.
///
/// Each conjugated operator B J_l B^-1 must equal a signed target operator,
/// the identification must be injective, the induced map on the centers
/// must send each source basis vector to the matched signed target vector,
/// and every bracket must be preserved. The first violated condition is
/// reported in the error.
pub fn lift_to_algebra_iso(
    b: &SignedMatrix,
    alg1: &HTypeAlgebra,
    alg2: &HTypeAlgebra,
) -> Result<AlgebraIso> {
    let n = alg1.dim_h();
    if alg2.dim_h() != n {
        return Err(Error::Domain(format!(
            "horizontal dimensions {} and {} differ",
            n,
            alg2.dim_h()
        )));
    }
    if b.order() != n || !b.is_signed_permutation() {
        return Err(Error::Domain(
            "the map must be a signed permutation of the horizontal layer".into(),
        ));
    }
    let p = alg1.omega_basis.len();
    if alg2.omega_basis.len() != p {
        return Err(Error::Domain(format!(
            "center dimensions {} and {} differ",
            p,
            alg2.omega_basis.len()
        )));
    }
    let bi = b.as_int();
    let bt = bi.transpose();

    let mut perm = vec![0usize; n + 1];
    let mut psign = vec![0i64; n + 1];
    for i in 1..=n {
        for row in 0..n {
            let c = b.entry(row, i - 1);
            if c != 0 {
                perm[i] = row + 1;
                psign[i] = c;
            }
        }
    }

    let mut center_map = Vec::with_capacity(p);
    let mut taken = vec![false; p];
    for (l, jm) in alg1.j_matrices.iter().enumerate() {
        let g = bi.mul(jm.as_int()).mul(&bt);
        let mut hit = None;
        for (m, jt) in alg2.j_matrices.iter().enumerate() {
            if taken[m] {
                continue;
            }
            if g == *jt.as_int() {
                hit = Some((m, 1i8));
                break;
            }
            if g == jt.as_int().neg() {
                hit = Some((m, -1i8));
                break;
            }
        }
        let (m, sigma) = hit.ok_or_else(|| {
            Error::NotFound(format!(
                "the conjugated operator of omega {} matches no signed target operator",
                l + 1
            ))
        })?;
        taken[m] = true;
        center_map.push((m, sigma));
    }

    for (l, om) in alg1.omega_basis.iter().enumerate() {
        let (m, sigma) = center_map[l];
        let target = &alg2.omega_basis[m];
        for &(i, j) in om.factor().pairs() {
            let a = i64::from(om.coefficient(i, j).expect("pair is in the support"));
            let (mut u, mut v) = (perm[i], perm[j]);
            let mut c = a * psign[i] * psign[j];
            if u > v {
                std::mem::swap(&mut u, &mut v);
                c = -c;
            }
            let want = i64::from(sigma) * target.coefficient(u, v).map_or(0, i64::from);
            if c != want {
                return Err(Error::Domain(format!(
                    "the image of omega {} disagrees with omega {} on the pair ({}, {})",
                    l + 1,
                    m + 1,
                    u,
                    v
                )));
            }
        }
    }

    for i in 1..=n {
        for j in i + 1..=n {
            let lhs = alg2
                .bracket(perm[i], perm[j])
                .map(|(num, den, idx)| (num * psign[i] * psign[j], den, idx));
            let rhs = alg1.bracket(i, j).map(|(num, den, l)| {
                let (m, sigma) = center_map[l];
                (num * i64::from(sigma), den, m)
            });
            if lhs != rhs {
                return Err(Error::Domain(format!(
                    "the bracket [e_{}, e_{}] is not preserved",
                    i, j
                )));
            }
        }
    }

    Ok(AlgebraIso {
        horizontal: b.clone(),
        center_map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::nullspace_i64;
    use crate::fixtures::{
        algebra_1, algebra_2, algebra_3, conjugator_b, conjugator_b1, family_1, family_2,
        family_3, octonion8,
    };
    use crate::hr_family::{build_positive, verify_family};

    fn single(fam: &HRFamily) -> HRFamily {
        HRFamily {
            n: fam.n,
            s: 1,
            t: 0,
            members: vec![fam.members[0].clone()],
        }
    }

    fn conjugated(fam: &HRFamily, p: &SignedMatrix) -> HRFamily {
        let pi = p.as_int();
        let pt = pi.transpose();
        HRFamily {
            n: fam.n,
            s: fam.s,
            t: fam.t,
            members: fam
                .members
                .iter()
                .map(|e| SignedMatrix::from_int(pi.mul(e.as_int()).mul(&pt)).unwrap())
                .collect(),
        }
    }

    #[test]
    fn kron_golden_products() {
        let i2 = SignedMatrix::from_rows(vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(kron(&i2, &i2), IntMatrix::identity(4));
        let p = SignedMatrix::from_rows(vec![vec![0, -1], vec![1, 0]]).unwrap();
        let want = IntMatrix::from_rows(vec![
            vec![0, 0, -1, 0],
            vec![0, 0, 0, -1],
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
        ])
        .unwrap();
        assert_eq!(kron(&p, &i2), want);
    }

    #[test]
    fn kron_mixed_product_identity() {
        let fam = build_positive(2, 3).unwrap();
        let (a, b) = (&fam.members[0], &fam.members[1]);
        let (c, d) = (&fam.members[2], &fam.members[0]);
        let lhs = kron(a, b).mul(&kron(c, d));
        let rhs = a.as_int().mul(c.as_int()).kronecker(&b.as_int().mul(d.as_int()));
        assert_eq!(lhs, rhs);
        assert_eq!(kron(a, b).transpose(), kron(&a.transpose(), &b.transpose()));
    }

    #[test]
    fn vec_is_column_major() {
        assert_eq!(vec(&IntMatrix::identity(2)), std::vec![1, 0, 0, 1]);
        let b = conjugator_b();
        assert_eq!(
            vec(b.as_int()),
            std::vec![0, 1, 0, 0, -1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0]
        );
    }

    #[test]
    fn vec_kron_triple_identity() {
        let a = IntMatrix::from_rows(vec![vec![1, 2, 0], vec![0, 1, -1], vec![3, 0, 2]]).unwrap();
        let b = IntMatrix::from_rows(vec![vec![0, 1, 2], vec![1, 0, 0], vec![-1, 1, 1]]).unwrap();
        let c = IntMatrix::from_rows(vec![vec![2, 0, 1], vec![0, 1, 0], vec![1, -1, 0]]).unwrap();
        let lhs = vec(&a.mul(&b).mul(&c));
        let rhs = c.transpose().kronecker(&a).apply(&vec(&b));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn build_system_reproduces_the_displayed_block() {
        let sys = build_system(&family_1(), &family_3()).unwrap();
        assert_eq!((sys.n, sys.r), (4, 3));
        let want = IntMatrix::from_rows(vec![
            vec![0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
            vec![-1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
            vec![0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
            vec![0, 0, -1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0],
            vec![-1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
            vec![0, -1, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
            vec![0, 0, -1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0],
            vec![0, 0, 0, -1, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
            vec![0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, -1, 0, 0, 0],
            vec![0, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, -1, 0, 0],
            vec![0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, -1, 0],
            vec![0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, -1],
            vec![0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0],
            vec![0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, -1, 0, 0, 0],
            vec![0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1],
            vec![0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, -1, 0],
        ])
        .unwrap();
        assert_eq!(sys.blocks[0], want);
        let solution = vec(conjugator_b().as_int());
        assert!(want.apply(&solution).iter().all(|&c| c == 0));
    }

    #[test]
    fn build_system_rejects_mismatches() {
        assert!(build_system(&family_1(), &octonion8()).is_err());
        let mut wrong_sig = family_2();
        wrong_sig.s = 2;
        wrong_sig.t = 1;
        assert!(build_system(&family_1(), &wrong_sig).is_err());
        let mut short = family_2();
        short.members.pop();
        short.s = 2;
        assert!(build_system(&family_1(), &short).is_err());
    }

    #[test]
    fn identical_families_solve_to_the_identity() {
        let fam = family_1();
        let sys = build_system(&fam, &fam).unwrap();
        let b = solve_signed_perm(&sys).unwrap();
        assert_eq!(b.as_int(), &IntMatrix::identity(4));
        let all = enumerate_signed_perm(&sys, 16);
        assert_eq!(all.len(), 8);
        assert_eq!(all[1].as_int(), &IntMatrix::identity(4).neg());
        for c in &all {
            assert!(verify_conjugacy(c, &fam, &fam));
        }
    }

    #[test]
    fn omega1_to_omega3_solves_and_enumerates() {
        let fam1 = family_1();
        let fam3 = family_3();
        let sys = build_system(&fam1, &fam3).unwrap();
        let b = solve_signed_perm(&sys).unwrap();
        let diag = SignedMatrix::from_rows(vec![
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
            vec![0, 0, -1, 0],
            vec![0, 0, 0, 1],
        ])
        .unwrap();
        assert_eq!(b, diag);
        assert!(verify_conjugacy(&b, &fam1, &fam3));
        let all = enumerate_signed_perm(&sys, 16);
        assert_eq!(all.len(), 8);
        assert!(all.contains(&conjugator_b()));
        assert_eq!(all[0], diag);
        for c in &all {
            assert!(verify_conjugacy(c, &fam1, &fam3));
        }
    }

    #[test]
    fn omega1_to_omega2_has_no_member_wise_conjugator() {
        let sys = build_system(&family_1(), &family_2()).unwrap();
        assert!(solve_signed_perm(&sys).is_none());
        assert!(enumerate_signed_perm(&sys, 16).is_empty());
    }

    #[test]
    fn matching_search_finds_the_exchange_conjugator() {
        let (b, matching) = solve_with_matching(&family_1(), &family_2()).unwrap();
        assert_eq!(b, conjugator_b1());
        assert_eq!(matching, std::vec![0, 2, 1]);
        let fam2 = family_2();
        let reordered = HRFamily {
            n: 4,
            s: 3,
            t: 0,
            members: matching.iter().map(|&m| fam2.members[m].clone()).collect(),
        };
        assert!(verify_conjugacy(&b, &family_1(), &reordered));
    }

    #[test]
    fn verify_conjugacy_answers() {
        assert!(verify_conjugacy(&conjugator_b(), &family_1(), &family_3()));
        assert!(!verify_conjugacy(&conjugator_b(), &family_1(), &family_2()));
        assert!(verify_conjugacy(
            &SignedMatrix::from_int(IntMatrix::identity(4)).unwrap(),
            &family_1(),
            &family_1()
        ));
    }

    #[test]
    fn certificate_for_conjugate_pair_is_valid() {
        let cert = rank_deficiency_certificate(&family_1(), &family_3()).unwrap();
        assert!(cert.involutions_ok);
        assert!(cert.commute_ok);
        assert!(cert.product_nonzero);
        assert!(cert.annihilates);
        assert!(cert.gram_matches);
        assert!(cert.valid);
        for b in [conjugator_b(), solve_signed_perm(&build_system(&family_1(), &family_3()).unwrap()).unwrap()] {
            assert!(cert.gram.apply(&vec(b.as_int())).iter().all(|&c| c == 0));
        }
    }

    #[test]
    fn certificate_detects_the_empty_nullspace() {
        let cert = rank_deficiency_certificate(&family_1(), &family_2()).unwrap();
        assert!(cert.involutions_ok);
        assert!(cert.commute_ok);
        assert!(!cert.product_nonzero);
        assert!(cert.annihilates);
        assert!(cert.gram_matches);
        assert!(!cert.valid);
    }

    #[test]
    fn certificate_single_member_and_octonion() {
        let cert = rank_deficiency_certificate(&single(&family_1()), &single(&family_3())).unwrap();
        assert!(cert.valid);
        let oct = octonion8();
        let p = SignedMatrix::from_column_action(8, |c| (7 - c, if c % 2 == 0 { 1 } else { -1 }))
            .unwrap();
        let oct2 = conjugated(&oct, &p);
        assert!(verify_family(&oct2).pass);
        let cert = rank_deficiency_certificate(&oct, &oct2).unwrap();
        assert!(cert.valid);
        let b = solve_signed_perm(&build_system(&oct, &oct2).unwrap()).unwrap();
        assert!(verify_conjugacy(&b, &oct, &oct2));
    }

    #[test]
    fn nullspace_dimensions_match_the_solver() {
        let sys13 = build_system(&family_1(), &family_3()).unwrap();
        assert_eq!(nullspace_i64(&sys13.stacked_rows(), 16).len(), 4);
        let sys12 = build_system(&family_1(), &family_2()).unwrap();
        assert_eq!(nullspace_i64(&sys12.stacked_rows(), 16).len(), 0);
    }

    #[test]
    fn lifts_report_the_center_maps() {
        let iso = lift_to_algebra_iso(&conjugator_b(), &algebra_1(), &algebra_3()).unwrap();
        assert_eq!(iso.center_map, std::vec![(0, 1), (1, 1), (2, 1)]);
        let d = solve_signed_perm(&build_system(&family_1(), &family_3()).unwrap()).unwrap();
        let iso = lift_to_algebra_iso(&d, &algebra_1(), &algebra_3()).unwrap();
        assert_eq!(iso.center_map, std::vec![(0, 1), (1, 1), (2, 1)]);
        let iso = lift_to_algebra_iso(&conjugator_b1(), &algebra_1(), &algebra_2()).unwrap();
        assert_eq!(iso.center_map, std::vec![(0, 1), (2, 1), (1, 1)]);
        let text = iso.to_string();
        assert!(text.contains("omega_2 -> omega_3"));
        assert!(text.contains("e_3 -> e_4"));
        let id = SignedMatrix::from_int(IntMatrix::identity(4)).unwrap();
        let iso = lift_to_algebra_iso(&id, &algebra_1(), &algebra_1()).unwrap();
        assert_eq!(iso.center_map, std::vec![(0, 1), (1, 1), (2, 1)]);
    }

    #[test]
    fn lift_signs_and_rejections() {
        let id = SignedMatrix::from_int(IntMatrix::identity(4)).unwrap();
        let err = lift_to_algebra_iso(&id, &algebra_1(), &algebra_3()).unwrap_err();
        assert!(matches!(err, Error::NotFound(_)));
        let swap = SignedMatrix::from_rows(vec![
            vec![0, 1, 0, 0],
            vec![1, 0, 0, 0],
            vec![0, 0, 1, 0],
            vec![0, 0, 0, 1],
        ])
        .unwrap();
        let iso = lift_to_algebra_iso(&swap, &algebra_1(), &algebra_3()).unwrap();
        assert_eq!(iso.center_map, std::vec![(0, -1), (2, -1), (1, -1)]);
    }

    #[test]
    fn conjugation_preserves_family_validity() {
        let fam = build_positive(2, 3).unwrap();
        let p = SignedMatrix::from_column_action(4, |c| ((c + 1) % 4, if c == 2 { -1 } else { 1 }))
            .unwrap();
        let fam2 = conjugated(&fam, &p);
        assert!(verify_family(&fam2).pass);
        let b = solve_signed_perm(&build_system(&fam, &fam2).unwrap()).unwrap();
        assert!(verify_conjugacy(&b, &fam, &fam2));
    }
}
