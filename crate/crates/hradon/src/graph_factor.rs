//! 1-factors and 1-factorizations of complete graphs.
//!
//! A 1-factor of K_{2k} is a perfect matching on the vertices 1..2k; a
//! 1-factorization partitions all k(2k-1) edges into 2k-1 such matchings.
//! The union of two distinct edge-disjoint factors decomposes into even
//! cycles, and the multiset of cycle lengths is the invariant that
//! distinguishes factorizations (the Kirkman and Steiner schedules of K8
//! have types {8} and {4,4} on every row pair). 1-factorizations in which
//! every pair of factors has type {4,...,4} are called square and are
//! exactly the ones underlying anticommuting families of complex
//! structures.
//!
//! Vertices are 1-based at every interface.

use crate::error::{Error, Result};
use crate::hr_family::{self, HRFamily};
use serde_json::Value;

/// Largest half-order accepted by the generators.
pub const MAX_HALF_ORDER: usize = 2048;

/// A perfect matching on the vertex set {1..2k}.
///
/// Pairs are normalized to `i < j` and stored sorted by first element, so
/// equal matchings compare equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OneFactor {
    pairs: Vec<(usize, usize)>,
}

impl OneFactor {
    /// Validates and canonicalizes a matching. The pairs must cover every
    /// vertex 1..2k exactly once, where k is the number of pairs.
    pub fn new(pairs: Vec<(usize, usize)>) -> Result<Self> {
        let k = pairs.len();
        if k == 0 {
            return Err(Error::Domain("a 1-factor needs at least one pair".into()));
        }
        let mut seen = vec![false; 2 * k + 1];
        let mut normalized = Vec::with_capacity(k);
        for (a, b) in pairs {
            if a == b {
                return Err(Error::Domain(format!("pair ({}, {}) is a loop", a, b)));
            }
            for v in [a, b] {
                if v == 0 || v > 2 * k {
                    return Err(Error::Domain(format!(
                        "vertex {} outside 1..{}",
                        v,
                        2 * k
                    )));
                }
                if seen[v] {
                    return Err(Error::Domain(format!("vertex {} appears twice", v)));
                }
                seen[v] = true;
            }
            normalized.push((a.min(b), a.max(b)));
        }
        normalized.sort();
        Ok(OneFactor { pairs: normalized })
    }

    /// The pairs, sorted by first element, each with `i < j`.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Number of pairs.
    pub fn k(&self) -> usize {
        self.pairs.len()
    }

    /// Number of matched vertices, 2k.
    pub fn vertex_count(&self) -> usize {
        2 * self.pairs.len()
    }

    /// The vertex matched with `v`, or None if `v` is out of range.
    pub fn partner(&self, v: usize) -> Option<usize> {
        self.pairs.iter().find_map(|&(a, b)| {
            if a == v {
                Some(b)
            } else if b == v {
                Some(a)
            } else {
                None
            }
        })
    }

    /// True when the edge {a, b} belongs to the matching.
    pub fn contains_edge(&self, a: usize, b: usize) -> bool {
        let e = (a.min(b), a.max(b));
        self.pairs.binary_search(&e).is_ok()
    }
}

/// A sequence of 1-factors over a common vertex set.
///
/// The wrapper itself carries no validity guarantee beyond each factor
/// being a matching; use [`validate_factorization`] to check that the
/// factors partition all edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneFactorization {
    /// The factors, in canonical (lexicographic) order for generated
    /// factorizations and in source order for parsed ones.
    pub factors: Vec<OneFactor>,
}

impl OneFactorization {
    /// Text form: one factor per line, pairs as "i-j" tokens separated by
    /// single spaces.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for f in &self.factors {
            let tokens: Vec<String> = f
                .pairs()
                .iter()
                .map(|(a, b)| format!("{}-{}", a, b))
                .collect();
            out.push_str(&tokens.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses the text form. Blank lines are skipped; each factor is
    /// validated as a matching.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut factors = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut pairs = Vec::new();
            for token in line.split_whitespace() {
                let (a, b) = token
                    .split_once('-')
                    .ok_or_else(|| Error::Parse(format!("expected i-j token, got {:?}", token)))?;
                let a: usize = a
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad vertex {:?}", a)))?;
                let b: usize = b
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad vertex {:?}", b)))?;
                pairs.push((a, b));
            }
            factors.push(OneFactor::new(pairs).map_err(|e| Error::Parse(e.to_string()))?);
        }
        if factors.is_empty() {
            return Err(Error::Parse("no factors in input".into()));
        }
        Ok(OneFactorization { factors })
    }

    /// JSON form: array of factors, each an array of 2-element arrays.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.factors
                .iter()
                .map(|f| {
                    Value::Array(
                        f.pairs()
                            .iter()
                            .map(|&(a, b)| {
                                Value::Array(vec![Value::from(a as u64), Value::from(b as u64)])
                            })
                            .collect(),
                    )
                })
                .collect(),
        )
    }

    /// Parses the JSON form.
    pub fn from_json(v: &Value) -> Result<Self> {
        let outer = v
            .as_array()
            .ok_or_else(|| Error::Parse("expected a JSON array of factors".into()))?;
        let mut factors = Vec::new();
        for f in outer {
            let pairs_json = f
                .as_array()
                .ok_or_else(|| Error::Parse("expected each factor to be an array".into()))?;
            let mut pairs = Vec::new();
            for p in pairs_json {
                let pair = p
                    .as_array()
                    .filter(|a| a.len() == 2)
                    .ok_or_else(|| Error::Parse("expected 2-element pair arrays".into()))?;
                let a = pair[0]
                    .as_u64()
                    .ok_or_else(|| Error::Parse("expected integer vertices".into()))?;
                let b = pair[1]
                    .as_u64()
                    .ok_or_else(|| Error::Parse("expected integer vertices".into()))?;
                pairs.push((a as usize, b as usize));
            }
            factors.push(OneFactor::new(pairs).map_err(|e| Error::Parse(e.to_string()))?);
        }
        if factors.is_empty() {
            return Err(Error::Parse("no factors in input".into()));
        }
        Ok(OneFactorization { factors })
    }
}

/// Multiset of cycle lengths, stored sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleType {
    lengths: Vec<usize>,
}

impl CycleType {
    /// Builds a cycle type, sorting the lengths.
    pub fn new(mut lengths: Vec<usize>) -> Self {
        lengths.sort();
        CycleType { lengths }
    }

    /// The lengths, ascending.
    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    /// True when every cycle has length 4.
    pub fn is_square(&self) -> bool {
        self.lengths.iter().all(|&l| l == 4)
    }
}

impl std::fmt::Display for CycleType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.lengths.iter().map(|l| l.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Round-robin (circle method) 1-factorization of K_{2k}.
///
/// Vertex 2k stays fixed while 1..2k-1 rotate; round r pairs 2k with
/// r mod (2k-1) + 1 and pairs the remaining vertices symmetrically around
/// the circle. The factors are canonicalized and sorted, so the result is
/// deterministic.
///
/// # Examples
///
/// ```
/// let f = hradon::graph_factor::round_robin(2).unwrap();
/// assert_eq!(f.factors[0].pairs(), &[(1, 2), (3, 4)]);
/// assert_eq!(f.factors[1].pairs(), &[(1, 3), (2, 4)]);
/// assert_eq!(f.factors[2].pairs(), &[(1, 4), (2, 3)]);
/// ```
pub fn round_robin(k: usize) -> Result<OneFactorization> {
    if k == 0 || k > MAX_HALF_ORDER {
        return Err(Error::Domain(format!(
            "round_robin supports 1 <= k <= {}, got {}",
            MAX_HALF_ORDER, k
        )));
    }
    let m = 2 * k;
    let mut factors = Vec::with_capacity(m - 1);
    for r in 0..m - 1 {
        let mut pairs = vec![(m, r % (m - 1) + 1)];
        for i in 1..k {
            let a = (r + i) % (m - 1) + 1;
            let b = (r + m - 1 - i) % (m - 1) + 1;
            pairs.push((a, b));
        }
        factors.push(OneFactor::new(pairs)?);
    }
    factors.sort();
    Ok(OneFactorization { factors })
}

/// XOR 1-factorization of K_{2^m}: with vertices labeled 1 + x for m-bit
/// strings x, factor a (for each nonzero a) matches x with x XOR a. Every
/// pair of distinct factors is square.
///
/// # Examples
///
/// ```
/// use hradon::graph_factor::{is_square_pair, xor_factorization};
///
/// let f = xor_factorization(2).unwrap();
/// assert_eq!(f.factors.len(), 3);
/// assert!(is_square_pair(&f.factors[0], &f.factors[1]).unwrap());
/// ```
pub fn xor_factorization(m: u32) -> Result<OneFactorization> {
    if m == 0 || (1usize << m) > 2 * MAX_HALF_ORDER {
        return Err(Error::Domain(format!(
            "xor_factorization supports 1 <= m <= 12, got {}",
            m
        )));
    }
    let n = 1usize << m;
    let mut factors = Vec::with_capacity(n - 1);
    for a in 1..n {
        let pairs: Vec<(usize, usize)> = (0..n)
            .filter(|&x| x < x ^ a)
            .map(|x| (x + 1, (x ^ a) + 1))
            .collect();
        factors.push(OneFactor::new(pairs)?);
    }
    Ok(OneFactorization { factors })
}

/// True when the factors all match the same vertex set and together cover
/// every edge of K_{2k} exactly once.
pub fn validate_factorization(f: &OneFactorization) -> bool {
    let Some(first) = f.factors.first() else {
        return false;
    };
    let n = first.vertex_count();
    if f.factors.iter().any(|fac| fac.vertex_count() != n) {
        return false;
    }
    let mut edges: Vec<(usize, usize)> = f
        .factors
        .iter()
        .flat_map(|fac| fac.pairs().iter().copied())
        .collect();
    let total = edges.len();
    edges.sort();
    edges.dedup();
    edges.len() == total && total == n * (n - 1) / 2
}

/// Cycle type of the union of two distinct edge-disjoint factors.
///
/// The union of two perfect matchings on 2k vertices in which every vertex
/// has one partner in each is a disjoint union of even cycles alternating
/// between the factors; the lengths sum to 2k. Equal factors and factors
/// sharing an edge are rejected, since a shared edge degenerates to a
/// doubled edge rather than a cycle of length at least 4.
pub fn union_cycles(f1: &OneFactor, f2: &OneFactor) -> Result<CycleType> {
    if f1.vertex_count() != f2.vertex_count() {
        return Err(Error::Domain(format!(
            "factors match {} and {} vertices",
            f1.vertex_count(),
            f2.vertex_count()
        )));
    }
    if f1 == f2 {
        return Err(Error::Domain("union of a factor with itself".into()));
    }
    if let Some(&(a, b)) = f1.pairs().iter().find(|&&(a, b)| f2.contains_edge(a, b)) {
        return Err(Error::Domain(format!(
            "factors share the edge {}-{}",
            a, b
        )));
    }
    let n = f1.vertex_count();
    let mut visited = vec![false; n + 1];
    let mut lengths = Vec::new();
    for start in 1..=n {
        if visited[start] {
            continue;
        }
        let mut v = start;
        let mut len = 0;
        let mut take_first = true;
        loop {
            visited[v] = true;
            len += 1;
            let next = if take_first {
                f1.partner(v)
            } else {
                f2.partner(v)
            };
            v = next.expect("matched vertex has a partner");
            take_first = !take_first;
            if v == start {
                break;
            }
        }
        lengths.push(len);
    }
    Ok(CycleType::new(lengths))
}

/// True when every cycle of the union of the two factors has length 4.
pub fn is_square_pair(f1: &OneFactor, f2: &OneFactor) -> Result<bool> {
    Ok(union_cycles(f1, f2)?.is_square())
}

/// Support matchings of an anticommuting family of complex structures.
///
/// Requires every member to be a skew signed permutation with square -I
/// and all distinct pairs to anticommute; under these conditions the
/// support matchings are pairwise square. The matchings are returned in
/// member order.
pub fn square_subfamily_from_hr(family: &HRFamily) -> Result<Vec<OneFactor>> {
    for (idx, e) in family.members.iter().enumerate() {
        if !e.is_signed_permutation() || !e.is_skew() || !e.square().is_scaled_identity(-1) {
            return Err(Error::Domain(format!(
                "member {} is not a skew signed permutation with square -I",
                idx + 1
            )));
        }
    }
    for i in 0..family.members.len() {
        for j in i + 1..family.members.len() {
            let a = family.members[i].as_int();
            let b = family.members[j].as_int();
            if !a.mul(b).add(&b.mul(a)).is_zero() {
                return Err(Error::Domain(format!(
                    "members {} and {} do not anticommute",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    family
        .members
        .iter()
        .map(hr_family::support_factor)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_factor_validation() {
        assert!(OneFactor::new(vec![(3, 4), (2, 1)]).is_ok());
        assert!(OneFactor::new(vec![]).is_err());
        assert!(OneFactor::new(vec![(1, 1), (2, 3)]).is_err());
        assert!(OneFactor::new(vec![(1, 2), (2, 3)]).is_err());
        assert!(OneFactor::new(vec![(1, 2), (3, 5)]).is_err());
        let f = OneFactor::new(vec![(4, 3), (2, 1)]).unwrap();
        assert_eq!(f.pairs(), &[(1, 2), (3, 4)]);
        assert_eq!(f.partner(3), Some(4));
        assert!(f.contains_edge(2, 1));
        assert!(!f.contains_edge(1, 3));
    }

    #[test]
    fn round_robin_small_orders() {
        let f = round_robin(2).unwrap();
        assert_eq!(f.factors.len(), 3);
        assert_eq!(f.factors[0].pairs(), &[(1, 2), (3, 4)]);
        assert_eq!(f.factors[1].pairs(), &[(1, 3), (2, 4)]);
        assert_eq!(f.factors[2].pairs(), &[(1, 4), (2, 3)]);
        for k in [1, 3, 4, 5, 16] {
            let f = round_robin(k).unwrap();
            assert_eq!(f.factors.len(), 2 * k - 1);
            assert!(validate_factorization(&f), "k = {}", k);
        }
        assert!(round_robin(0).is_err());
    }

    #[test]
    fn xor_factorization_is_square() {
        let f = xor_factorization(1).unwrap();
        assert_eq!(f.factors.len(), 1);
        assert_eq!(f.factors[0].pairs(), &[(1, 2)]);
        for m in 2..=4 {
            let f = xor_factorization(m).unwrap();
            assert_eq!(f.factors.len(), (1 << m) - 1);
            assert!(validate_factorization(&f));
            for i in 0..f.factors.len() {
                for j in i + 1..f.factors.len() {
                    assert!(is_square_pair(&f.factors[i], &f.factors[j]).unwrap());
                }
            }
        }
        assert!(xor_factorization(0).is_err());
    }

    #[test]
    fn validate_rejects_duplicated_factor() {
        let mut f = round_robin(2).unwrap();
        f.factors[2] = f.factors[1].clone();
        assert!(!validate_factorization(&f));
    }

    #[test]
    fn union_cycles_on_k4() {
        let f = round_robin(2).unwrap();
        let t = union_cycles(&f.factors[0], &f.factors[1]).unwrap();
        assert_eq!(t.lengths(), &[4]);
        assert_eq!(t.to_string(), "{4}");
        assert!(t.is_square());
        assert!(union_cycles(&f.factors[0], &f.factors[0]).is_err());
    }

    #[test]
    fn union_cycles_rejects_shared_edge() {
        let f1 = OneFactor::new(vec![(1, 2), (3, 4), (5, 6)]).unwrap();
        let f2 = OneFactor::new(vec![(1, 2), (3, 5), (4, 6)]).unwrap();
        let err = union_cycles(&f1, &f2).unwrap_err().to_string();
        assert!(err.contains("share"), "got: {}", err);
    }

    #[test]
    fn cycle_lengths_sum_to_vertex_count() {
        let f = round_robin(5).unwrap();
        for i in 0..f.factors.len() {
            for j in i + 1..f.factors.len() {
                let t = union_cycles(&f.factors[i], &f.factors[j]).unwrap();
                assert_eq!(t.lengths().iter().sum::<usize>(), 10);
                assert!(t.lengths().iter().all(|&l| l % 2 == 0 && l >= 4));
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let f = round_robin(3).unwrap();
        let text = f.to_text();
        assert!(text.starts_with("1-2 3-5 4-6\n"));
        let parsed = OneFactorization::from_text(&text).unwrap();
        assert_eq!(parsed, f);
        assert!(OneFactorization::from_text("1-2 3\n").is_err());
        assert!(OneFactorization::from_text("").is_err());
    }

    #[test]
    fn json_round_trip() {
        let f = round_robin(4).unwrap();
        let v = f.to_json();
        assert_eq!(OneFactorization::from_json(&v).unwrap(), f);
    }
}
