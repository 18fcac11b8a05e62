//! The Hurwitz-Radon function and its signature refinements.
//!
//! The classical function rho(n) bounds the size of a family of pairwise
//! anticommuting orthogonal matrices of order n. Wolfe's refinements
//! rho_t and sigma_s count skew members given t symmetric ones and
//! vice versa, and Ciatti's admissibility condition on a signature triple
//! (s, t, r) decides which mixed signatures are realizable at order 2^r.
//! The two maximal-signature searches combine these into the largest s for
//! a given t and the largest t for a given s.
//!
//! All arithmetic is integer arithmetic on native types; inputs are capped
//! at desk scale (n <= 4096, r <= 10, s and t <= 12) and larger queries are
//! rejected instead of risking meaningless extrapolation.

use crate::error::{Error, Result};

/// Largest order accepted by [`decompose`] and [`rho`].
pub const MAX_ORDER: u64 = 1 << 12;

/// Largest exponent accepted by the signature functions.
pub const MAX_EXPONENT: u32 = 10;

/// Largest signature index accepted by the signature functions.
pub const MAX_SIGNATURE_INDEX: u32 = 12;

/// The factorization n = u * 2^(4*alpha + beta) with u odd and beta in 0..4.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RhoDecomposition {
    /// Odd part of n.
    pub u: u64,
    /// Quotient of the 2-adic valuation by 4.
    pub alpha: u32,
    /// Remainder of the 2-adic valuation mod 4.
    pub beta: u32,
}

impl RhoDecomposition {
    /// Reconstructs the decomposed integer.
    pub fn reconstruct(&self) -> u64 {
        self.u << (4 * self.alpha + self.beta)
    }
}

/// Counts of positive and negative directions of a diagonal scalar product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignaturePair {
    /// Positive directions.
    pub s: usize,
    /// Negative directions.
    pub t: usize,
}

/// Factors n as u * 2^(4*alpha + beta) with u odd and beta in 0..4.
///
/// # Examples
///
/// ```
/// let d = hradon::hr_arith::decompose(12).unwrap();
/// assert_eq!((d.u, d.alpha, d.beta), (3, 0, 2));
/// assert_eq!(d.reconstruct(), 12);
/// ```
pub fn decompose(n: u64) -> Result<RhoDecomposition> {
    if n == 0 {
        return Err(Error::Domain("decompose requires n >= 1".into()));
    }
    if n > MAX_ORDER {
        return Err(Error::Domain(format!(
            "decompose supports n <= {}, got {}",
            MAX_ORDER, n
        )));
    }
    let v = n.trailing_zeros();
    Ok(RhoDecomposition {
        u: n >> v,
        alpha: v / 4,
        beta: v % 4,
    })
}

/// The Hurwitz-Radon function rho(n) = 8*alpha + 2^beta.
///
/// # Examples
///
/// ```
/// assert_eq!(hradon::hr_arith::rho(16).unwrap(), 9);
/// assert_eq!(hradon::hr_arith::rho(12).unwrap(), 4);
/// assert_eq!(hradon::hr_arith::rho(7).unwrap(), 1);
/// ```
pub fn rho(n: u64) -> Result<u64> {
    let d = decompose(n)?;
    Ok(8 * d.alpha as u64 + (1u64 << d.beta))
}

/// rho(2^r) without an order cap; valid for any exponent that fits.
fn rho_pow2(r: u32) -> u64 {
    8 * (r as u64 / 4) + (1u64 << (r % 4))
}

/// Tabulated base values of rho_t that the downward recurrence cannot
/// reach: rho_1(2) = rho_2(2) = 2 and rho_5(8) = 1.
pub fn wolfe_base_rho(r: u32, t: u32) -> Option<u64> {
    match (r, t) {
        (1, 1) | (1, 2) => Some(2),
        (3, 5) => Some(1),
        _ => None,
    }
}

/// Tabulated base values of sigma_s that the downward recurrence cannot
/// reach: sigma_1(2) = 3 and sigma_3(4) = sigma_5(8) = sigma_6(8) =
/// sigma_7(8) = 1.
pub fn wolfe_base_sigma(r: u32, s: u32) -> Option<u64> {
    match (r, s) {
        (1, 1) => Some(3),
        (2, 3) | (3, 5) | (3, 6) | (3, 7) => Some(1),
        _ => None,
    }
}

/// Extended evaluation of rho_t(2^r): base table first, then the downward
/// recurrence rho_t(2^r) = rho_{t-1}(2^{r-1}) + 1, then the mod-16 shift
/// rho_t(2^r) = rho_{t-8}(2^{r-4}). Returns None where no rule applies.
fn rho_t_ext(r: u32, t: u32) -> Option<u64> {
    if let Some(v) = wolfe_base_rho(r, t) {
        return Some(v);
    }
    let direct = if t == 0 {
        Some(rho_pow2(r))
    } else if r == 0 {
        if t == 1 {
            Some(1)
        } else {
            None
        }
    } else {
        rho_t_ext(r - 1, t - 1).map(|v| v + 1)
    };
    if direct.is_some() {
        return direct;
    }
    if t >= 8 && r >= 4 {
        return rho_t_ext(r - 4, t - 8);
    }
    None
}

/// Extended evaluation of sigma_s(2^r): base table first, then
/// sigma_0(2^r) = rho(2^{r-1}) + 2 and the downward recurrence
/// sigma_s(2^r) = sigma_{s-1}(2^{r-1}) + 1, then the mod-16 shift
/// sigma_s(2^r) = sigma_{s-8}(2^{r-4}). Returns None where no rule applies.
fn sigma_s_ext(r: u32, s: u32) -> Option<u64> {
    if let Some(v) = wolfe_base_sigma(r, s) {
        return Some(v);
    }
    let direct = if r == 0 {
        if s == 0 {
            Some(2)
        } else {
            None
        }
    } else if s == 0 {
        Some(rho_pow2(r - 1) + 2)
    } else {
        sigma_s_ext(r - 1, s - 1).map(|v| v + 1)
    };
    if direct.is_some() {
        return direct;
    }
    if s >= 8 && r >= 4 {
        return sigma_s_ext(r - 4, s - 8);
    }
    None
}

fn check_signature_range(r: u32, idx: u32, idx_name: &str) -> Result<()> {
    if r > MAX_EXPONENT || idx > MAX_SIGNATURE_INDEX {
        return Err(Error::Domain(format!(
            "supported range is r <= {} and {} <= {}, got r={}, {}={}",
            MAX_EXPONENT, idx_name, MAX_SIGNATURE_INDEX, r, idx_name, idx
        )));
    }
    Ok(())
}

/// Wolfe's rho_t(2^r), the maximal number of skew members of an
/// anticommuting family of order 2^r containing t symmetric members.
///
/// Defined here for 0 <= t <= r, where the recurrence closes to
/// rho(2^{r-t}) + t. Queries with t > r are rejected, and when a tabulated
/// base value exists for the rejected pair the error message cites it.
///
/// # Examples
///
/// ```
/// assert_eq!(hradon::hr_arith::rho_t(1, 1).unwrap(), 2);
/// assert_eq!(hradon::hr_arith::rho_t(4, 1).unwrap(), 9);
/// assert!(hradon::hr_arith::rho_t(3, 5).is_err());
/// ```
pub fn rho_t(r: u32, t: u32) -> Result<u64> {
    check_signature_range(r, t, "t")?;
    if t > r {
        let msg = match wolfe_base_rho(r, t) {
            Some(v) => format!(
                "rho_t(r={}, t={}) is outside the recurrence domain t <= r; \
                 tabulated base value is {}",
                r, t, v
            ),
            None => format!("rho_t requires t <= r, got r={}, t={}", r, t),
        };
        return Err(Error::Domain(msg));
    }
    Ok(rho_pow2(r - t) + t as u64)
}

/// Wolfe's sigma_s(2^r), the maximal number of symmetric members of an
/// anticommuting family of order 2^r containing s skew members.
///
/// The base table is consulted first, so the tabulated values with s > r-1
/// (for example sigma_3(4) = 1) are returned directly; other queries
/// require 0 <= s <= r-1, where the recurrence closes to
/// rho(2^{r-1-s}) + 2 + s.
///
/// # Examples
///
/// ```
/// assert_eq!(hradon::hr_arith::sigma_s(1, 1).unwrap(), 3);
/// assert_eq!(hradon::hr_arith::sigma_s(2, 3).unwrap(), 1);
/// assert_eq!(hradon::hr_arith::sigma_s(3, 0).unwrap(), 6);
/// ```
pub fn sigma_s(r: u32, s: u32) -> Result<u64> {
    check_signature_range(r, s, "s")?;
    if let Some(v) = wolfe_base_sigma(r, s) {
        return Ok(v);
    }
    if r >= 1 && s < r {
        return Ok(rho_pow2(r - 1 - s) + 2 + s as u64);
    }
    Err(Error::Domain(format!(
        "sigma_s requires 0 <= s <= r-1 outside the base table, got r={}, s={}",
        r, s
    )))
}

/// tau(2^r) = 2(r + 1), the maximum of rho_t(2^r) + t over t >= 0.
pub fn tau(r: u32) -> u64 {
    2 * (r as u64 + 1)
}

/// Ciatti's admissibility condition on a signature triple (s, t, r): true
/// exactly when an irreducible admissible Clifford module with signature
/// (s, t) exists in dimension 2^r.
///
/// The condition depends on s - t mod 8 and r mod 4:
///
/// | s - t mod 8 | admissible r mod 4 |
/// |-------------|--------------------|
/// | 0, 6        | 0, 3               |
/// | 1, 5        | 0, 1, 3            |
/// | 2, 4        | all                |
/// | 3           | 0, 2               |
/// | 7           | 3                  |
///
/// # Examples
///
/// ```
/// assert!(hradon::hr_arith::ciatti_admissible(8, 0, 4));
/// assert!(!hradon::hr_arith::ciatti_admissible(8, 1, 4));
/// assert!(hradon::hr_arith::ciatti_admissible(3, 1, 5));
/// ```
pub fn ciatti_admissible(s: u64, t: u64, r: u64) -> bool {
    let delta = (s as i64 - t as i64).rem_euclid(8);
    let rm = r % 4;
    match delta {
        0 | 6 => rm == 0 || rm == 3,
        1 | 5 => rm != 2,
        2 | 4 => true,
        3 => rm == 0 || rm == 2,
        7 => rm == 3,
        _ => unreachable!(),
    }
}

/// Maximal s such that an admissible module of signature (s, t) exists at
/// order 2^r, or None when no s >= 0 qualifies.
///
/// Starting from s = rho_t(2^r) - 1, s is decremented until either the
/// triple (s, t, r) is admissible or s reaches the half-order escape value
/// rho_t(2^{r-1}) - 1. Returns None when rho_t(2^r) itself is undefined or
/// the search exhausts s = 0 without a hit.
///
/// # Examples
///
/// ```
/// assert_eq!(hradon::hr_arith::max_signature_s(4, 1).unwrap(), Some(7));
/// assert_eq!(hradon::hr_arith::max_signature_s(3, 4).unwrap(), Some(3));
/// assert_eq!(hradon::hr_arith::max_signature_s(1, 1).unwrap(), Some(0));
/// ```
pub fn max_signature_s(r: u32, t: u32) -> Result<Option<u64>> {
    check_signature_range(r, t, "t")?;
    if r == 0 {
        return Err(Error::Domain("max_signature_s requires r >= 1".into()));
    }
    let Some(p) = rho_t_ext(r, t) else {
        return Ok(None);
    };
    let escape = rho_t_ext(r - 1, t).map(|v| v - 1);
    for s in (0..p).rev() {
        if escape == Some(s) || ciatti_admissible(s, t as u64, r as u64) {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// Maximal t such that an admissible module of signature (s, t) exists at
/// order 2^r, or None when no t >= 0 qualifies.
///
/// Mirror of [`max_signature_s`] driven by sigma_s: t starts at
/// sigma_s(2^r) - 1 and decrements toward the escape value
/// sigma_s(2^{r-1}) - 1. Signatures with t = 0 fall back to the classical
/// bound s <= rho(2^r) - 1, which requires no admissibility.
///
/// # Examples
///
/// ```
/// assert_eq!(hradon::hr_arith::max_signature_t(2, 1).unwrap(), Some(2));
/// assert_eq!(hradon::hr_arith::max_signature_t(3, 4).unwrap(), Some(0));
/// assert_eq!(hradon::hr_arith::max_signature_t(4, 0).unwrap(), Some(8));
/// ```
pub fn max_signature_t(r: u32, s: u32) -> Result<Option<u64>> {
    check_signature_range(r, s, "s")?;
    if r == 0 {
        return Err(Error::Domain("max_signature_t requires r >= 1".into()));
    }
    if let Some(q) = sigma_s_ext(r, s) {
        let escape = sigma_s_ext(r - 1, s).map(|v| v - 1);
        for t in (1..q).rev() {
            if escape == Some(t) || ciatti_admissible(s as u64, t, r as u64) {
                return Ok(Some(t));
            }
        }
    }
    if (s as u64) < rho_pow2(r) {
        Ok(Some(0))
    } else {
        Ok(None)
    }
}
