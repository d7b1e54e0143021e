//! Lattice parameter derivation and region gating.
//!
//! For `(alpha, a, b)` in the region `alpha <= a < 2*alpha`, `1/2 <= ab < 1`
//! there is a unique `M >= 2` with `ab` in `[(M-1)/M, M/(M+1)[` (those
//! intervals tile `]0, 1[`), and `kappa` is the largest integer with
//! `(1-ab)*kappa <= b*alpha`. Everything is decided in exact rational
//! arithmetic; points outside the region are reported as out of scope with
//! the violated bound, never guessed.

use core::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::rat::{floor_int, Rat};

/// Derived lattice data for an in-region parameter pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeParams {
    pub alpha: Rat,
    pub a: Rat,
    pub b: Rat,
    pub m: u32,
    pub kappa: u32,
}

impl LatticeParams {
    /// The shift unit `(1 - ab)/b` appearing throughout the analysis.
    pub fn step(&self) -> Rat {
        let ab = &self.a * &self.b;
        (Rat::from_integer(BigInt::from(1)) - ab) / &self.b
    }
}

/// Why a parameter triple is outside the characterized region.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OutOfScopeReason {
    /// `a < alpha`.
    TranslationBelowSupport,
    /// `a >= 2*alpha` (the bound is strict).
    TranslationTwiceSupport,
    /// `ab >= 1`: no frame is possible at this density for these windows.
    DensityAtLeastOne,
    /// `ab < 1/2`, i.e. `M = 1`; the characterization requires `M >= 2`.
    MEqualsOne,
}

impl fmt::Display for OutOfScopeReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OutOfScopeReason::TranslationBelowSupport => write!(f, "a < alpha"),
            OutOfScopeReason::TranslationTwiceSupport => write!(f, "a >= 2*alpha"),
            OutOfScopeReason::DensityAtLeastOne => write!(f, "ab >= 1"),
            OutOfScopeReason::MEqualsOne => {
                write!(f, "ab < 1/2 (M = 1, outside the characterized region)")
            }
        }
    }
}

/// Result of [`classify_params`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classified {
    InScope(LatticeParams),
    OutOfScope(OutOfScopeReason),
}

impl Classified {
    pub fn in_scope(self) -> Option<LatticeParams> {
        match self {
            Classified::InScope(p) => Some(p),
            Classified::OutOfScope(_) => None,
        }
    }
}

/// Invalid (non-positive) inputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonPositiveInput;

impl fmt::Display for NonPositiveInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "alpha, a, b must all be positive")
    }
}

/// Derive `(M, kappa)` exactly, or report which region bound fails.
pub fn classify_params(alpha: &Rat, a: &Rat, b: &Rat) -> Result<Classified, NonPositiveInput> {
    if !alpha.is_positive() || !a.is_positive() || !b.is_positive() {
        return Err(NonPositiveInput);
    }
    if a < alpha {
        return Ok(Classified::OutOfScope(
            OutOfScopeReason::TranslationBelowSupport,
        ));
    }
    let two_alpha = alpha + alpha;
    if *a >= two_alpha {
        return Ok(Classified::OutOfScope(
            OutOfScopeReason::TranslationTwiceSupport,
        ));
    }
    let ab = a * b;
    let one = Rat::from_integer(BigInt::from(1));
    if ab >= one {
        return Ok(Classified::OutOfScope(OutOfScopeReason::DensityAtLeastOne));
    }
    // (M-1)/M <= ab < M/(M+1)  <=>  M = floor(1/(1-ab)).
    let m_big = floor_int(&(one.clone() - &ab).recip());
    let m = m_big.to_u32().expect("M fits in u32 for rational inputs");
    if m < 2 {
        return Ok(Classified::OutOfScope(OutOfScopeReason::MEqualsOne));
    }
    // kappa = floor(b*alpha / (1-ab)); 0 <= kappa <= M-1 holds in-region.
    let kappa_big = floor_int(&((b * alpha) / (one - ab)));
    let kappa = kappa_big.to_u32().expect("kappa fits in u32");
    debug_assert!(kappa < m);
    Ok(Classified::InScope(LatticeParams {
        alpha: alpha.clone(),
        a: a.clone(),
        b: b.clone(),
        m,
        kappa,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn params(alpha: (i64, i64), a: (i64, i64), b: (i64, i64)) -> Classified {
        classify_params(&rat(alpha.0, alpha.1), &rat(a.0, a.1), &rat(b.0, b.1)).unwrap()
    }

    #[test]
    fn worked_example() {
        match params((9, 10), (1, 1), (3, 5)) {
            Classified::InScope(p) => {
                assert_eq!(p.m, 2);
                assert_eq!(p.kappa, 1);
                assert_eq!(p.step(), rat(2, 3));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn derived_fixtures() {
        match params((1, 1), (1, 1), (1, 2)) {
            Classified::InScope(p) => {
                assert_eq!((p.m, p.kappa), (2, 1));
            }
            other => panic!("unexpected {other:?}"),
        }
        match params((9, 10), (17, 10), (7, 20)) {
            Classified::InScope(p) => {
                assert_eq!((p.m, p.kappa), (2, 0));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn out_of_scope_reasons() {
        assert_eq!(
            params((9, 10), (9, 5), (1, 2)),
            Classified::OutOfScope(OutOfScopeReason::TranslationTwiceSupport)
        );
        assert_eq!(
            params((9, 10), (1, 2), (1, 2)),
            Classified::OutOfScope(OutOfScopeReason::TranslationBelowSupport)
        );
        assert_eq!(
            params((1, 1), (3, 2), (2, 3)),
            Classified::OutOfScope(OutOfScopeReason::DensityAtLeastOne)
        );
        assert_eq!(
            params((1, 1), (3, 2), (1, 4)),
            Classified::OutOfScope(OutOfScopeReason::MEqualsOne)
        );
        assert!(classify_params(&rat_int(1), &rat_int(1), &rat_int(0)).is_err());
        assert!(classify_params(&rat_int(-1), &rat_int(1), &rat(1, 2)).is_err());
    }

    #[test]
    fn half_open_band_boundaries() {
        // ab = 1/2 is the closed end of the M = 2 band.
        match params((1, 1), (1, 1), (1, 2)) {
            Classified::InScope(p) => assert_eq!(p.m, 2),
            _ => panic!(),
        }
        // ab = 2/3 = M/(M+1) for M = 2 belongs to the next band.
        match params((1, 1), (1, 1), (2, 3)) {
            Classified::InScope(p) => assert_eq!(p.m, 3),
            _ => panic!(),
        }
        match params((1, 1), (1, 1), (5, 6)) {
            Classified::InScope(p) => assert_eq!(p.m, 6),
            _ => panic!(),
        }
    }
}
