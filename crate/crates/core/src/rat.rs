//! Arbitrary-precision rational numbers and small helpers shared by the
//! rest of the crate.
//!
//! `Rat` is `num_rational::BigRational`: always stored in lowest terms with
//! a positive denominator, which is exactly the invariant the rest of the
//! crate relies on for exact comparisons.

use alloc::string::String;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational scalar used throughout the crate.
pub type Rat = num_rational::BigRational;

/// Shorthand for a rational from an integer pair. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Largest integer `<= q`, as a `BigInt`.
pub fn floor_int(q: &Rat) -> BigInt {
    q.floor().to_integer()
}

/// Smallest integer `>= q`, as a `BigInt`.
pub fn ceil_int(q: &Rat) -> BigInt {
    q.ceil().to_integer()
}

/// Nearest-ish f64 for reporting. Falls back on the sign of the value if
/// the conversion fails (it cannot for the magnitudes used here).
pub fn to_f64(q: &Rat) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        if q.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Exact rational from an `f64` (every finite float is a dyadic rational).
/// Returns `None` for NaN or infinities.
pub fn from_f64(x: f64) -> Option<Rat> {
    Rat::from_float(x)
}

/// Error from [`parse_rational`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRatError {
    pub input: String,
}

impl fmt::Display for ParseRatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "malformed rational literal `{}`", self.input)
    }
}

/// Parse `p/q`, integer, or decimal literals into an exact rational.
///
/// Decimals convert exactly (`"0.35"` is 7/20, not a float round-trip).
pub fn parse_rational(s: &str) -> Result<Rat, ParseRatError> {
    let err = || ParseRatError {
        input: s.to_string(),
    };
    let t = s.trim();
    if t.is_empty() {
        return Err(err());
    }
    if let Some((num, den)) = t.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| err())?;
        let d: BigInt = den.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((int_part, frac_part)) = t.split_once('.') {
        let (sign, int_digits) = match int_part.strip_prefix('-') {
            Some(rest) => (Sign::Minus, rest),
            None => (Sign::Plus, int_part.strip_prefix('+').unwrap_or(int_part)),
        };
        if !int_digits.chars().all(|c| c.is_ascii_digit())
            || !frac_part.chars().all(|c| c.is_ascii_digit())
            || (int_digits.is_empty() && frac_part.is_empty())
        {
            return Err(err());
        }
        let digits: String = [int_digits, frac_part].concat();
        let mag: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits.parse().map_err(|_| err())?
        };
        let mut den = BigInt::one();
        for _ in 0..frac_part.len() {
            den *= 10;
        }
        let num = if sign == Sign::Minus { -mag } else { mag };
        return Ok(Rat::new(num, den));
    }
    let n: BigInt = t.parse().map_err(|_| err())?;
    Ok(Rat::from_integer(n))
}

/// Canonical `p/q` string (plain integer when the denominator is one).
pub fn format_rational(q: &Rat) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        let mut s = q.numer().to_string();
        s.push('/');
        s.push_str(&q.denom().to_string());
        s
    }
}

/// Midpoint of two rationals.
pub fn midpoint(a: &Rat, b: &Rat) -> Rat {
    (a + b) / rat_int(2)
}

/// The rational with the smallest denominator in the closed interval
/// `[lo, hi]` (ties in denominator resolved by the continued-fraction walk;
/// any one witness suffices for the root-identification use).
pub fn simplest_in_closed(lo: &Rat, hi: &Rat) -> Rat {
    assert!(lo <= hi);
    if lo == hi {
        return lo.clone();
    }
    // An integer in range always has the minimal possible denominator.
    let lo_ceil = ceil_int(lo);
    if Rat::from_integer(lo_ceil.clone()) <= *hi {
        if lo.is_negative() && !hi.is_negative() {
            return Rat::zero();
        }
        if !lo.is_negative() {
            return Rat::from_integer(lo_ceil);
        }
        return Rat::from_integer(floor_int(hi));
    }
    // No integer in range; recurse on the fractional parts.
    let n = floor_int(lo);
    let nf = Rat::from_integer(n.clone());
    let inner = simplest_in_closed(&((hi - &nf).recip()), &((lo - &nf).recip()));
    nf + inner.recip()
}

/// A rational interval with individually open or closed endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: Rat,
    pub lo_closed: bool,
    pub hi: Rat,
    pub hi_closed: bool,
}

impl RatInterval {
    pub fn closed(lo: Rat, hi: Rat) -> Self {
        RatInterval {
            lo,
            lo_closed: true,
            hi,
            hi_closed: true,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi || (self.lo == self.hi && !(self.lo_closed && self.hi_closed))
    }

    pub fn contains(&self, x: &Rat) -> bool {
        let above = *x > self.lo || (self.lo_closed && *x == self.lo);
        let below = *x < self.hi || (self.hi_closed && *x == self.hi);
        above && below
    }

    /// In-place intersection with `[lo, +inf[` or `]lo, +inf[`.
    pub fn clamp_lo(&mut self, lo: Rat, closed: bool) {
        if lo > self.lo || (lo == self.lo && self.lo_closed && !closed) {
            self.lo = lo;
            self.lo_closed = closed;
        }
    }

    /// In-place intersection with `]-inf, hi]` or `]-inf, hi[`.
    pub fn clamp_hi(&mut self, hi: Rat, closed: bool) {
        if hi < self.hi || (hi == self.hi && self.hi_closed && !closed) {
            self.hi = hi;
            self.hi_closed = closed;
        }
    }

    /// A point in the interior (midpoint), or the single shared endpoint of
    /// a degenerate closed interval. `None` for empty intervals.
    pub fn sample(&self) -> Option<Rat> {
        if self.is_empty() {
            return None;
        }
        if self.lo == self.hi {
            return Some(self.lo.clone());
        }
        Some(midpoint(&self.lo, &self.hi))
    }
}

/// Deduplicating insertion keeping the vector sorted; used for breakpoint
/// collections without pulling in a set type.
pub fn insert_sorted_dedup(v: &mut Vec<Rat>, x: Rat) {
    match v.binary_search(&x) {
        Ok(_) => {}
        Err(pos) => v.insert(pos, x),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("9/10").unwrap(), rat(9, 10));
        assert_eq!(parse_rational("-9/10").unwrap(), rat(-9, 10));
        assert_eq!(parse_rational("3").unwrap(), rat_int(3));
        assert_eq!(parse_rational("0.35").unwrap(), rat(7, 20));
        assert_eq!(parse_rational("-1.25").unwrap(), rat(-5, 4));
        assert_eq!(parse_rational("2/-4").unwrap(), rat(-1, 2));
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1.2.3").is_err());
    }

    #[test]
    fn format_round_trip() {
        for s in ["9/10", "-7/3", "4", "0"] {
            let q = parse_rational(s).unwrap();
            assert_eq!(format_rational(&q), s);
        }
    }

    #[test]
    fn simplest_rational_examples() {
        // Minimal denominator in [0.201, 0.24] is 2/9.
        let s = simplest_in_closed(&rat(201, 1000), &rat(24, 100));
        assert_eq!(s, rat(2, 9));
        // Intervals containing an integer pick the integer.
        assert_eq!(simplest_in_closed(&rat(-1, 3), &rat(1, 2)), rat_int(0));
        assert_eq!(simplest_in_closed(&rat(5, 2), &rat(7, 2)), rat_int(3));
        assert_eq!(simplest_in_closed(&rat(-7, 2), &rat(-5, 2)), rat_int(-3));
        // Degenerate interval returns its point.
        assert_eq!(simplest_in_closed(&rat(1, 5), &rat(1, 5)), rat(1, 5));
        // The endpoint itself can be the answer.
        assert_eq!(simplest_in_closed(&rat(1, 5), &rat(21, 100)), rat(1, 5));
    }

    #[test]
    fn interval_ops() {
        let mut i = RatInterval::closed(rat_int(0), rat_int(2));
        i.clamp_lo(rat(1, 2), false);
        i.clamp_hi(rat(3, 2), true);
        assert!(!i.contains(&rat(1, 2)));
        assert!(i.contains(&rat(3, 2)));
        assert!(i.contains(&rat_int(1)));
        assert!(!i.is_empty());
        i.clamp_hi(rat(1, 2), true);
        assert!(i.is_empty());
    }
}
