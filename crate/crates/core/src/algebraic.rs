//! Exact real points: rationals plus isolated algebraic roots.
//!
//! Zero locations of windows are exact rationals when the piece factors
//! over the rationals and isolated algebraic roots otherwise. Comparisons
//! between shifted zeros (needed by the frame conditions) are decided by
//! enclosure refinement with an exact gcd fallback for equality, so every
//! comparison terminates with the true answer.
//!
//! Values are immutable; refinement happens on local copies, which keeps
//! them freely shareable across threads.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::poly::{LocatedRoot, Poly};
use crate::rat::{midpoint, rat_int, to_f64, Rat};

/// An algebraic real number: the unique root of a square-free polynomial
/// inside an open interval with a strict sign change.
#[derive(Clone)]
pub struct AlgebraicRoot {
    poly: Arc<Poly>,
    lo: Rat,
    hi: Rat,
}

impl AlgebraicRoot {
    pub fn new(poly: Arc<Poly>, lo: Rat, hi: Rat) -> Self {
        debug_assert!(lo < hi);
        debug_assert!(poly.eval(&lo).is_positive() != poly.eval(&hi).is_positive());
        AlgebraicRoot { poly, lo, hi }
    }

    pub fn enclosure(&self) -> (&Rat, &Rat) {
        (&self.lo, &self.hi)
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    /// One bisection step on a local copy.
    fn refined_once(&self) -> RefineStep {
        let m = midpoint(&self.lo, &self.hi);
        let fm = self.poly.eval(&m);
        if fm.is_zero() {
            return RefineStep::Hit(m);
        }
        let fl = self.poly.eval(&self.lo);
        let next = if fl.is_positive() != fm.is_positive() {
            AlgebraicRoot {
                poly: self.poly.clone(),
                lo: self.lo.clone(),
                hi: m,
            }
        } else {
            AlgebraicRoot {
                poly: self.poly.clone(),
                lo: m,
                hi: self.hi.clone(),
            }
        };
        RefineStep::Narrowed(next)
    }

    /// Enclosure of width at most `width` (may collapse to an exact point,
    /// in which case both endpoints are equal).
    pub fn refined_to(&self, width: &Rat) -> (Rat, Rat) {
        let mut cur = self.clone();
        while &cur.hi - &cur.lo > *width {
            match cur.refined_once() {
                RefineStep::Hit(m) => return (m.clone(), m),
                RefineStep::Narrowed(next) => cur = next,
            }
        }
        (cur.lo, cur.hi)
    }
}

enum RefineStep {
    Hit(Rat),
    Narrowed(AlgebraicRoot),
}

impl fmt::Debug for AlgebraicRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "alg({:?} in ]{}, {}[)", self.poly, self.lo, self.hi)
    }
}

/// An exactly represented real number.
#[derive(Clone, Debug)]
pub enum ExactReal {
    Rational(Rat),
    Algebraic(AlgebraicRoot),
}

impl ExactReal {
    pub fn from_located(root: LocatedRoot) -> Self {
        match root {
            LocatedRoot::Rational(r) => ExactReal::Rational(r),
            LocatedRoot::Algebraic { poly, lo, hi } => {
                ExactReal::Algebraic(AlgebraicRoot::new(poly, lo, hi))
            }
        }
    }

    pub fn rational(r: Rat) -> Self {
        ExactReal::Rational(r)
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        match self {
            ExactReal::Rational(r) => Some(r),
            ExactReal::Algebraic(_) => None,
        }
    }

    /// `self + c` for rational `c`.
    pub fn add_rat(&self, c: &Rat) -> ExactReal {
        match self {
            ExactReal::Rational(r) => ExactReal::Rational(r + c),
            ExactReal::Algebraic(a) => {
                // Root of p(x - c) in the shifted interval.
                let shifted = a.poly.shift(&-c.clone());
                ExactReal::Algebraic(AlgebraicRoot::new(
                    Arc::new(shifted),
                    &a.lo + c,
                    &a.hi + c,
                ))
            }
        }
    }

    /// `self * c` for rational `c`.
    pub fn mul_rat(&self, c: &Rat) -> ExactReal {
        if c.is_zero() {
            return ExactReal::Rational(Rat::zero());
        }
        match self {
            ExactReal::Rational(r) => ExactReal::Rational(r * c),
            ExactReal::Algebraic(a) => {
                // Root of q(x) = p(x / c): coefficient i is p_i / c^i.
                let d = a.poly.degree().unwrap();
                let mut coeffs = Vec::with_capacity(d + 1);
                let mut scale = Rat::one();
                for i in 0..=d {
                    coeffs.push(a.poly.coeff(i) * &scale);
                    scale /= c;
                }
                let q = crate::poly::Poly::from_coeffs(coeffs);
                let (mut lo, mut hi) = (&a.lo * c, &a.hi * c);
                if !c.is_positive() {
                    core::mem::swap(&mut lo, &mut hi);
                }
                ExactReal::Algebraic(AlgebraicRoot::new(Arc::new(q), lo, hi))
            }
        }
    }

    /// `self + other`, exactly. Sums of two algebraic values go through a
    /// resultant carrier polynomial and enclosure refinement.
    pub fn add(&self, other: &ExactReal) -> ExactReal {
        match (self, other) {
            (ExactReal::Rational(r), _) => other.add_rat(r),
            (_, ExactReal::Rational(r)) => self.add_rat(r),
            (ExactReal::Algebraic(x), ExactReal::Algebraic(y)) => {
                let carrier = crate::poly::sum_carrier_poly(&x.poly, &y.poly).square_free_part();
                let mut xe = x.clone();
                let mut ye = y.clone();
                loop {
                    let lo = &xe.lo + &ye.lo;
                    let hi = &xe.hi + &ye.hi;
                    let roots = crate::poly::real_roots_in(&carrier, &lo, &hi);
                    if roots.len() == 1 {
                        let root = roots.into_iter().next().unwrap().0;
                        // Exclude boundary coincidences: the sum is strictly
                        // inside ]lo, hi[, so a boundary root means another
                        // root is interfering; refine in that case too.
                        let v = ExactReal::from_located(root);
                        let strict_in = v > lo && v < hi;
                        if strict_in {
                            return v;
                        }
                    }
                    match xe.refined_once() {
                        RefineStep::Hit(m) => return other.add_rat(&m),
                        RefineStep::Narrowed(nx) => xe = nx,
                    }
                    match ye.refined_once() {
                        RefineStep::Hit(m) => return self.add_rat(&m),
                        RefineStep::Narrowed(ny) => ye = ny,
                    }
                }
            }
        }
    }

    /// `self - other`.
    pub fn sub(&self, other: &ExactReal) -> ExactReal {
        self.add(&other.neg())
    }

    /// `-self`.
    pub fn neg(&self) -> ExactReal {
        match self {
            ExactReal::Rational(r) => ExactReal::Rational(-r.clone()),
            ExactReal::Algebraic(a) => ExactReal::Algebraic(AlgebraicRoot::new(
                Arc::new(a.poly.reflect()),
                -a.hi.clone(),
                -a.lo.clone(),
            )),
        }
    }

    /// A rational enclosure `[lo, hi]` containing the value (degenerate for
    /// rationals).
    pub fn enclosure(&self) -> (Rat, Rat) {
        match self {
            ExactReal::Rational(r) => (r.clone(), r.clone()),
            ExactReal::Algebraic(a) => (a.lo.clone(), a.hi.clone()),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExactReal::Rational(r) => to_f64(r),
            ExactReal::Algebraic(a) => {
                let scale = a.hi.abs().max(a.lo.abs()).max(rat_int(1));
                let width = scale / rat_int(1i64 << 56) / rat_int(1i64 << 6);
                let (lo, hi) = a.refined_to(&width);
                to_f64(&midpoint(&lo, &hi))
            }
        }
    }

    fn cmp_with_rat(&self, q: &Rat) -> Ordering {
        match self {
            ExactReal::Rational(r) => r.cmp(q),
            ExactReal::Algebraic(a) => {
                if *q <= a.lo {
                    // The root is strictly inside ]lo, hi[.
                    return Ordering::Greater;
                }
                if *q >= a.hi {
                    return Ordering::Less;
                }
                if a.poly.eval(q).is_zero() {
                    return Ordering::Equal;
                }
                // Refine until q leaves the enclosure.
                let mut cur = a.clone();
                loop {
                    match cur.refined_once() {
                        RefineStep::Hit(m) => return m.cmp(q),
                        RefineStep::Narrowed(next) => cur = next,
                    }
                    if *q <= cur.lo {
                        return Ordering::Greater;
                    }
                    if *q >= cur.hi {
                        return Ordering::Less;
                    }
                }
            }
        }
    }

    fn exact_eq_algebraic(a: &AlgebraicRoot, b: &AlgebraicRoot) -> bool {
        let lo = a.lo.clone().max(b.lo.clone());
        let hi = a.hi.clone().min(b.hi.clone());
        if lo >= hi {
            return false;
        }
        let g = a.poly.gcd(&b.poly);
        if g.degree().unwrap_or(0) == 0 {
            return false;
        }
        // Each value is the unique root of its polynomial inside its own
        // enclosure, so any root of the gcd in the overlap is both of them.
        // (The overlap endpoints are enclosure endpoints of at least one
        // side and therefore not roots.)
        let chain = g.sturm_chain();
        let inside = Poly::count_roots_half_open(&chain, &lo, &hi)
            .saturating_sub(usize::from(g.eval(&hi).is_zero()));
        inside > 0
    }
}

impl PartialEq for ExactReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for ExactReal {}

impl PartialOrd for ExactReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactReal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExactReal::Rational(a), ExactReal::Rational(b)) => a.cmp(b),
            (ExactReal::Rational(a), ExactReal::Algebraic(_)) => {
                other.cmp_with_rat(a).reverse()
            }
            (ExactReal::Algebraic(_), ExactReal::Rational(b)) => self.cmp_with_rat(b),
            (ExactReal::Algebraic(a), ExactReal::Algebraic(b)) => {
                if ExactReal::exact_eq_algebraic(a, b) {
                    return Ordering::Equal;
                }
                // Not equal: refine both until the enclosures separate.
                let mut x = a.clone();
                let mut y = b.clone();
                loop {
                    if x.hi <= y.lo {
                        return Ordering::Less;
                    }
                    if y.hi <= x.lo {
                        return Ordering::Greater;
                    }
                    match x.refined_once() {
                        RefineStep::Hit(m) => {
                            return ExactReal::Rational(m).cmp(other);
                        }
                        RefineStep::Narrowed(nx) => x = nx,
                    }
                    match y.refined_once() {
                        RefineStep::Hit(m) => {
                            return self.cmp(&ExactReal::Rational(m));
                        }
                        RefineStep::Narrowed(ny) => y = ny,
                    }
                }
            }
        }
    }
}

impl PartialEq<Rat> for ExactReal {
    fn eq(&self, other: &Rat) -> bool {
        self.cmp_with_rat(other) == Ordering::Equal
    }
}

impl PartialOrd<Rat> for ExactReal {
    fn partial_cmp(&self, other: &Rat) -> Option<Ordering> {
        Some(self.cmp_with_rat(other))
    }
}

impl fmt::Display for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactReal::Rational(r) => write!(f, "{}", r),
            ExactReal::Algebraic(a) => {
                write!(f, "~{} (root in ]{}, {}[)", self.to_f64(), a.lo, a.hi)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use alloc::vec;

    fn sqrt2() -> ExactReal {
        let p = Arc::new(Poly::from_i64(&[-2, 0, 1]));
        ExactReal::Algebraic(AlgebraicRoot::new(p, rat_int(1), rat_int(2)))
    }

    fn sqrt2_other_enclosure() -> ExactReal {
        let p = Arc::new(Poly::from_i64(&[-2, 0, 1]));
        ExactReal::Algebraic(AlgebraicRoot::new(p, rat(5, 4), rat(3, 2)))
    }

    #[test]
    fn rational_comparisons() {
        let s = sqrt2();
        assert_eq!(s.cmp_with_rat(&rat(7, 5)), Ordering::Greater);
        assert_eq!(s.cmp_with_rat(&rat(3, 2)), Ordering::Less);
        assert!(s > rat(141_421, 100_000));
        assert!(s < rat(141_422, 100_000));
    }

    #[test]
    fn equality_via_gcd() {
        assert_eq!(sqrt2(), sqrt2_other_enclosure());
        // sqrt2 shifted by 1/3 equals the root of p(x - 1/3).
        let t = sqrt2().add_rat(&rat(1, 3));
        let u = sqrt2_other_enclosure().add_rat(&rat(1, 3));
        assert_eq!(t, u);
        assert_ne!(t, sqrt2());
    }

    #[test]
    fn negation_and_order() {
        let s = sqrt2();
        let n = s.neg();
        assert!(n < ExactReal::rational(rat_int(0)));
        assert_eq!(n.neg(), s);
        let vals = vec![s.clone(), n.clone(), ExactReal::rational(rat_int(0))];
        let mut sorted = vals.clone();
        sorted.sort();
        assert_eq!(sorted[0], n);
        assert_eq!(sorted[1], ExactReal::rational(rat_int(0)));
        assert_eq!(sorted[2], s);
    }

    #[test]
    fn f64_projection() {
        let s = sqrt2();
        assert!((s.to_f64() - core::f64::consts::SQRT_2).abs() < 1e-14);
        assert_eq!(ExactReal::rational(rat(1, 4)).to_f64(), 0.25);
    }

    #[test]
    fn sums_and_scalings() {
        let s2 = sqrt2();
        let p3 = Arc::new(Poly::from_i64(&[-3, 0, 1]));
        let s3 = ExactReal::Algebraic(AlgebraicRoot::new(p3, rat_int(1), rat_int(2)));
        // sqrt2 + sqrt3 ~ 3.1462643
        let sum = s2.add(&s3);
        assert!((sum.to_f64() - (2f64.sqrt() + 3f64.sqrt())).abs() < 1e-12);
        // sqrt2 + (-sqrt2) = 0 exactly.
        let zero = s2.add(&s2.neg());
        assert_eq!(zero, ExactReal::rational(rat_int(0)));
        // 3 * sqrt2 compares exactly against sqrt(18) enclosures.
        let three_s2 = s2.mul_rat(&rat_int(3));
        assert!((three_s2.to_f64() - 18f64.sqrt()).abs() < 1e-12);
        let neg = s2.mul_rat(&rat(-1, 2));
        assert!(neg < ExactReal::rational(rat_int(0)));
        assert_eq!(neg.mul_rat(&rat_int(-2)), s2);
        // sub round trip.
        assert_eq!(sum.sub(&s3), s2);
    }

    #[test]
    fn distinct_close_roots_separate() {
        // Roots of (x^2 - 2) and (x^2 - 2000001/1000000) are ~3.5e-7 apart.
        let a = sqrt2();
        let q = Arc::new(Poly::from_coeffs(vec![
            rat(-2_000_001, 1_000_000),
            rat_int(0),
            rat_int(1),
        ]));
        let b = ExactReal::Algebraic(AlgebraicRoot::new(q, rat_int(1), rat_int(2)));
        assert!(a < b);
    }
}
