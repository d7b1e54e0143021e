//! Candidate obstruction curves in the `(a, b)` plane.
//!
//! Every obstruction of the frame property for a window with interior
//! zeros `y+`, `y-` lies on a hyperbola `b = n/(y- - y+ + (n+1)a)` (shifted
//! witness hitting a zero, in either orientation) or
//! `b = s/(y- - y+ + (s+1)a)` with `s = n- + n+` (two shifted witnesses
//! colliding). Membership on a curve is necessary, not sufficient: failure
//! additionally requires the blow-up limits, which the `blowup_possible`
//! flag probes at an interior sample point of the curve's domain.
//!
//! On each curve `step * n_eff = (y- - y+) + a`, so all the in-region
//! inequalities (`alpha <= a < 2*alpha`, `1/2 <= ab < 1`, `n <= kappa`,
//! witness-interval membership) become linear in `a` and solve to an exact
//! interval, possibly with algebraic endpoints when the zeros are
//! algebraic.
//!
//! The curve family is infinite (for every index the domain is nonempty as
//! the curves accumulate at `ab = 1`), so enumeration is capped by a
//! caller-supplied maximum index.

use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::algebraic::ExactReal;
use crate::analysis::Side;
use crate::rat::{midpoint, rat_int, Rat};
use crate::window::Window;

/// Which obstruction mechanism generates the curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveKind {
    /// The plus-side shifted witness lands on the zero `y-`
    /// (condition (ii) fails there).
    PlusShift,
    /// The minus-side shifted witness lands on the zero `y+`
    /// (condition (iii) fails there).
    MinusShift,
    /// The two shifted witnesses collide (condition (iv) fails).
    Combined,
}

impl fmt::Display for CurveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveKind::PlusShift => write!(f, "plus-shift"),
            CurveKind::MinusShift => write!(f, "minus-shift"),
            CurveKind::Combined => write!(f, "combined"),
        }
    }
}

/// An interval with exact (possibly algebraic) endpoints.
#[derive(Debug, Clone)]
pub struct ExactInterval {
    pub lo: ExactReal,
    pub lo_closed: bool,
    pub hi: ExactReal,
    pub hi_closed: bool,
}

impl ExactInterval {
    pub fn is_empty(&self) -> bool {
        match self.lo.cmp(&self.hi) {
            core::cmp::Ordering::Greater => true,
            core::cmp::Ordering::Equal => !(self.lo_closed && self.hi_closed),
            core::cmp::Ordering::Less => false,
        }
    }

    pub fn contains(&self, x: &Rat) -> bool {
        let above = match self.lo.partial_cmp(x).unwrap() {
            core::cmp::Ordering::Less => true,
            core::cmp::Ordering::Equal => self.lo_closed,
            core::cmp::Ordering::Greater => false,
        };
        let below = match self.hi.partial_cmp(x).unwrap() {
            core::cmp::Ordering::Greater => true,
            core::cmp::Ordering::Equal => self.hi_closed,
            core::cmp::Ordering::Less => false,
        };
        above && below
    }

    /// A rational point strictly between the endpoints (or the single
    /// point of a degenerate closed interval, when it is rational).
    pub fn sample_rational(&self) -> Option<Rat> {
        if self.is_empty() {
            return None;
        }
        if self.lo == self.hi {
            return self.lo.as_rational().cloned();
        }
        Some(rational_between(&self.lo, &self.hi))
    }
}

/// A rational strictly between two exact reals with `lo < hi`.
fn rational_between(lo: &ExactReal, hi: &ExactReal) -> Rat {
    debug_assert!(lo < hi);
    let mut width = rat_int(1);
    loop {
        let (_, l_hi) = refined_enclosure(lo, &width);
        let (h_lo, _) = refined_enclosure(hi, &width);
        if l_hi < h_lo {
            return midpoint(&l_hi, &h_lo);
        }
        width /= rat_int(2);
    }
}

fn refined_enclosure(x: &ExactReal, width: &Rat) -> (Rat, Rat) {
    match x {
        ExactReal::Rational(r) => (r.clone(), r.clone()),
        ExactReal::Algebraic(a) => a.refined_to(width),
    }
}

/// A candidate obstruction hyperbola `b = n_eff/(delta + (n_eff + 1) a)`.
#[derive(Debug, Clone)]
pub struct ObstructionCurve {
    pub kind: CurveKind,
    pub y_plus: ExactReal,
    pub y_minus: ExactReal,
    /// Plus-side index (`n` for `PlusShift`, `n+` for `Combined`; unused
    /// and set to 0 for `MinusShift`).
    pub n_plus: u32,
    /// Minus-side index, mirroring `n_plus`.
    pub n_minus: u32,
    /// `y_minus - y_plus`.
    pub delta: ExactReal,
    /// Exact `a`-interval on which the curve stays inside the region.
    pub domain: ExactInterval,
    /// Whether the required blow-ups actually hold at an interior sample
    /// point of the domain (an extra necessary ingredient for a genuine
    /// obstruction).
    pub blowup_possible: bool,
}

impl ObstructionCurve {
    /// The effective index in the curve formula.
    pub fn n_eff(&self) -> u32 {
        match self.kind {
            CurveKind::PlusShift => self.n_plus,
            CurveKind::MinusShift => self.n_minus,
            CurveKind::Combined => self.n_plus + self.n_minus,
        }
    }

    /// Exact curve evaluation `b(a)`; algebraic when the zeros are.
    pub fn b_at(&self, a: &Rat) -> Result<ExactReal, OutOfDomain> {
        if !self.domain.contains(a) {
            return Err(OutOfDomain);
        }
        let s = rat_int(self.n_eff() as i64);
        let den = self.delta.add_rat(&(&(&s + rat_int(1)) * a));
        // In-domain denominators are strictly positive.
        Ok(reciprocal_scaled(&den, &s))
    }
}

/// `s / x` for `x != 0`: for algebraic `x`, the root of the reversed
/// (scaled) carrier polynomial inside the transformed enclosure.
fn reciprocal_scaled(x: &ExactReal, s: &Rat) -> ExactReal {
    match x {
        ExactReal::Rational(r) => ExactReal::rational(s / r),
        ExactReal::Algebraic(root) => {
            // If p(x) = sum p_i x^i vanishes at x, then
            // q(t) = sum p_i s^i t^(d-i) vanishes at t = s/x.
            let p = root.poly();
            let d = p.degree().unwrap();
            let mut coeffs = alloc::vec![Rat::zero(); d + 1];
            let mut s_pow: Rat = rat_int(1);
            for i in 0..=d {
                coeffs[d - i] = p.coeff(i) * &s_pow;
                s_pow *= s;
            }
            let q = crate::poly::Poly::from_coeffs(coeffs).square_free_part();
            let (mut l, mut h) = {
                let (lo, hi) = root.enclosure();
                (lo.clone(), hi.clone())
            };
            loop {
                // The enclosure must not straddle zero; in-domain roots are
                // sign-definite, so refinement resolves it.
                if l.is_positive() || h.is_negative() {
                    let mut bounds = [s / &h, s / &l];
                    if bounds[0] > bounds[1] {
                        bounds.swap(0, 1);
                    }
                    let roots = crate::poly::real_roots_in(&q, &bounds[0], &bounds[1]);
                    if roots.len() == 1 {
                        return ExactReal::from_located(roots.into_iter().next().unwrap().0);
                    }
                }
                let width = (&h - &l) / rat_int(2);
                let (nl, nh) = root.refined_to(&width);
                if nl == nh {
                    return ExactReal::rational(s / nl);
                }
                l = nl;
                h = nh;
            }
        }
    }
}

/// Evaluation outside the curve's exact domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OutOfDomain;

impl fmt::Display for OutOfDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a outside the curve domain")
    }
}

struct Bound {
    value: ExactReal,
    closed: bool,
}

/// Enumerate the candidate curves of `w` with indices up to `max_index`.
pub fn candidate_curves(w: &Window, max_index: u32) -> Vec<ObstructionCurve> {
    let alpha = w.alpha().clone();
    let interior: Vec<ExactReal> = w
        .zero_catalog()
        .iter()
        .map(|z| z.location.clone())
        .filter(|loc| {
            *loc > ExactReal::rational(-alpha.clone()) && *loc < ExactReal::rational(alpha.clone())
        })
        .collect();
    let mut out = Vec::new();
    for yp in &interior {
        for ym in &interior {
            let delta = ym.sub(yp);
            for n in 1..=max_index {
                for kind in [CurveKind::PlusShift, CurveKind::MinusShift] {
                    if let Some(c) = build_curve(w, kind, yp, ym, &delta, n, n) {
                        out.push(c);
                    }
                }
            }
            for n_minus in 1..=max_index {
                for n_plus in 1..=max_index {
                    if let Some(c) =
                        build_curve(w, CurveKind::Combined, yp, ym, &delta, n_minus, n_plus)
                    {
                        out.push(c);
                    }
                }
            }
        }
    }
    out
}

fn build_curve(
    w: &Window,
    kind: CurveKind,
    y_plus: &ExactReal,
    y_minus: &ExactReal,
    delta: &ExactReal,
    n_minus: u32,
    n_plus: u32,
) -> Option<ObstructionCurve> {
    let alpha = w.alpha().clone();
    let s: i64 = match kind {
        CurveKind::PlusShift => n_plus as i64,
        CurveKind::MinusShift => n_minus as i64,
        CurveKind::Combined => (n_plus + n_minus) as i64,
    };
    let mut lowers: Vec<Bound> = alloc::vec![
        Bound {
            value: ExactReal::rational(alpha.clone()),
            closed: true,
        },
        // b > 0 (positive denominator): a > -delta/(s+1).
        Bound {
            value: delta.neg().mul_rat(&rat_int(s + 1).recip()),
            closed: false,
        },
        // ab < 1: a > -delta.
        Bound {
            value: delta.neg(),
            closed: false,
        },
    ];
    if s >= 2 {
        // ab >= 1/2: a >= delta/(s-1).
        lowers.push(Bound {
            value: delta.mul_rat(&rat_int(s - 1).recip()),
            closed: true,
        });
    } else if *delta > Rat::zero() {
        // s = 1 forces ab >= 1/2 <=> delta <= 0.
        return None;
    }
    let mut uppers: Vec<Bound> = alloc::vec![Bound {
        value: ExactReal::rational(&alpha + &alpha),
        closed: false,
    }];
    match kind {
        CurveKind::PlusShift => {
            // y+ > a - alpha (witness interval, open end).
            uppers.push(Bound {
                value: y_plus.add_rat(&alpha),
                closed: false,
            });
            // y+ <= alpha - step*n <=> a <= alpha - y-.
            uppers.push(Bound {
                value: y_minus.neg().add_rat(&alpha),
                closed: true,
            });
            // n <= kappa <=> a <= alpha - delta.
            uppers.push(Bound {
                value: delta.neg().add_rat(&alpha),
                closed: true,
            });
        }
        CurveKind::MinusShift => {
            // y- >= -alpha + step*n <=> a <= alpha + y+ (closed).
            uppers.push(Bound {
                value: y_plus.add_rat(&alpha),
                closed: true,
            });
            // y- < alpha - a (open).
            uppers.push(Bound {
                value: y_minus.neg().add_rat(&alpha),
                closed: false,
            });
            uppers.push(Bound {
                value: delta.neg().add_rat(&alpha),
                closed: true,
            });
        }
        CurveKind::Combined => {
            let s_rat = rat_int(s);
            let nm = rat_int(n_minus as i64);
            let np = rat_int(n_plus as i64);
            // y+ > a - alpha.
            uppers.push(Bound {
                value: y_plus.add_rat(&alpha),
                closed: false,
            });
            // y- < alpha - a.
            uppers.push(Bound {
                value: y_minus.neg().add_rat(&alpha),
                closed: false,
            });
            // y+ <= alpha - step*n+ <=> a <= (s*alpha - n-*y+ - n+*y-)/n+.
            let v = y_plus
                .mul_rat(&-nm.clone())
                .add(&y_minus.mul_rat(&-np.clone()))
                .add_rat(&(&s_rat * &alpha))
                .mul_rat(&np.recip());
            uppers.push(Bound {
                value: v,
                closed: true,
            });
            // y- >= -alpha + step*n- <=> a <= (n+*y- + n-*y+ + s*alpha)/n-.
            let v = y_minus
                .mul_rat(&np)
                .add(&y_plus.mul_rat(&nm))
                .add_rat(&(&s_rat * &alpha))
                .mul_rat(&nm.recip());
            uppers.push(Bound {
                value: v,
                closed: true,
            });
            // max(n-, n+) <= kappa <=> a <= s*alpha/max - delta.
            let nmax = rat_int(n_minus.max(n_plus) as i64);
            uppers.push(Bound {
                value: delta.neg().add_rat(&(&(&s_rat * &alpha) / &nmax)),
                closed: true,
            });
        }
    }
    let lo = fold_max(lowers);
    let hi = fold_min(uppers);
    let domain = ExactInterval {
        lo: lo.value,
        lo_closed: lo.closed,
        hi: hi.value,
        hi_closed: hi.closed,
    };
    if domain.is_empty() {
        return None;
    }
    let blowup_possible = probe_blowups(w, kind, y_plus, y_minus, delta, n_minus, n_plus, &domain);
    Some(ObstructionCurve {
        kind,
        y_plus: y_plus.clone(),
        y_minus: y_minus.clone(),
        n_plus: match kind {
            CurveKind::MinusShift => 0,
            _ => n_plus,
        },
        n_minus: match kind {
            CurveKind::PlusShift => 0,
            _ => n_minus,
        },
        delta: delta.clone(),
        domain,
        blowup_possible,
    })
}

fn fold_max(bounds: Vec<Bound>) -> Bound {
    let mut it = bounds.into_iter();
    let mut best = it.next().unwrap();
    for b in it {
        match b.value.cmp(&best.value) {
            core::cmp::Ordering::Greater => best = b,
            // An open bound at the same value is the stricter one.
            core::cmp::Ordering::Equal => best.closed = best.closed && b.closed,
            core::cmp::Ordering::Less => {}
        }
    }
    best
}

fn fold_min(bounds: Vec<Bound>) -> Bound {
    let mut it = bounds.into_iter();
    let mut best = it.next().unwrap();
    for b in it {
        match b.value.cmp(&best.value) {
            core::cmp::Ordering::Less => best = b,
            core::cmp::Ordering::Equal => best.closed = best.closed && b.closed,
            core::cmp::Ordering::Greater => {}
        }
    }
    best
}

/// Probe the blow-up conditions at an interior rational sample of the
/// domain by exact order bookkeeping (defaulting to true for degenerate
/// domains that admit no rational sample).
#[allow(clippy::too_many_arguments)]
fn probe_blowups(
    w: &Window,
    kind: CurveKind,
    y_plus: &ExactReal,
    y_minus: &ExactReal,
    delta: &ExactReal,
    n_minus: u32,
    n_plus: u32,
    domain: &ExactInterval,
) -> bool {
    let Some(a) = domain.sample_rational() else {
        return true;
    };
    let s = match kind {
        CurveKind::PlusShift => n_plus,
        CurveKind::MinusShift => n_minus,
        CurveKind::Combined => n_plus + n_minus,
    };
    // On the curve, step = (delta + a)/s.
    let step = delta.add_rat(&a).mul_rat(&rat_int(s as i64).recip());
    match kind {
        CurveKind::PlusShift => order_blows_up(w, y_plus, n_plus, &step, &a, Side::Plus),
        CurveKind::MinusShift => order_blows_up(w, y_minus, n_minus, &step, &a, Side::Minus),
        CurveKind::Combined => {
            order_blows_up(w, y_plus, n_plus, &step, &a, Side::Plus)
                && order_blows_up(w, y_minus, n_minus, &step, &a, Side::Minus)
        }
    }
}

/// Net-order blow-up test with exact (possibly algebraic) step size.
fn order_blows_up(
    w: &Window,
    z: &ExactReal,
    n: u32,
    step: &ExactReal,
    a: &Rat,
    side: Side,
) -> bool {
    for from_left in [true, false] {
        let mut net: i64 = i64::from(w.vanishing_order(z, from_left));
        for k in 1..n {
            let kstep = step.mul_rat(&rat_int(k as i64));
            let (den_pt, num_pt) = match side {
                Side::Plus => (z.add(&kstep), z.add(&kstep).add_rat(&-a.clone())),
                Side::Minus => (z.sub(&kstep), z.sub(&kstep).add_rat(a)),
            };
            net += i64::from(w.vanishing_order(&den_pt, from_left));
            net -= i64::from(w.vanishing_order(&num_pt, from_left));
        }
        if net > 0 {
            return true;
        }
    }
    false
}
