//! Frame decision engine: the ratio functions `R_n`/`L_n`, exact blow-up
//! classification at window zeros, and the four-condition frame test.
//!
//! For piecewise-polynomial windows the divergence of `|R_n|` (or `|L_n|`)
//! at a zero reduces to an integer comparison of one-sided vanishing
//! orders: the ratio's net order at `z` from one side is
//!
//! ```text
//! ord(g at z) + sum_k ord(g at z + k*step)  -  sum_k ord(g at z + k*step - a)
//! ```
//!
//! with orders taken from the side being approached, and the ratio blows up
//! on a side exactly when that side's net order is positive. A zero counts
//! as a blow-up witness when some approachable side diverges (at the closed
//! domain endpoint only the inward side is approachable). Numerical limits
//! are never sampled.
//!
//! Condition (i) of the frame test is decided finitely. Because the support
//! is exactly `[-alpha, alpha]` and `alpha <= a < 2*alpha`, a pair
//! `(x, x + a)` with `x` in `[-a, 0]` vanishes simultaneously if and only if
//! either the window has a cataloged zero in `[alpha - a, a - alpha]` (its
//! partner then falls at or beyond the support boundary, where the window
//! vanishes anyway), or two cataloged zeros sit at distance exactly `a`.
//! `check_frame` tests exactly these two finite conditions.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::algebraic::ExactReal;
use crate::lattice::{
    classify_params, Classified, LatticeParams, NonPositiveInput, OutOfScopeReason,
};
use crate::rat::{rat_int, Rat};
use crate::window::Window;

/// Evaluation context for the ratio functions.
#[derive(Debug, Clone)]
pub struct RatioContext<'w> {
    pub window: &'w Window,
    pub params: LatticeParams,
    pub step: Rat,
}

impl<'w> RatioContext<'w> {
    pub fn new(window: &'w Window, params: LatticeParams) -> Self {
        let step = params.step();
        RatioContext {
            window,
            params,
            step,
        }
    }

    /// Domain of `R_n`: `]a - alpha, alpha - step*n]`.
    pub fn plus_domain(&self, n: u32) -> (Rat, Rat) {
        let lo = &self.params.a - &self.params.alpha;
        let hi = &self.params.alpha - &(&self.step * rat_int(n as i64));
        (lo, hi)
    }

    /// Domain of `L_n`: `[-alpha + step*n, alpha - a[`.
    pub fn minus_domain(&self, n: u32) -> (Rat, Rat) {
        let lo = -&self.params.alpha + &self.step * rat_int(n as i64);
        let hi = &self.params.alpha - &self.params.a;
        (lo, hi)
    }
}

/// Value of a ratio function at a point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RatioValue {
    Value(Rat),
    /// Some denominator factor vanishes at the point.
    Pole,
}

/// Errors from the ratio evaluators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RatioError {
    IndexOutOfRange { n: u32, kappa: u32 },
    OutsideDomain,
}

impl fmt::Display for RatioError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RatioError::IndexOutOfRange { n, kappa } => {
                write!(f, "ratio index n = {n} outside 1..={kappa}")
            }
            RatioError::OutsideDomain => write!(f, "evaluation point outside the ratio domain"),
        }
    }
}

/// `R_n(y) = (1/g(y)) * prod_{k=1}^{n-1} g(y + k*step - a)/g(y + k*step)`
/// (empty product = 1).
pub fn ratio_r(ctx: &RatioContext<'_>, n: u32, y: &Rat) -> Result<RatioValue, RatioError> {
    if n < 1 || n > ctx.params.kappa {
        return Err(RatioError::IndexOutOfRange {
            n,
            kappa: ctx.params.kappa,
        });
    }
    let (lo, hi) = ctx.plus_domain(n);
    if !(y > &lo && y <= &hi) {
        return Err(RatioError::OutsideDomain);
    }
    let mut num = Rat::from_integer(1.into());
    let mut den = ctx.window.eval(y);
    for k in 1..n {
        let shift = &ctx.step * rat_int(k as i64);
        num *= ctx.window.eval(&(y + &shift - &ctx.params.a));
        den *= ctx.window.eval(&(y + &shift));
    }
    if den.is_zero() {
        return Ok(RatioValue::Pole);
    }
    Ok(RatioValue::Value(num / den))
}

/// `L_n(y) = (1/g(y)) * prod_{k=1}^{n-1} g(y - k*step + a)/g(y - k*step)`.
pub fn ratio_l(ctx: &RatioContext<'_>, n: u32, y: &Rat) -> Result<RatioValue, RatioError> {
    if n < 1 || n > ctx.params.kappa {
        return Err(RatioError::IndexOutOfRange {
            n,
            kappa: ctx.params.kappa,
        });
    }
    let (lo, hi) = ctx.minus_domain(n);
    if !(y >= &lo && y < &hi) {
        return Err(RatioError::OutsideDomain);
    }
    let mut num = Rat::from_integer(1.into());
    let mut den = ctx.window.eval(y);
    for k in 1..n {
        let shift = &ctx.step * rat_int(k as i64);
        num *= ctx.window.eval(&(y - &shift + &ctx.params.a));
        den *= ctx.window.eval(&(y - &shift));
    }
    if den.is_zero() {
        return Ok(RatioValue::Pole);
    }
    Ok(RatioValue::Value(num / den))
}

/// Which ratio family a blow-up witness belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
}

/// A zero at which the ratio function diverges: a candidate for the frame
/// obstruction conditions.
#[derive(Debug, Clone)]
pub struct BlowUpWitness {
    pub side: Side,
    pub n: u32,
    pub zero: ExactReal,
    /// The zero sits at the closed end of the domain interval, where only
    /// the inward limit is taken.
    pub one_sided: bool,
}

/// Errors from [`blows_up`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BlowUpError {
    NotAZero,
    OutsideDomain,
    IndexOutOfRange { n: u32, kappa: u32 },
}

impl fmt::Display for BlowUpError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlowUpError::NotAZero => write!(f, "the point is not a cataloged zero"),
            BlowUpError::OutsideDomain => write!(f, "zero lies outside the witness interval"),
            BlowUpError::IndexOutOfRange { n, kappa } => {
                write!(f, "index n = {n} outside 1..={kappa}")
            }
        }
    }
}

/// Decide whether `|R_n|` (side = Plus) or `|L_n|` (side = Minus) diverges
/// at the cataloged zero `z` by exact order bookkeeping.
pub fn blows_up(
    ctx: &RatioContext<'_>,
    side: Side,
    n: u32,
    z: &ExactReal,
) -> Result<bool, BlowUpError> {
    if n < 1 || n > ctx.params.kappa {
        return Err(BlowUpError::IndexOutOfRange {
            n,
            kappa: ctx.params.kappa,
        });
    }
    if ctx.window.zero_at(z).is_none() {
        return Err(BlowUpError::NotAZero);
    }
    let (lo, hi) = match side {
        Side::Plus => ctx.plus_domain(n),
        Side::Minus => ctx.minus_domain(n),
    };
    let (in_domain, at_closed_end) = match side {
        Side::Plus => (*z > lo && *z <= hi, *z == hi),
        Side::Minus => (*z >= lo && *z < hi, *z == lo),
    };
    if !in_domain {
        return Err(BlowUpError::OutsideDomain);
    }
    // Approachable sides: both for interior points, only the inward one at
    // the closed domain endpoint.
    let sides: &[bool] = if at_closed_end {
        match side {
            Side::Plus => &[true],   // limit from the left
            Side::Minus => &[false], // limit from the right
        }
    } else {
        &[true, false]
    };
    Ok(sides
        .iter()
        .any(|&from_left| net_order(ctx, side, n, z, from_left) > 0))
}

/// Net (denominator minus numerator) vanishing order of the ratio at `z`
/// approached from one side. All probed points are strictly interior to
/// the support for in-domain `z`, so every order is finite.
fn net_order(ctx: &RatioContext<'_>, side: Side, n: u32, z: &ExactReal, from_left: bool) -> i64 {
    let w = ctx.window;
    let mut net: i64 = i64::from(w.vanishing_order(z, from_left));
    for k in 1..n {
        let shift = &ctx.step * rat_int(k as i64);
        let (den_pt, num_pt) = match side {
            Side::Plus => (z.add_rat(&shift), z.add_rat(&(&shift - &ctx.params.a))),
            Side::Minus => (
                z.add_rat(&-shift.clone()),
                z.add_rat(&(&ctx.params.a - &shift)),
            ),
        };
        net += i64::from(w.vanishing_order(&den_pt, from_left));
        net -= i64::from(w.vanishing_order(&num_pt, from_left));
    }
    net
}

/// The four frame-test conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    I,
    II,
    III,
    IV,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::I => write!(f, "i"),
            Condition::II => write!(f, "ii"),
            Condition::III => write!(f, "iii"),
            Condition::IV => write!(f, "iv"),
        }
    }
}

/// Structured account of a condition failure with its offending points.
#[derive(Debug, Clone)]
pub enum Failure {
    /// Both `x` and `x + a` vanish for this `x` in `[-a, 0]`.
    PairedZeros { x: ExactReal, x_plus_a: ExactReal },
    /// A blow-up witness whose shifted point `y + step*n - a` (Plus) or
    /// `y - step*n + a` (Minus) is again a zero.
    ShiftHitsZero {
        witness: BlowUpWitness,
        hit: ExactReal,
    },
    /// Two witnesses whose shifted points collide:
    /// `y+ + step*n+ = y- - step*n- + a`.
    WitnessCollision {
        plus: BlowUpWitness,
        minus: BlowUpWitness,
        point: ExactReal,
    },
}

impl Failure {
    pub fn condition(&self) -> Condition {
        match self {
            Failure::PairedZeros { .. } => Condition::I,
            Failure::ShiftHitsZero { witness, .. } => match witness.side {
                Side::Plus => Condition::II,
                Side::Minus => Condition::III,
            },
            Failure::WitnessCollision { .. } => Condition::IV,
        }
    }
}

/// Overall verdict of the frame test.
#[derive(Debug, Clone)]
pub enum Verdict {
    Frame,
    NotFrame,
    OutOfScope(OutOfScopeReason),
}

/// Decision with per-condition diagnostics.
#[derive(Debug, Clone)]
pub struct FrameDecision {
    pub verdict: Verdict,
    /// Lattice data when the parameters are in scope.
    pub params: Option<LatticeParams>,
    /// All blow-up witnesses found (present for Frame verdicts too).
    pub witnesses: Vec<BlowUpWitness>,
    /// Every condition failure found, sorted by condition.
    pub failures: Vec<Failure>,
    /// Set when the interior-positivity fast path decided the verdict.
    pub positivity_fast_path: bool,
}

impl FrameDecision {
    pub fn failed_condition(&self) -> Option<Condition> {
        self.failures.first().map(|f| f.condition())
    }

    pub fn is_frame(&self) -> bool {
        matches!(self.verdict, Verdict::Frame)
    }
}

/// Decide the frame property of the Gabor system over `(a, b)` generated
/// by `w`, for parameters in the region `alpha <= a < 2*alpha`, `ab < 1`.
pub fn check_frame(w: &Window, a: &Rat, b: &Rat) -> Result<FrameDecision, NonPositiveInput> {
    check_frame_impl(w, a, b, true)
}

/// Same as [`check_frame`] with the interior-positivity fast path disabled;
/// used to audit that the fast path and the general path agree.
pub fn check_frame_general(
    w: &Window,
    a: &Rat,
    b: &Rat,
) -> Result<FrameDecision, NonPositiveInput> {
    check_frame_impl(w, a, b, false)
}

fn check_frame_impl(
    w: &Window,
    a: &Rat,
    b: &Rat,
    allow_fast_path: bool,
) -> Result<FrameDecision, NonPositiveInput> {
    let params = match classify_params(w.alpha(), a, b)? {
        Classified::InScope(p) => p,
        Classified::OutOfScope(reason) => {
            return Ok(FrameDecision {
                verdict: Verdict::OutOfScope(reason),
                params: None,
                witnesses: vec![],
                failures: vec![],
                positivity_fast_path: false,
            });
        }
    };
    if allow_fast_path && w.interior_positive() {
        return Ok(FrameDecision {
            verdict: Verdict::Frame,
            params: Some(params),
            witnesses: vec![],
            failures: vec![],
            positivity_fast_path: true,
        });
    }
    let ctx = RatioContext::new(w, params.clone());
    let mut failures: Vec<Failure> = Vec::new();

    // Condition (i), decided finitely on the zero catalog (see module doc).
    let lo_i = w.alpha() - a; // alpha - a <= 0
    let hi_i = a - w.alpha(); // a - alpha >= 0
    for z in w.zero_catalog() {
        if z.location >= lo_i && z.location <= hi_i {
            failures.push(Failure::PairedZeros {
                x: z.location.clone(),
                x_plus_a: z.location.add_rat(a),
            });
        }
    }
    for z in w.zero_catalog() {
        let shifted = z.location.add_rat(a);
        if w.zero_at(&shifted).is_some() {
            failures.push(Failure::PairedZeros {
                x: z.location.clone(),
                x_plus_a: shifted,
            });
        }
    }

    // Blow-up witnesses for conditions (ii)/(iii); vacuous when kappa = 0.
    let mut witnesses: Vec<BlowUpWitness> = Vec::new();
    for n in 1..=params.kappa {
        let (plo, phi) = ctx.plus_domain(n);
        let (mlo, mhi) = ctx.minus_domain(n);
        for z in w.zero_catalog() {
            if z.location > plo
                && z.location <= phi
                && blows_up(&ctx, Side::Plus, n, &z.location).unwrap_or(false)
            {
                witnesses.push(BlowUpWitness {
                    side: Side::Plus,
                    n,
                    zero: z.location.clone(),
                    one_sided: z.location == phi,
                });
            }
            if z.location >= mlo
                && z.location < mhi
                && blows_up(&ctx, Side::Minus, n, &z.location).unwrap_or(false)
            {
                witnesses.push(BlowUpWitness {
                    side: Side::Minus,
                    n,
                    zero: z.location.clone(),
                    one_sided: z.location == mlo,
                });
            }
        }
    }

    // Conditions (ii)/(iii): the shifted witness point must not be a zero.
    for wit in &witnesses {
        let shift = &ctx.step * rat_int(wit.n as i64);
        let hit = match wit.side {
            Side::Plus => wit.zero.add_rat(&(&shift - a)),
            Side::Minus => wit.zero.add_rat(&(a - &shift)),
        };
        if w.zero_at(&hit).is_some() {
            failures.push(Failure::ShiftHitsZero {
                witness: wit.clone(),
                hit,
            });
        }
    }

    // Condition (iv): shifted plus and minus witness points must differ.
    for wp in witnesses.iter().filter(|w| w.side == Side::Plus) {
        for wm in witnesses.iter().filter(|w| w.side == Side::Minus) {
            let p = wp.zero.add_rat(&(&ctx.step * rat_int(wp.n as i64)));
            let q = wm.zero.add_rat(&(a - &(&ctx.step * rat_int(wm.n as i64))));
            if p == q {
                failures.push(Failure::WitnessCollision {
                    plus: wp.clone(),
                    minus: wm.clone(),
                    point: p,
                });
            }
        }
    }

    failures.sort_by_key(|f| match f.condition() {
        Condition::I => 0u8,
        Condition::II => 1,
        Condition::III => 2,
        Condition::IV => 3,
    });
    let verdict = if failures.is_empty() {
        Verdict::Frame
    } else {
        Verdict::NotFrame
    };
    Ok(FrameDecision {
        verdict,
        params: Some(params),
        witnesses,
        failures,
        positivity_fast_path: false,
    })
}
