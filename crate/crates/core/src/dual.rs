//! Construction of a compactly supported dual window.
//!
//! When the frame test succeeds, a dual window `h` with
//! `supp h ⊆ [-aM, aM]` is assembled as a case tree:
//!
//! 1. `h = 0` outside `-(∪_k [k/b, ak+α]) ∪ [-α, α] ∪ ∪_k [k/b, ak+α]`
//!    (k = 1..kappa);
//! 2. `h = b/g` on the central interval `[α-a, a-α]`, where `g` has no
//!    zeros;
//! 3. `h = 0` on closed rational-bounded balls around every zero of `g` in
//!    `]a-α, α]` and `[-α, α-a[`, and around every shifted blow-up point
//!    `y + n*step` / `w - m*step`;
//! 4. `h = b/g` on those balls translated by `∓a`, where `|g| >= delta > 0`
//!    is certified;
//! 5. `h = b/g` on the rest of `]a-α, α]` and `h = 0` on the rest of
//!    `[-α, α-a[`;
//! 6. the bands `[n/b, an+α]` are filled outward by the duality recursion
//!    `h(u) = -g(u-a-n/b) h(u-a) / g(u-n/b)`, assigning the limit value 0
//!    at the isolated points where the denominator vanishes (the zero
//!    balls of step 3 force those limits to be 0), and mirrored on the
//!    negative side.
//!
//! The assignments are arranged so that the duality identities hold
//! pointwise (not just almost everywhere) at every rational point,
//! including case boundaries and the singular points of the recursion; an
//! exact audit re-checks them during construction and aborts rather than
//! return a wrong dual.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::algebraic::ExactReal;
use crate::analysis::{blows_up, check_frame, FrameDecision, RatioContext, Side};
use crate::lattice::LatticeParams;
use crate::rat::{from_f64, insert_sorted_dedup, midpoint, rat, rat_int, to_f64, Rat};
use crate::window::Window;

/// The witness-filtered zero enumerations driving the ball placement.
///
/// `y[0]` holds all zeros in `]a-α, α]`; `y[n]` (n = 1..kappa) the zeros of
/// the `R_n` witness interval at which `|R_n|` blows up. `w` mirrors this
/// on `[-α, α-a[` with `L_m`.
#[derive(Debug, Clone)]
pub struct ZeroSets {
    pub y: Vec<Vec<ExactReal>>,
    pub w: Vec<Vec<ExactReal>>,
}

impl ZeroSets {
    /// Cardinality of `Y_n`.
    pub fn r(&self, n: usize) -> usize {
        self.y[n].len()
    }

    /// Cardinality of `W_m`.
    pub fn l(&self, m: usize) -> usize {
        self.w[m].len()
    }
}

/// A closed interval with rational bounds strictly containing its
/// (possibly algebraic) center.
#[derive(Debug, Clone)]
pub struct Ball {
    pub center: ExactReal,
    pub lo: Rat,
    pub hi: Rat,
}

/// The ball radius, the certified `|g|` bound on the shifted balls, and
/// the ball lists themselves.
#[derive(Debug, Clone)]
pub struct BallSystem {
    pub epsilon: Rat,
    /// Certified rational lower bound for `|g|` on every shifted ball.
    pub delta: Rat,
    /// Balls around the plus-side centers `y + n*step` (value 0).
    pub plus: Vec<Ball>,
    /// Balls around the minus-side centers `w - m*step` (value 0).
    pub minus: Vec<Ball>,
    /// Number of times the seed radius was halved before the feasibility
    /// conditions held.
    pub halvings: u32,
}

/// Construction failures.
#[derive(Debug, Clone)]
pub enum DualError {
    NotAFrame(Box<FrameDecision>),
    /// The feasibility conditions kept failing after the iteration cap;
    /// unreachable when the frame conditions hold.
    EpsilonSearchFailed { halvings: u32 },
    /// Bernstein subdivision failed to certify a positive bound.
    BoundCertificationFailed,
    /// The exact duality audit found a violated identity.
    AuditFailed { band: i32, x: Rat },
}

impl fmt::Display for DualError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DualError::NotAFrame(d) => {
                write!(f, "dual construction requires a frame; got {:?}", d.verdict)
            }
            DualError::EpsilonSearchFailed { halvings } => {
                write!(f, "ball radius search did not stabilize after {halvings} halvings")
            }
            DualError::BoundCertificationFailed => {
                write!(f, "could not certify a positive lower bound for |g|")
            }
            DualError::AuditFailed { band, x } => {
                write!(f, "duality audit failed on band {band} at x = {x}")
            }
        }
    }
}

/// Value of a base case on `[-α, α]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseValue {
    Zero,
    BOverG,
}

/// Flattened case partition of `[-α, α]`: `points` are the sorted case
/// breakpoints, `at_point[i]` the value exactly at `points[i]`, and
/// `between[i]` the value on the open interval `]points[i], points[i+1][`.
#[derive(Debug, Clone)]
pub struct BasePartition {
    pub points: Vec<Rat>,
    pub at_point: Vec<CaseValue>,
    pub between: Vec<CaseValue>,
}

/// A band `[n/b, an+α]` (or its mirror) of the dual's support.
#[derive(Debug, Clone)]
pub struct BandInfo {
    /// Signed index: positive bands sit right of the support core.
    pub n: i32,
    pub lo: Rat,
    pub hi: Rat,
    /// Points where the recursion denominator vanishes (assigned value 0).
    pub singular: Vec<ExactReal>,
}

/// The constructed dual window: an exact case-tree evaluator.
#[derive(Debug, Clone)]
pub struct DualWindow {
    window: Window,
    params: LatticeParams,
    zero_sets: ZeroSets,
    balls: BallSystem,
    base: BasePartition,
    bands: Vec<BandInfo>,
    /// `b / min(delta, certified min |g| over the b/g case closures)`.
    base_bound: Rat,
    /// Max of `|h|` over a dense sample including all case breakpoints.
    sup_sampled: f64,
}

impl DualWindow {
    pub fn params(&self) -> &LatticeParams {
        &self.params
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn zero_sets(&self) -> &ZeroSets {
        &self.zero_sets
    }

    pub fn balls(&self) -> &BallSystem {
        &self.balls
    }

    pub fn base_partition(&self) -> &BasePartition {
        &self.base
    }

    pub fn bands(&self) -> &[BandInfo] {
        &self.bands
    }

    /// Rigorous sup bound for `|h|` on `[-α, α]`.
    pub fn base_bound(&self) -> &Rat {
        &self.base_bound
    }

    /// Densely sampled overall sup of `|h|` (diagnostic).
    pub fn sup_sampled(&self) -> f64 {
        self.sup_sampled
    }

    /// `a * M`, the guaranteed support radius.
    pub fn support_radius(&self) -> Rat {
        &self.params.a * rat_int(self.params.m as i64)
    }

    /// The intervals actually carrying the dual: `[-α, α]` plus the bands.
    pub fn support_intervals(&self) -> Vec<(Rat, Rat)> {
        let mut v: Vec<(Rat, Rat)> = self
            .bands
            .iter()
            .map(|b| (b.lo.clone(), b.hi.clone()))
            .collect();
        v.push((-self.params.alpha.clone(), self.params.alpha.clone()));
        v.sort_by(|x, y| x.0.cmp(&y.0));
        v
    }

    /// All rational case breakpoints (for grid insertion by verifiers).
    pub fn breakpoints(&self) -> Vec<Rat> {
        let mut v = self.base.points.clone();
        for band in &self.bands {
            insert_sorted_dedup(&mut v, band.lo.clone());
            insert_sorted_dedup(&mut v, band.hi.clone());
            for s in &band.singular {
                if let Some(r) = s.as_rational() {
                    insert_sorted_dedup(&mut v, r.clone());
                }
            }
        }
        v
    }

    /// Exact evaluation of the dual at a rational point.
    pub fn eval(&self, x: &Rat) -> Rat {
        let alpha = &self.params.alpha;
        if *x >= -alpha.clone() && *x <= *alpha {
            return self.eval_base(x);
        }
        let (a, b) = (&self.params.a, &self.params.b);
        if *x > *alpha {
            for n in 1..=self.params.kappa {
                let n_rat = rat_int(n as i64);
                let lo = &n_rat / b;
                let hi = &(a * &n_rat) + alpha;
                if *x >= lo && *x <= hi {
                    // h(u) = -g(u - a - n/b) h(u - a) / g(u - n/b),
                    // value 0 at denominator zeros (the recursion limit).
                    let den = self.window.eval(&(x - &lo));
                    if den.is_zero() {
                        return Rat::zero();
                    }
                    let num = self.window.eval(&(x - &lo - a));
                    if num.is_zero() {
                        return Rat::zero();
                    }
                    return -(num * self.eval(&(x - a))) / den;
                }
            }
            return Rat::zero();
        }
        for n in 1..=self.params.kappa {
            let n_rat = rat_int(n as i64);
            let hi = -(&n_rat / b);
            let lo = -(&(a * &n_rat) + alpha);
            if *x >= lo && *x <= hi {
                let den = self.window.eval(&(x - &hi));
                if den.is_zero() {
                    return Rat::zero();
                }
                let num = self.window.eval(&(x - &hi + a));
                if num.is_zero() {
                    return Rat::zero();
                }
                return -(num * self.eval(&(x + a))) / den;
            }
        }
        Rat::zero()
    }

    fn eval_base(&self, x: &Rat) -> Rat {
        let pts = &self.base.points;
        let case = match pts.binary_search(x) {
            Ok(i) => self.base.at_point[i],
            Err(i) => {
                // points[0] = -α <= x <= α = points[last], so i >= 1.
                self.base.between[i - 1]
            }
        };
        match case {
            CaseValue::Zero => Rat::zero(),
            CaseValue::BOverG => &self.params.b / self.window.eval(x),
        }
    }

    /// Float evaluation through the exact path.
    pub fn eval_f64(&self, x: f64) -> f64 {
        match from_f64(x) {
            Some(q) => to_f64(&self.eval(&q)),
            None => 0.0,
        }
    }
}

/// Collect the `Y_n` and `W_m` zero enumerations.
///
/// Intended for windows that passed the frame test at these parameters
/// (the enumeration itself is well-defined regardless, but only then do
/// the sets drive a valid construction); [`construct_dual`] enforces that.
pub fn build_zero_sets(w: &Window, params: &LatticeParams) -> ZeroSets {
    let ctx = RatioContext::new(w, params.clone());
    let alpha = &params.alpha;
    let a = &params.a;
    let kappa = params.kappa as usize;
    let mut y: Vec<Vec<ExactReal>> = Vec::with_capacity(kappa + 1);
    let mut wv: Vec<Vec<ExactReal>> = Vec::with_capacity(kappa + 1);
    let y0_lo = a - alpha;
    let y0_hi = alpha.clone();
    y.push(
        w.zero_catalog()
            .iter()
            .map(|z| z.location.clone())
            .filter(|z| *z > y0_lo && *z <= y0_hi)
            .collect(),
    );
    let w0_lo = -alpha.clone();
    let w0_hi = alpha - a;
    wv.push(
        w.zero_catalog()
            .iter()
            .map(|z| z.location.clone())
            .filter(|z| *z >= w0_lo && *z < w0_hi)
            .collect(),
    );
    for n in 1..=params.kappa {
        let (plo, phi) = ctx.plus_domain(n);
        let (mlo, mhi) = ctx.minus_domain(n);
        let yn = w
            .zero_catalog()
            .iter()
            .map(|z| z.location.clone())
            .filter(|z| {
                *z > plo && *z <= phi && blows_up(&ctx, Side::Plus, n, z).unwrap_or(false)
            })
            .collect();
        let wn = w
            .zero_catalog()
            .iter()
            .map(|z| z.location.clone())
            .filter(|z| {
                *z >= mlo && *z < mhi && blows_up(&ctx, Side::Minus, n, z).unwrap_or(false)
            })
            .collect();
        y.push(yn);
        wv.push(wn);
    }
    ZeroSets { y, w: wv }
}

/// Compare an exact real against `q + offset` for rational `q`, `offset`.
fn cmp_shifted(x: &ExactReal, q: &ExactReal, offset: &Rat) -> core::cmp::Ordering {
    x.cmp(&q.add_rat(offset))
}

/// Choose the ball radius and certify the `|g|` bound.
pub fn choose_epsilon(
    w: &Window,
    zs: &ZeroSets,
    params: &LatticeParams,
) -> Result<BallSystem, DualError> {
    let step = params.step();
    let alpha = &params.alpha;
    let a = &params.a;
    // Shifted centers (deduplicated): plus side y + n*step, minus w - m*step.
    let mut plus_centers: Vec<ExactReal> = Vec::new();
    for (n, ys) in zs.y.iter().enumerate() {
        let shift = &step * rat_int(n as i64);
        for z in ys {
            let c = z.add_rat(&shift);
            if !plus_centers.contains(&c) {
                plus_centers.push(c);
            }
        }
    }
    let mut minus_centers: Vec<ExactReal> = Vec::new();
    for (m, ws) in zs.w.iter().enumerate() {
        let shift = &step * rat_int(m as i64);
        for z in ws {
            let c = z.add_rat(&-shift.clone());
            if !minus_centers.contains(&c) {
                minus_centers.push(c);
            }
        }
    }
    // Seed: half the minimum pairwise distance among the shifted-by-∓a
    // centers and the zero catalog.
    let mut seed_points: Vec<ExactReal> = Vec::new();
    for c in &plus_centers {
        seed_points.push(c.add_rat(&-a.clone()));
    }
    for c in &minus_centers {
        seed_points.push(c.add_rat(a));
    }
    for z in w.zero_catalog() {
        seed_points.push(z.location.clone());
    }
    seed_points.sort();
    seed_points.dedup();
    let mut epsilon = min_gap_lower_bound(&seed_points) / rat_int(2);
    let core_lo = alpha - a; // α - a
    let core_hi = a - alpha; // a - α
    let mut halvings = 0u32;
    loop {
        if feasible(
            w,
            &plus_centers,
            &minus_centers,
            &epsilon,
            a,
            &core_lo,
            &core_hi,
        ) {
            break;
        }
        epsilon /= rat_int(2);
        halvings += 1;
        if halvings > 64 {
            return Err(DualError::EpsilonSearchFailed { halvings });
        }
    }
    // Snap ball bounds to rationals strictly inside the epsilon balls.
    let snap = |c: &ExactReal| -> Ball {
        match c {
            ExactReal::Rational(r) => Ball {
                center: c.clone(),
                lo: r - &epsilon,
                hi: r + &epsilon,
            },
            ExactReal::Algebraic(root) => {
                let half = &epsilon / rat_int(2);
                let (lo_enc, hi_enc) = root.refined_to(&half);
                Ball {
                    center: c.clone(),
                    lo: lo_enc - &half,
                    hi: hi_enc + &half,
                }
            }
        }
    };
    let plus: Vec<Ball> = plus_centers.iter().map(snap).collect();
    let minus: Vec<Ball> = minus_centers.iter().map(snap).collect();
    // Certify |g| >= delta on the shifted (b/g) balls.
    let mut delta: Option<Rat> = None;
    let mut consider = |lo: Rat, hi: Rat| -> Result<(), DualError> {
        let bound = min_abs_on_window(w, &lo, &hi).ok_or(DualError::BoundCertificationFailed)?;
        delta = Some(match delta.take() {
            None => bound,
            Some(d) => d.min(bound),
        });
        Ok(())
    };
    for ball in &plus {
        consider(&ball.lo - a, &ball.hi - a)?;
    }
    for ball in &minus {
        consider(&ball.lo + a, &ball.hi + a)?;
    }
    let delta = delta.unwrap_or_else(|| rat_int(1));
    Ok(BallSystem {
        epsilon,
        delta,
        plus,
        minus,
        halvings,
    })
}

/// Rational lower bound for the smallest gap between consecutive distinct
/// exact points.
fn min_gap_lower_bound(points: &[ExactReal]) -> Rat {
    if points.len() < 2 {
        return rat_int(1);
    }
    let mut width = rat_int(1);
    'refine: loop {
        let mut best: Option<Rat> = None;
        for pair in points.windows(2) {
            let (_, lo_hi) = enclosure_to(&pair[0], &width);
            let (hi_lo, _) = enclosure_to(&pair[1], &width);
            let gap = hi_lo - lo_hi;
            if !gap.is_positive() {
                width /= rat_int(4);
                continue 'refine;
            }
            best = Some(match best.take() {
                None => gap,
                Some(b) => b.min(gap),
            });
        }
        return best.unwrap();
    }
}

fn enclosure_to(x: &ExactReal, width: &Rat) -> (Rat, Rat) {
    match x {
        ExactReal::Rational(r) => (r.clone(), r.clone()),
        ExactReal::Algebraic(a) => a.refined_to(width),
    }
}

/// The three feasibility conditions for a ball radius.
fn feasible(
    w: &Window,
    plus_centers: &[ExactReal],
    minus_centers: &[ExactReal],
    epsilon: &Rat,
    a: &Rat,
    core_lo: &Rat,
    core_hi: &Rat,
) -> bool {
    let two_eps = epsilon + epsilon;
    // (1) plus balls and shifted minus balls stay separated:
    //     |y~ - (w^ + a)| > 2ε for every pair.
    for yp in plus_centers {
        for wm in minus_centers {
            let lo = cmp_shifted(yp, wm, &(a - &two_eps));
            let hi = cmp_shifted(yp, wm, &(a + &two_eps));
            let separated = lo == core::cmp::Ordering::Less || hi == core::cmp::Ordering::Greater;
            if !separated {
                return false;
            }
        }
    }
    // (2) the shifted balls avoid the zero catalog entirely.
    for c in plus_centers
        .iter()
        .map(|c| c.add_rat(&-a.clone()))
        .chain(minus_centers.iter().map(|c| c.add_rat(a)))
    {
        for z in w.zero_catalog() {
            let below = z.location < c.add_rat(&-epsilon.clone());
            let above = z.location > c.add_rat(epsilon);
            if !(below || above) {
                return false;
            }
        }
    }
    // (3) margins: the zero balls stay strictly off the central interval.
    for yp in plus_centers {
        // y~ - ε > a - α
        if *yp <= ExactReal::rational(core_hi + epsilon) {
            return false;
        }
    }
    for wm in minus_centers {
        // w^ + ε < α - a
        if *wm >= ExactReal::rational(core_lo - epsilon) {
            return false;
        }
    }
    true
}

/// Certified positive lower bound of `|g|` on `[lo, hi]` across the
/// window's pieces (clipped to the support).
fn min_abs_on_window(w: &Window, lo: &Rat, hi: &Rat) -> Option<Rat> {
    let mut best: Option<Rat> = None;
    for p in w.pieces() {
        let l = lo.clone().max(p.lo.clone());
        let h = hi.clone().min(p.hi.clone());
        if l > h {
            continue;
        }
        let bound = p.poly.min_abs_lower_bound(&l, &h, 96)?;
        best = Some(match best.take() {
            None => bound,
            Some(b) => b.min(bound),
        });
    }
    best
}

/// Build the dual window for `(w, a, b)`; requires the frame test to pass.
pub fn construct_dual(w: &Window, a: &Rat, b: &Rat) -> Result<DualWindow, DualError> {
    let decision = check_frame(w, a, b).expect("positive parameters");
    if !decision.is_frame() {
        return Err(DualError::NotAFrame(Box::new(decision)));
    }
    let params = decision.params.clone().expect("in-scope frame");
    let zero_sets = build_zero_sets(w, &params);
    let balls = choose_epsilon(w, &zero_sets, &params)?;
    let base = flatten_base(&params, &balls);
    let bands = collect_bands(w, &params);
    let base_bound = certify_base_bound(w, &params, &balls, &base)?;
    let mut dual = DualWindow {
        window: w.clone(),
        params,
        zero_sets,
        balls,
        base,
        bands,
        base_bound,
        sup_sampled: 0.0,
    };
    audit(&dual)?;
    dual.sup_sampled = sample_sup(&dual);
    Ok(dual)
}

fn flatten_base(params: &LatticeParams, balls: &BallSystem) -> BasePartition {
    let alpha = &params.alpha;
    let a = &params.a;
    let neg_alpha = -alpha.clone();
    let core_lo = alpha - a;
    let core_hi = a - alpha;
    let mut points: Vec<Rat> = Vec::new();
    let mut push = |x: Rat| {
        if x >= neg_alpha && x <= *alpha {
            insert_sorted_dedup(&mut points, x);
        }
    };
    push(neg_alpha.clone());
    push(alpha.clone());
    push(core_lo.clone());
    push(core_hi.clone());
    for ball in &balls.plus {
        push(ball.lo.clone());
        push(ball.hi.clone());
        push(&ball.lo - a);
        push(&ball.hi - a);
    }
    for ball in &balls.minus {
        push(ball.lo.clone());
        push(ball.hi.clone());
        push(&ball.lo + a);
        push(&ball.hi + a);
    }
    let value_at = |x: &Rat| -> CaseValue {
        if *x >= core_lo && *x <= core_hi {
            return CaseValue::BOverG;
        }
        for ball in &balls.plus {
            if *x >= ball.lo && *x <= ball.hi {
                return CaseValue::Zero;
            }
        }
        for ball in &balls.minus {
            if *x >= ball.lo && *x <= ball.hi {
                return CaseValue::Zero;
            }
        }
        for ball in &balls.minus {
            if *x >= &ball.lo + a && *x <= &ball.hi + a {
                return CaseValue::BOverG;
            }
        }
        for ball in &balls.plus {
            if *x >= &ball.lo - a && *x <= &ball.hi - a {
                return CaseValue::BOverG;
            }
        }
        if *x > core_hi {
            CaseValue::BOverG
        } else {
            CaseValue::Zero
        }
    };
    let at_point: Vec<CaseValue> = points.iter().map(&value_at).collect();
    let between: Vec<CaseValue> = points
        .windows(2)
        .map(|pair| value_at(&midpoint(&pair[0], &pair[1])))
        .collect();
    BasePartition {
        points,
        at_point,
        between,
    }
}

fn collect_bands(w: &Window, params: &LatticeParams) -> Vec<BandInfo> {
    let alpha = &params.alpha;
    let (a, b) = (&params.a, &params.b);
    let step = params.step();
    let mut bands = Vec::new();
    for n in 1..=params.kappa {
        let n_rat = rat_int(n as i64);
        let lo = &n_rat / b;
        let hi = &(a * &n_rat) + alpha;
        // Singular points: z + n/b for zeros z in [0, α - n*step].
        let z_hi = alpha - &(&step * &n_rat);
        let singular: Vec<ExactReal> = w
            .zero_catalog()
            .iter()
            .map(|z| z.location.clone())
            .filter(|z| *z >= Rat::zero() && *z <= z_hi)
            .map(|z| z.add_rat(&lo))
            .collect();
        bands.push(BandInfo {
            n: n as i32,
            lo,
            hi,
            singular,
        });
        // Mirror band.
        let n_rat = rat_int(n as i64);
        let m_lo = -(&(a * &n_rat) + alpha);
        let m_hi = -(&n_rat / b);
        let z_lo = -alpha.clone() + &(&step * &n_rat);
        let singular: Vec<ExactReal> = w
            .zero_catalog()
            .iter()
            .map(|z| z.location.clone())
            .filter(|z| *z >= z_lo && *z <= Rat::zero())
            .map(|z| z.add_rat(&m_hi))
            .collect();
        bands.push(BandInfo {
            n: -(n as i32),
            lo: m_lo,
            hi: m_hi,
            singular,
        });
    }
    bands.sort_by(|x, y| x.lo.cmp(&y.lo));
    bands
}

fn certify_base_bound(
    w: &Window,
    params: &LatticeParams,
    balls: &BallSystem,
    base: &BasePartition,
) -> Result<Rat, DualError> {
    let mut min_g: Option<Rat> = None;
    let mut consider = |bound: Option<Rat>| -> Result<(), DualError> {
        let bound = bound.ok_or(DualError::BoundCertificationFailed)?;
        min_g = Some(match min_g.take() {
            None => bound,
            Some(m) => m.min(bound),
        });
        Ok(())
    };
    for (i, pair) in base.points.windows(2).enumerate() {
        if base.between[i] == CaseValue::BOverG {
            consider(min_abs_on_window(w, &pair[0], &pair[1]))?;
        }
    }
    for (i, p) in base.points.iter().enumerate() {
        if base.at_point[i] == CaseValue::BOverG {
            let v = w.eval(p).abs();
            consider(if v.is_zero() { None } else { Some(v) })?;
        }
    }
    let min_g = min_g.unwrap_or_else(|| rat_int(1)).min(balls.delta.clone());
    Ok(&params.b / min_g)
}

/// Exact re-check of the duality identities at audit points.
fn audit(dual: &DualWindow) -> Result<(), DualError> {
    const N_AUDIT: i64 = 24;
    let params = &dual.params;
    let (a, b) = (&params.a, &params.b);
    let g = &dual.window;
    let m = params.m as i64;
    for n in -(m - 1)..=(m - 1) {
        let n_rat = rat_int(n);
        let shift = &n_rat / b;
        let lo = &shift - a;
        let hi = shift.clone();
        let mut xs: Vec<Rat> = (0..=N_AUDIT)
            .map(|k| &lo + &(&(&hi - &lo) * rat(k, N_AUDIT)))
            .collect::<Vec<_>>();
        // Include the rational singular points of the band pair and the
        // case breakpoints intersecting the interval.
        for p in dual.breakpoints() {
            if p >= lo && p <= hi {
                xs.push(p.clone());
            }
            let q = &p - a;
            if q >= lo && q <= hi {
                xs.push(q);
            }
        }
        let expected = if n == 0 { b.clone() } else { Rat::zero() };
        for x in xs {
            let lhs = g.eval(&(&x - &shift)) * dual.eval(&x)
                + g.eval(&(&x - &shift + a)) * dual.eval(&(&x + a));
            if lhs != expected {
                return Err(DualError::AuditFailed {
                    band: n as i32,
                    x,
                });
            }
        }
    }
    Ok(())
}

fn sample_sup(dual: &DualWindow) -> f64 {
    let radius = dual.support_radius();
    let lo = -radius.clone();
    let n = 2000i64;
    let mut sup = 0.0f64;
    let width = &radius - &lo;
    for k in 0..=n {
        let x = &lo + &(&width * rat(k, n));
        let v = to_f64(&dual.eval(&x)).abs();
        if v > sup {
            sup = v;
        }
    }
    for p in dual.breakpoints() {
        let v = to_f64(&dual.eval(&p)).abs();
        if v > sup {
            sup = v;
        }
    }
    sup
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::window::{make_bspline, make_piecewise, Piece};
    use crate::Poly;
    use alloc::vec;

    fn example_window() -> Window {
        let poly = &Poly::from_coeffs(vec![rat(81, 100), rat_int(0), rat_int(-1)])
            * &Poly::linear(rat(1, 5), rat_int(-1));
        make_piecewise(
            rat(9, 10),
            vec![Piece {
                lo: rat(-9, 10),
                hi: rat(9, 10),
                poly,
            }],
        )
        .unwrap()
    }

    #[test]
    fn zero_sets_for_worked_example() {
        let w = example_window();
        let d = check_frame(&w, &rat_int(1), &rat(3, 5)).unwrap();
        let zs = build_zero_sets(&w, d.params.as_ref().unwrap());
        assert_eq!(zs.y.len(), 2);
        assert_eq!(zs.y[0], vec![
            ExactReal::rational(rat(1, 5)),
            ExactReal::rational(rat(9, 10)),
        ]);
        assert_eq!(zs.y[1], vec![ExactReal::rational(rat(1, 5))]);
        assert_eq!(zs.w[0], vec![ExactReal::rational(rat(-9, 10))]);
        assert!(zs.w[1].is_empty());
        assert_eq!((zs.r(0), zs.r(1), zs.l(0), zs.l(1)), (2, 1, 1, 0));
    }

    #[test]
    fn worked_example_dual() {
        let w = example_window();
        let h = construct_dual(&w, &rat_int(1), &rat(3, 5)).unwrap();
        // No halving needed: the seed radius already satisfies everything.
        assert_eq!(h.balls().halvings, 0);
        // h = b/g on the central interval: h(0) = (3/5)/(81/500) = 100/27.
        assert_eq!(h.eval(&rat_int(0)), rat(100, 27));
        assert_eq!(h.eval(&rat(1, 10)), rat(3, 5) / w.eval(&rat(1, 10)));
        // h vanishes on the zero balls.
        assert_eq!(h.eval(&rat(1, 5)), rat_int(0));
        assert_eq!(h.eval(&rat(13, 15)), rat_int(0));
        assert_eq!(h.eval(&rat(9, 10)), rat_int(0));
        assert_eq!(h.eval(&rat(-9, 10)), rat_int(0));
        // Support: zero in the gap ]α, 1/b[ = ]9/10, 5/3[ and beyond 19/10.
        assert_eq!(h.eval(&rat(3, 2)), rat_int(0));
        assert_eq!(h.eval(&rat(39, 20)), rat_int(0));
        assert_eq!(h.eval(&rat_int(2)), rat_int(0));
        assert_eq!(h.eval(&rat(-16, 10)), rat_int(0));
        // The band-1 singular point y+ + 1/b = 28/15 takes the limit 0.
        assert_eq!(h.eval(&rat(28, 15)), rat_int(0));
        // Band values satisfy the recursion against the base.
        let x = rat(17, 10);
        let expect = -(w.eval(&(&x - rat(5, 3) - rat_int(1))) * h.eval(&(&x - rat_int(1))))
            / w.eval(&(&x - rat(5, 3)));
        assert_eq!(h.eval(&x), expect);
        // Support radius aM = 2.
        assert_eq!(h.support_radius(), rat_int(2));
        // Bands are ±[5/3, 19/10].
        let bands = h.bands();
        assert_eq!(bands.len(), 2);
        assert_eq!(bands[1].lo, rat(5, 3));
        assert_eq!(bands[1].hi, rat(19, 10));
    }

    #[test]
    fn kappa_zero_dual_has_no_bands() {
        let w = make_piecewise(
            rat(9, 10),
            vec![Piece {
                lo: rat(-9, 10),
                hi: rat(9, 10),
                poly: Poly::from_coeffs(vec![rat(81, 100), rat_int(0), rat_int(-1)]),
            }],
        )
        .unwrap();
        let h = construct_dual(&w, &rat(17, 10), &rat(7, 20)).unwrap();
        assert!(h.bands().is_empty());
        // One halving: the seed radius makes a zero ball touch a b/g ball.
        assert_eq!(h.balls().halvings, 1);
        // h = b/g on [α-a, a-α] = [-4/5, 4/5].
        for x in [rat_int(0), rat(4, 5), rat(-4, 5), rat(1, 3)] {
            assert_eq!(h.eval(&x), rat(7, 20) / w.eval(&x));
        }
        // Support within [-α, α].
        assert_eq!(h.eval(&rat(9, 10)), rat_int(0));
        assert_eq!(h.eval(&rat_int(1)), rat_int(0));
    }

    #[test]
    fn bspline_dual_m6() {
        let w = make_bspline(2).unwrap();
        let h = construct_dual(&w, &rat(6, 5), &rat(7, 10)).unwrap();
        let p = h.params();
        assert_eq!((p.m, p.kappa), (6, 4));
        assert_eq!(h.balls().halvings, 0);
        // Support radius aM = 36/5; actual support ends at κa + α = 29/5.
        assert_eq!(h.support_radius(), rat(36, 5));
        let bands = h.bands();
        assert_eq!(bands.len(), 8);
        assert_eq!(bands.last().unwrap().hi, rat(29, 5));
        // supp h ⊆ [-6, 6] (sharper than aM here).
        for x in [rat(59, 10), rat_int(6), rat(61, 10), rat_int(7)] {
            assert_eq!(h.eval(&x), rat_int(0));
            assert_eq!(h.eval(&-x.clone()), rat_int(0));
        }
        // Vacuous duality zones: for |n| in [kappa+1, M-1], h vanishes
        // on all of [n/b - a, n/b + a].
        for n in 5..=5i64 {
            let lo = rat(10, 7) * rat_int(n) - rat(6, 5);
            let hi = rat(10, 7) * rat_int(n);
            for k in 0..=8 {
                let x = &lo + &(&(&hi - &lo) * rat(k, 8));
                assert_eq!(h.eval(&x), rat_int(0), "x = {x}");
                assert_eq!(h.eval(&(&x + &rat(6, 5))), rat_int(0));
            }
        }
    }

    #[test]
    fn rejects_non_frames() {
        let poly = &(&Poly::from_coeffs(vec![rat(81, 100), rat_int(0), rat_int(-1)])
            * &Poly::linear(rat(1, 5), rat_int(-1)))
            * &Poly::linear(rat(2, 15), rat_int(1));
        let w = make_piecewise(
            rat(9, 10),
            vec![Piece {
                lo: rat(-9, 10),
                hi: rat(9, 10),
                poly,
            }],
        )
        .unwrap();
        match construct_dual(&w, &rat_int(1), &rat(3, 5)) {
            Err(DualError::NotAFrame(_)) => {}
            other => panic!("expected NotAFrame, got {other:?}"),
        }
    }

    #[test]
    fn close_zero_pair_constructs() {
        // Two simple zeros 1/1000 apart force a tight but feasible seed.
        let poly = &(&Poly::from_coeffs(vec![rat(81, 100), rat_int(0), rat_int(-1)])
            * &Poly::linear(rat(1, 5), rat_int(-1)))
            * &Poly::linear(rat(201, 1000), rat_int(-1));
        let w = make_piecewise(
            rat(9, 10),
            vec![Piece {
                lo: rat(-9, 10),
                hi: rat(9, 10),
                poly,
            }],
        )
        .unwrap();
        let h = construct_dual(&w, &rat_int(1), &rat(3, 5)).unwrap();
        assert!(h.balls().epsilon <= rat(1, 2000));
        assert_eq!(h.eval(&rat(1, 5)), rat_int(0));
        assert_eq!(h.eval(&rat(201, 1000)), rat_int(0));
    }

    #[test]
    fn a_equals_alpha_degenerate_core() {
        // a = alpha: the central interval is the single point 0.
        let w = make_bspline(2).unwrap();
        let h = construct_dual(&w, &rat_int(1), &rat(3, 5)).unwrap();
        assert_eq!(h.eval(&rat_int(0)), rat(3, 5) / w.eval(&rat_int(0)));
        assert_eq!(h.params().kappa, 1);
    }

    #[test]
    fn base_bound_dominates_samples() {
        let w = example_window();
        let h = construct_dual(&w, &rat_int(1), &rat(3, 5)).unwrap();
        let bound = to_f64(h.base_bound());
        // Sample |h| on the base interval only.
        for k in -90..=90 {
            let x = rat(k, 100);
            assert!(to_f64(&h.eval(&x)).abs() <= bound + 1e-9);
        }
        assert!(h.sup_sampled() > 0.0);
    }
}
