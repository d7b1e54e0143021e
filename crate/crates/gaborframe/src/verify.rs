//! Independent duality verification by residual sampling.
//!
//! For a window pair `(g, h)` with lattice data `(a, b, M)` the duality
//! identities read
//!
//! ```text
//! g(x - n/b) h(x) + g(x - n/b + a) h(x + a) = b * delta_{n,0}
//! ```
//!
//! for `n = 0, ±1, ..., ±(M-1)` and almost every `x` in `[n/b - a, n/b]`.
//! The constructed duals satisfy them pointwise, so the report samples
//! uniform grids *plus every case breakpoint* of both windows and records
//! the maximum absolute deviation; the only deviation left is the final
//! float rounding of the exact evaluations.

use gaborframe_core::dual::DualWindow;
use gaborframe_core::lattice::LatticeParams;
use gaborframe_core::rat::{insert_sorted_dedup, rat, rat_int, to_f64, Rat};
use gaborframe_core::window::Window;

use serde::Serialize;

/// Residual maxima for one duality index.
#[derive(Debug, Clone, Serialize)]
pub struct BandResidual {
    pub n: i32,
    pub max_abs: f64,
    /// Sample point achieving the maximum.
    pub at: f64,
    pub samples: usize,
}

/// Residual report over all required duality indices.
#[derive(Debug, Clone, Serialize)]
pub struct ResidualReport {
    pub grid: usize,
    pub bands: Vec<BandResidual>,
    pub overall: f64,
}

/// Mismatched lattice data between the window pair.
#[derive(Debug, Clone, thiserror::Error)]
#[error("lattice data mismatch between g and h: {0}")]
pub struct LatticeMismatch(pub String);

/// Sample the duality residuals of a constructed dual.
pub fn duality_residual(
    g: &Window,
    h: &DualWindow,
    params: &LatticeParams,
    grid: usize,
) -> Result<ResidualReport, LatticeMismatch> {
    let hp = h.params();
    if hp.a != params.a || hp.b != params.b || hp.m != params.m {
        return Err(LatticeMismatch(format!(
            "h built for (a={}, b={}, M={}), verification asked for (a={}, b={}, M={})",
            hp.a, hp.b, hp.m, params.a, params.b, params.m
        )));
    }
    if g.alpha() != &hp.alpha {
        return Err(LatticeMismatch(format!(
            "support half-widths differ: g has {}, h was built for {}",
            g.alpha(),
            hp.alpha
        )));
    }
    let mut extra = h.breakpoints();
    for p in g.breakpoints() {
        insert_sorted_dedup(&mut extra, p);
    }
    Ok(residual_with(
        &|x| g.eval(x),
        &|x| h.eval(x),
        &params.a,
        &params.b,
        params.m,
        grid,
        &extra,
    ))
}

/// Residual sampling over arbitrary evaluators (used to verify that the
/// report detects corrupted duals).
///
/// `case_points` are inserted into every band grid, both directly and
/// shifted by `-a` and by `n/b`, so no piecewise-case boundary is missed.
pub fn residual_with(
    g_eval: &dyn Fn(&Rat) -> Rat,
    h_eval: &dyn Fn(&Rat) -> Rat,
    a: &Rat,
    b: &Rat,
    m: u32,
    grid: usize,
    case_points: &[Rat],
) -> ResidualReport {
    let grid = grid.max(2);
    let mut bands = Vec::new();
    let mut overall = 0.0f64;
    let m = m as i64;
    for n in -(m - 1)..=(m - 1) {
        let shift = rat_int(n) / b;
        let lo = &shift - a;
        let hi = shift.clone();
        let mut xs: Vec<Rat> = Vec::with_capacity(grid + 1 + 4 * case_points.len());
        for k in 0..=grid {
            xs.push(&lo + &(&(&hi - &lo) * rat(k as i64, grid as i64)));
        }
        for p in case_points {
            // h(x) and h(x+a) breaks; g(x - n/b) and g(x - n/b + a) breaks.
            for candidate in [
                p.clone(),
                p - a,
                p + &shift,
                p + &shift - a,
            ] {
                if candidate >= lo && candidate <= hi {
                    xs.push(candidate);
                }
            }
        }
        xs.sort();
        xs.dedup();
        let expected = if n == 0 { to_f64(b) } else { 0.0 };
        let mut max_abs = 0.0f64;
        let mut at = to_f64(&lo);
        for x in &xs {
            let t1 = to_f64(&g_eval(&(x - &shift))) * to_f64(&h_eval(x));
            let t2 = to_f64(&g_eval(&(x - &shift + a))) * to_f64(&h_eval(&(x + a)));
            let r = (t1 + t2 - expected).abs();
            if r > max_abs {
                max_abs = r;
                at = to_f64(x);
            }
        }
        if max_abs > overall {
            overall = max_abs;
        }
        bands.push(BandResidual {
            n: n as i32,
            max_abs,
            at,
            samples: xs.len(),
        });
    }
    ResidualReport {
        grid,
        bands,
        overall,
    }
}
