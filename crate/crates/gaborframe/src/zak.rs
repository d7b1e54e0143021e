//! Lower frame bound estimation through Zak-domain fiber matrices.
//!
//! For rational density `ab = p/q` (coprime), the Gabor frame operator is
//! unitarily equivalent to a direct integral of `p x p` Hermitian matrices
//! indexed by `(x0, r, theta)` with `x0` in `[0, a/p[`, `r` in `Z_q` and
//! `theta` in `[0, 1[`; the infimum of their smallest eigenvalues is the
//! optimal lower frame bound. This is the classical rational-lattice
//! (Zibulski-Zeevi) criterion in its Walnut-fiberized form:
//!
//! with `d = a/p`, fiber points `xi_s = x0 + (r + q s) d` and the
//! `a`-periodic correlations `G_k(x) = sum_n g(x - n a) g(x - n a - k/b)`,
//! the operator acts on the fiber as the block-Laurent convolution
//! `(S c)_s = (1/b) sum_k G_k(xi_s) c_{s-k}`, whose p-periodic symbol is
//!
//! ```text
//! Phi(theta)_{u,v} = (1/b) sum_j G_{u-v+pj}(xi_u) e^{-2 pi i theta j}.
//! ```
//!
//! The estimator samples `x0` and `theta` on uniform grids (exact rational
//! `x0`, correlations evaluated exactly and rounded once) and returns the
//! smallest eigenvalue seen. On frames it stabilizes at a positive value
//! as the grids refine; on non-frames it decreases toward zero.

use gaborframe_core::rat::{rat, rat_int, to_f64, Rat};
use gaborframe_core::window::Window;

use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

/// Estimate the lower frame bound of `(g, a, b)` on an
/// `x_grid x nu_grid` sample of the fiber parameters.
pub fn zz_lower_bound(g: &Window, a: &Rat, b: &Rat, x_grid: usize, nu_grid: usize) -> f64 {
    zz_lower_bound_fn(&|x| g.eval(x), g.alpha(), a, b, x_grid, nu_grid)
}

/// Evaluator-based variant (the zero function is a valid input here, which
/// the `Window` type cannot represent).
///
/// The fiber sweep runs on the rayon pool with a deterministic minimum
/// reduction, so results are identical run to run.
pub fn zz_lower_bound_fn(
    g_eval: &(dyn Fn(&Rat) -> Rat + Sync),
    alpha: &Rat,
    a: &Rat,
    b: &Rat,
    x_grid: usize,
    nu_grid: usize,
) -> f64 {
    assert!(a.is_positive() && b.is_positive());
    let ab = a * b;
    let p = ab.numer().to_u32().expect("p fits u32") as usize;
    let q = ab.denom().to_u32().expect("q fits u32") as usize;
    let d = a / rat_int(p as i64);
    let inv_b = b.recip();
    // G_k vanishes once |k|/b >= 2*alpha.
    let k_max: i64 = ((alpha + alpha) / &inv_b).floor().to_integer().to_i64().unwrap();
    let x_grid = x_grid.max(1);
    let nu_grid = nu_grid.max(1);
    let thetas: Vec<f64> = (0..nu_grid).map(|t| t as f64 / nu_grid as f64).collect();
    let indices: Vec<usize> = (0..x_grid).collect();
    let min_for_x0 = |i: &usize| -> f64 {
        let x0 = &d * rat(*i as i64, x_grid as i64);
        let mut local_min = f64::INFINITY;
        for r in 0..q {
            // Correlation table m[u][k + k_max] = G_k(xi_u), exact then
            // rounded once.
            let mut m = vec![vec![0.0f64; (2 * k_max + 1) as usize]; p];
            for (u, row) in m.iter_mut().enumerate() {
                let xi = &x0 + &(&d * rat((r + q * u) as i64, 1));
                for k in -k_max..=k_max {
                    let target = &xi - &(&inv_b * rat_int(k));
                    // n-range where both factors can be nonzero.
                    let lo = ((&xi.clone().min(target.clone()) - alpha) / a)
                        .floor()
                        .to_integer();
                    let hi = ((&xi.clone().max(target.clone()) + alpha) / a)
                        .ceil()
                        .to_integer();
                    let mut acc = Rat::zero();
                    let mut n = lo;
                    while n <= hi {
                        let na = a * Rat::from_integer(n.clone());
                        acc += g_eval(&(&xi - &na)) * g_eval(&(&target - &na));
                        n += 1;
                    }
                    row[(k + k_max) as usize] = to_f64(&acc);
                }
            }
            let inv_b_f = 1.0 / to_f64(b);
            for &theta in &thetas {
                let lam = symbol_min_eigenvalue(&m, p, k_max, theta, inv_b_f);
                if lam < local_min {
                    local_min = lam;
                }
            }
        }
        local_min
    };
    let min = indices
        .par_iter()
        .map(min_for_x0)
        .reduce(|| f64::INFINITY, f64::min);
    if min.is_finite() {
        min
    } else {
        0.0
    }
}

/// Smallest eigenvalue of the Hermitian p x p symbol at one `theta`.
fn symbol_min_eigenvalue(
    m: &[Vec<f64>],
    p: usize,
    k_max: i64,
    theta: f64,
    inv_b: f64,
) -> f64 {
    // Complex Hermitian Phi as real/imag parts.
    let mut re = vec![vec![0.0f64; p]; p];
    let mut im = vec![vec![0.0f64; p]; p];
    for u in 0..p {
        for v in 0..p {
            let mut s_re = 0.0;
            let mut s_im = 0.0;
            let mut j = -((k_max + p as i64) / p as i64) - 1;
            while u as i64 - v as i64 + p as i64 * j <= k_max {
                let k = u as i64 - v as i64 + p as i64 * j;
                if k >= -k_max {
                    let g = m[u][(k + k_max) as usize];
                    if g != 0.0 {
                        let phase = -2.0 * std::f64::consts::PI * theta * j as f64;
                        s_re += g * phase.cos();
                        s_im += g * phase.sin();
                    }
                }
                j += 1;
            }
            re[u][v] = inv_b * s_re;
            im[u][v] = inv_b * s_im;
        }
    }
    // Numerically Hermitize (guards float asymmetry; the exact symbol is
    // Hermitian).
    for u in 0..p {
        for v in (u + 1)..p {
            let hr = 0.5 * (re[u][v] + re[v][u]);
            let hi = 0.5 * (im[u][v] - im[v][u]);
            re[u][v] = hr;
            re[v][u] = hr;
            im[u][v] = hi;
            im[v][u] = -hi;
        }
        im[u][u] = 0.0;
    }
    // Real symmetric embedding [[Re, -Im], [Im, Re]].
    let n = 2 * p;
    let mut s = vec![vec![0.0f64; n]; n];
    for u in 0..p {
        for v in 0..p {
            s[u][v] = re[u][v];
            s[u][v + p] = -im[u][v];
            s[u + p][v] = im[u][v];
            s[u + p][v + p] = re[u][v];
        }
    }
    jacobi_min_eigenvalue(&mut s)
}

/// Cyclic Jacobi eigenvalue iteration for a small real symmetric matrix.
#[allow(clippy::needless_range_loop)]
fn jacobi_min_eigenvalue(s: &mut [Vec<f64>]) -> f64 {
    let n = s.len();
    if n == 1 {
        return s[0][0];
    }
    for _sweep in 0..12 {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += s[i][j] * s[i][j];
            }
        }
        if off < 1e-22 {
            break;
        }
        for i in 0..n - 1 {
            for j in (i + 1)..n {
                let apq = s[i][j];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let app = s[i][i];
                let aqq = s[j][j];
                let tau = (aqq - app) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let sn = t * c;
                for k in 0..n {
                    let ski = s[k][i];
                    let skj = s[k][j];
                    s[k][i] = c * ski - sn * skj;
                    s[k][j] = sn * ski + c * skj;
                }
                for k in 0..n {
                    let sik = s[i][k];
                    let sjk = s[j][k];
                    s[i][k] = c * sik - sn * sjk;
                    s[j][k] = sn * sik + c * sjk;
                }
            }
        }
    }
    (0..n).map(|i| s[i][i]).fold(f64::INFINITY, f64::min)
}
