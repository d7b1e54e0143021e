//! Exact-arithmetic analysis of Gabor systems with compactly supported
//! piecewise-polynomial windows.
//!
//! The crate decides the frame property of `{E_mb T_na g}` for windows
//! supported on `[-alpha, alpha]` with translation parameter
//! `alpha <= a < 2*alpha` and `b < 1/a`, constructs a compactly supported
//! dual window when the system is a frame, enumerates the candidate
//! obstruction curves in the `(a, b)` plane, and classifies B-spline
//! lattice points against the known frame-set rules.
//!
//! Everything here is computed in exact rational (or isolated algebraic)
//! arithmetic; floating point appears only in optional output conversions.
//! The crate is `no_std` (it allocates, but performs no IO); serialization,
//! numerical verification and the CLI live in the companion `gaborframe`
//! crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod algebraic;
pub mod analysis;
pub mod atlas;
pub mod dual;
pub mod lattice;
pub mod obstructions;
pub mod poly;
pub mod rat;
pub mod window;

pub use algebraic::ExactReal;
pub use atlas::{classify_bspline_point, reduce_to_strip, RegionLabel};
pub use analysis::{check_frame, FrameDecision, RatioContext, Verdict};
pub use dual::{construct_dual, DualWindow};
pub use lattice::{classify_params, LatticeParams};
pub use obstructions::{candidate_curves, ObstructionCurve};
pub use poly::Poly;
pub use rat::Rat;
pub use window::{make_bspline, make_piecewise, Window};
