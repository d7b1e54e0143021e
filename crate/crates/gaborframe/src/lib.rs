//! Numerical verification, file formats, and rendering for the exact
//! Gabor frame toolkit in `gaborframe-core`.
//!
//! The core crate decides the frame property and constructs dual windows
//! in exact arithmetic; this crate supplies the two independent numerical
//! checks (duality residuals and a Zak-transform lower frame bound
//! estimator), JSON/CSV/SVG interchange, and the `gaborframe` command-line
//! tool.

pub mod io;
pub mod svg;
pub mod verify;
pub mod zak;

pub use gaborframe_core as core;
pub use verify::{duality_residual, ResidualReport};
pub use zak::zz_lower_bound;
