//! Numerical toolkit for domain walls on flat periodic manifolds.
//!
//! The crate computes characteristic forms (Chern character, Â-genus,
//! their transgressions) on periodic grids, the generalized relative spectral
//! asymmetry of a wall, and spectral indices of discretized domain-wall Dirac
//! operators on the two-torus.
//!
//! Pointwise grid loops are data-parallel when the `parallel` feature is
//! enabled (the default); see [`exec`] for the runtime switch.

pub mod charclasses;
pub mod cylinder;
pub mod dirac;
pub mod error;
pub mod exec;
pub mod forms;
pub mod grid;
pub mod lie;
pub mod linalg;
pub mod presets;
pub mod profile;
pub mod quadrature;
pub mod random;
pub mod rsa;
pub mod wall;

pub use error::{Error, Result};
pub use grid::{Grid, Orientation, WallPlane};
pub use lie::{LieValue, ValueSpace};
pub use num_complex::Complex64 as C64;

/// Conventions used throughout the crate, echoed into reports.
pub mod conventions {
    /// Coefficient of `tr F` in the Chern character: `i / 2π`.
    pub const CHERN_C1: &str = "i/(2*pi)";
    /// Coefficient of `tr F∧F` in the Chern character: `(i/2π)^2 / 2`.
    pub const CHERN_C2: &str = "(i/(2*pi))^2/2";
    /// Degree-4 coefficient of `tr R∧R` in the Â-genus.
    pub const AHAT_A2: &str = "1/(192*pi^2)";
    /// Rank normalization of the Chern character (degree-0 part equals the rank).
    pub const CHERN_RANK: &str = "unnormalized (ch_0 = r)";
    /// Zero modes are excluded from eta and counted separately.
    pub const ZERO_MODES: &str = "excluded from eta, kernel dimension reported";
    /// Wall-plane samples take the value on the s < s0 side.
    pub const WALL_PLANE: &str = "wall plane sampled from the minus side (theta(0) = 0)";
}
