use thiserror::Error;

use crate::lie::ValueSpace;

/// Errors produced by the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("operands live on different grids")]
    GridMismatch,
    #[error("degree overflow: {lhs} + {rhs} exceeds dimension {dim}")]
    DegreeOverflow { lhs: usize, rhs: usize, dim: usize },
    #[error("incompatible value spaces {0} and {1}")]
    ValueSpaceMismatch(ValueSpace, ValueSpace),
    #[error("expected a form of degree {expected}, found degree {found}")]
    WrongDegree { expected: usize, found: usize },
    #[error("cannot differentiate a top-degree form (degree {0})")]
    TopDegree(usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error("Riemannian jump is nonzero (max |Γ₀| = {0:e})")]
    NonzeroFrameJump(f64),
    #[error("family endpoints do not match the wall restrictions (max deviation {0:e})")]
    EndpointMismatch(f64),
    #[error("eigensolver failed: {0}")]
    Eigensolver(String),
    #[error("eta extrapolation did not converge: {0}")]
    NonConvergent(String),
    #[error("ambiguous zero modes: {0}")]
    AmbiguousZeroModes(String),
    #[error("matrix dimension {dim} exceeds the configured cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
