//! Error types shared across the crate.

use thiserror::Error;

/// Errors surfaced by vector, manifold, optimizer, and problem operations.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum CcmError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("vector must have at least one entry")]
    EmptyVector,

    #[error("real coordinate vector must have even length, got {len}")]
    OddLength { len: usize },

    #[error("non-finite value in {what}")]
    NonFinite { what: &'static str },

    #[error("matrix is not Hermitian: |a[{row}][{col}] - conj(a[{col}][{row}])| = {deviation:e} exceeds tolerance {tolerance:e}")]
    NotHermitian {
        row: usize,
        col: usize,
        deviation: f64,
        tolerance: f64,
    },

    #[error("point is off the manifold at index {index}: modulus {modulus} (must be 1 within {tolerance:e})")]
    OffManifold {
        index: usize,
        modulus: f64,
        tolerance: f64,
    },

    #[error("vector is not tangent at the base point: max normal residual {residual:e} exceeds {tolerance:e}")]
    NotTangent { residual: f64, tolerance: f64 },

    #[error("quadratic form is not numerically real: |imag| = {imag:e} exceeds {tolerance:e}")]
    NonRealCost { imag: f64, tolerance: f64 },

    #[error("coordinate index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("degenerate retraction at index {index}: |x + xi| = {modulus:e} is below the floor {floor:e}")]
    DegenerateRetraction {
        index: usize,
        modulus: f64,
        floor: f64,
    },

    #[error("line search failed after {backtracks} backtracks")]
    LineSearchFailed { backtracks: usize },

    #[error("non-finite cost encountered at iteration {iter}")]
    NonFiniteCost { iter: usize },

    #[error("eigenvalue iteration did not converge after {sweeps} sweeps")]
    EigenNoConvergence { sweeps: usize },

    #[error("instance dimension {n} exceeds the exhaustive-search bound {max}")]
    InstanceTooLarge { n: usize, max: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, CcmError>;
