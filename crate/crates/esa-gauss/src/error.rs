use esa_core::EsaError;
use thiserror::Error;

/// Errors from sequence-model configuration and evaluation.
#[derive(Debug, Error)]
pub enum GaussError {
    #[error("{name} must be positive and finite, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    #[error("q ladder must be nonempty, strictly increasing, and contained in [0, 1]")]
    InvalidQLadder,

    #[error("truncation dimension {got} is below the largest model cutoff {required}")]
    TruncationTooSmall { required: usize, got: usize },

    #[error("model index {index} outside ladder of {model_count} models")]
    ModelOutOfRange { index: usize, model_count: usize },

    #[error("vector length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("quadrature grid must have at least {min} points, got {got}")]
    GridTooCoarse { min: usize, got: usize },

    #[error("hyperparameter bounds must satisfy 0 < psi_min <= psi_max, got [{min}, {max}]")]
    InvalidPsiBounds { min: f64, max: f64 },

    #[error("data contains a non-finite entry")]
    NonFiniteData,

    #[error(transparent)]
    Engine(#[from] EsaError),
}
