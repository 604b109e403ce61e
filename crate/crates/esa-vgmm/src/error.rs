use esa_core::EsaError;
use thiserror::Error;

/// Errors from mixture priors, coordinate-ascent fitting, and metrics.
#[derive(Debug, Error)]
pub enum VgmmError {
    #[error("{name} must be positive and finite, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    #[error("degrees of freedom {nu} below dimension {dim}")]
    DofBelowDimension { nu: f64, dim: usize },

    #[error("scale matrix is not symmetric positive-definite")]
    ScaleNotSpd,

    #[error("component {component} has a degenerate covariance (Cholesky failed)")]
    DegenerateCovariance { component: usize },

    #[error("evidence lower bound became non-finite")]
    NonFiniteElbo,

    #[error("need at least {required} data points, got {got}")]
    TooFewPoints { required: usize, got: usize },

    #[error("data point {index} has dimension {got}, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        got: usize,
    },

    #[error("data contains a non-finite entry")]
    NonFiniteData,

    #[error("label vectors must have equal length >= {min}: got {a} and {b}")]
    LabelLengthMismatch { a: usize, b: usize, min: usize },

    #[error("component count must be at least 1")]
    ZeroComponents,

    #[error(transparent)]
    Engine(#[from] EsaError),
}
