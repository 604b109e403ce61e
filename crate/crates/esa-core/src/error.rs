//! Error type shared by the aggregation engine.

use thiserror::Error;

/// Errors produced by ladder validation, criterion evaluation, and weighting.
#[derive(Debug, Error)]
pub enum EsaError {
    /// A ladder must contain at least one model.
    #[error("ladder must contain at least one model")]
    EmptyLadder,

    /// Label list length must match the number of models.
    #[error("ladder has {models} models but {labels} labels")]
    LabelCountMismatch { models: usize, labels: usize },

    /// The promoting parameter must be finite and nonnegative.
    #[error("promoting parameter delta must be finite and >= 0, got {0}")]
    InvalidDelta(f64),

    /// Criterion values must be finite; a NaN or infinity signals a broken
    /// instantiation and is never silently skipped.
    #[error("criterion value for model {index} is not finite ({value})")]
    NonFiniteCriterion { index: usize, value: f64 },

    /// The evaluator failed for a specific model; the ladder index is attached.
    #[error("criterion evaluation failed for model {index}")]
    Evaluation {
        index: usize,
        #[source]
        source: Box<dyn std::error::Error + Send + Sync>,
    },

    /// An operation on criterion values received an empty list.
    #[error("criterion value list is empty")]
    EmptyValues,

    /// Vector arguments disagree in length.
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
}

impl EsaError {
    /// Wraps an instantiation-specific failure, attaching the ladder index at
    /// which it occurred.
    pub fn evaluation<E>(index: usize, source: E) -> Self
    where
        E: std::error::Error + Send + Sync + 'static,
    {
        EsaError::Evaluation {
            index,
            source: Box::new(source),
        }
    }
}
