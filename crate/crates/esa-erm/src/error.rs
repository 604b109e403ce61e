use esa_core::EsaError;
use thiserror::Error;

/// Errors from regression data validation, criterion setup, and evaluation.
#[derive(Debug, Error)]
pub enum ErmError {
    #[error("regression data needs at least 2 rows, got {0}")]
    TooFewRows(usize),

    #[error("row {index} has {got} features, expected {expected}")]
    RaggedRow {
        index: usize,
        expected: usize,
        got: usize,
    },

    #[error("feature/response length mismatch: {rows} rows vs {responses} responses")]
    ResponseMismatch { rows: usize, responses: usize },

    #[error("data contains a non-finite entry")]
    NonFiniteData,

    #[error("neighbor counts must be strictly increasing positive integers")]
    LadderNotIncreasing,

    #[error("neighbor count {k_nbr} exceeds the {n_train} training rows")]
    NeighborCountOutOfRange { k_nbr: usize, n_train: usize },

    #[error(
        "AICc undefined at zero training SSE (an interpolating model; \
         drop neighbor count 1 from the ladder)"
    )]
    ZeroSse,

    #[error("AICc undefined: degrees of freedom {df} too large for n = {n}")]
    DfTooLarge { df: f64, n: usize },

    #[error("{name} must be finite and positive, got {value}")]
    InvalidParameter { name: &'static str, value: f64 },

    #[error("penalty sequence invalid: {0}")]
    InvalidPenalty(&'static str),

    #[error("validation split leaves an empty part (n = {n}, fraction = {fraction})")]
    EmptySplit { n: usize, fraction: f64 },

    #[error(transparent)]
    Engine(#[from] EsaError),
}
