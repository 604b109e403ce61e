//! Frequentist early-stopped aggregation over empirical-risk ladders,
//! instantiated on k-nearest-neighbor regression.
//!
//! Three interchangeable criteria score the neighbor-count ladder: the
//! corrected Akaike information criterion on training residuals, a
//! penalized training loss, and a sample-splitting validation loss whose
//! exponential weights are exactly `exp(-alpha * validation SSE)`.

mod criteria;
mod data;
mod error;
mod knn;
mod regress;

pub use criteria::{aicc, covering_penalty, mper};
pub use data::{CriterionKind, KnnLadderSpec, RegressionData};
pub use error::ErmError;
pub use knn::{knn_predict, sse};
pub use regress::{esa_regress, full_regress, KnnRun};
