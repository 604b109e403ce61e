//! Ladder-generic early-stopped aggregation.
//!
//! Candidate models are arranged on a complexity-ordered ladder and scored
//! by a pluggable criterion. [`run_esa`] walks the ladder sequentially,
//! halts at the first model whose criterion stops improving, and combines
//! the evaluated prefix with exponential weights; [`run_full`] is the
//! aggregate-everything baseline, and [`select_best`] the pick-one baseline.
//!
//! The engine never looks inside a model: instantiations implement
//! [`LadderCriterion`], returning a criterion value plus an opaque artifact
//! per model. All types are value-semantic; given a deterministic evaluator,
//! every run is reproducible.

mod engine;
mod error;
mod ladder;
mod rule;
mod weights;

pub use engine::{run_esa, run_full, EsaResult};
pub use error::EsaError;
pub use ladder::{CriterionTrace, LadderCriterion, LadderSpec};
pub use rule::{MarginMode, StopRule, Traversal};
pub use weights::{aggregate_points, exp_weights, select_best};
