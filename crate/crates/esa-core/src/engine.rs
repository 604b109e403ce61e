//! Sequential ladder walk with early stopping, plus the full-aggregation
//! baseline.

use crate::error::EsaError;
use crate::ladder::{CriterionTrace, LadderCriterion, LadderSpec};
use crate::rule::{StopRule, Traversal};
use crate::weights::exp_weights;

/// Outcome of an aggregation run: the evaluated prefix of the ladder, its
/// exponential weights, and the per-model artifacts.
///
/// `stop_index` counts the models actually evaluated (the loop index at
/// termination). For forward traversal it equals the ladder index of the
/// last model visited; `model_indices` carries the 1-based ladder index of
/// each evaluated position for either traversal direction.
#[derive(Debug, Clone)]
pub struct EsaResult<A> {
    pub stop_index: usize,
    pub weights: Vec<f64>,
    pub trace: CriterionTrace,
    pub artifacts: Vec<A>,
    pub model_indices: Vec<usize>,
}

impl<A> EsaResult<A> {
    /// Position (0-based, into `weights`/`artifacts`/`trace`) of the largest
    /// weight; ties break to the earliest evaluated model.
    pub fn max_weight_position(&self) -> usize {
        let mut best = 0usize;
        for (i, &w) in self.weights.iter().enumerate() {
            if w > self.weights[best] {
                best = i;
            }
        }
        best
    }
}

fn finish<A>(
    values: Vec<f64>,
    artifacts: Vec<A>,
    model_indices: Vec<usize>,
) -> Result<EsaResult<A>, EsaError> {
    let weights = exp_weights(&values)?;
    Ok(EsaResult {
        stop_index: values.len(),
        weights,
        trace: CriterionTrace::new(values)?,
        artifacts,
        model_indices,
    })
}

/// Walks the ladder sequentially in traversal order, stopping at the first
/// model whose criterion violates the rule's improvement test against its
/// predecessor (or at the end of the ladder), then aggregates the evaluated
/// prefix with exponential weights.
///
/// The evaluator is invoked exactly `stop_index` times; models beyond the
/// stopping point are never requested.
pub fn run_esa<C: LadderCriterion>(
    evaluator: &mut C,
    ladder: &LadderSpec,
    rule: &StopRule,
) -> Result<EsaResult<C::Artifact>, EsaError> {
    let m = ladder.model_count();
    let mut values = Vec::new();
    let mut artifacts = Vec::new();
    let mut model_indices = Vec::new();

    for position in 1..=m {
        let index = match rule.traversal() {
            Traversal::Forward => position,
            Traversal::Backward => m + 1 - position,
        };
        let (value, artifact) = evaluator.evaluate(index)?;
        if !value.is_finite() {
            return Err(EsaError::NonFiniteCriterion { index, value });
        }
        values.push(value);
        artifacts.push(artifact);
        model_indices.push(index);
        if position >= 2 && rule.should_stop(values[position - 2], value) {
            break;
        }
    }
    finish(values, artifacts, model_indices)
}

/// Evaluates every model in the ladder and aggregates all of them: the
/// full-aggregation baseline. Equivalent to [`run_esa`] whenever the trace
/// never triggers the stopping rule.
pub fn run_full<C: LadderCriterion>(
    evaluator: &mut C,
    ladder: &LadderSpec,
) -> Result<EsaResult<C::Artifact>, EsaError> {
    let m = ladder.model_count();
    let mut values = Vec::with_capacity(m);
    let mut artifacts = Vec::with_capacity(m);
    for index in 1..=m {
        let (value, artifact) = evaluator.evaluate(index)?;
        if !value.is_finite() {
            return Err(EsaError::NonFiniteCriterion { index, value });
        }
        values.push(value);
        artifacts.push(artifact);
    }
    finish(values, artifacts, (1..=m).collect())
}
