//! Ladder description, recorded criterion traces, and the evaluator trait.

use crate::error::EsaError;

/// An ordered ladder of candidate models, indexed `1..=model_count`.
///
/// Index 1 is the simplest model; complexity grows with the index. The
/// engine never interprets the models themselves, only their count and
/// optional display labels.
#[derive(Debug, Clone)]
pub struct LadderSpec {
    model_count: usize,
    labels: Option<Vec<String>>,
}

impl LadderSpec {
    /// Creates a ladder of `model_count` unlabeled models.
    pub fn new(model_count: usize) -> Result<Self, EsaError> {
        if model_count == 0 {
            return Err(EsaError::EmptyLadder);
        }
        Ok(LadderSpec {
            model_count,
            labels: None,
        })
    }

    /// Creates a ladder with one human-readable label per model.
    pub fn with_labels(labels: Vec<String>) -> Result<Self, EsaError> {
        if labels.is_empty() {
            return Err(EsaError::EmptyLadder);
        }
        Ok(LadderSpec {
            model_count: labels.len(),
            labels: Some(labels),
        })
    }

    pub fn model_count(&self) -> usize {
        self.model_count
    }

    /// Label of model `index` (1-based), if labels were supplied.
    pub fn label(&self, index: usize) -> Option<&str> {
        self.labels
            .as_ref()
            .and_then(|ls| ls.get(index.checked_sub(1)?))
            .map(String::as_str)
    }
}

/// The sequence of criterion values recorded while walking a ladder.
///
/// Holds the prefix actually evaluated, in evaluation order. Every value is
/// finite and the trace is never empty.
#[derive(Debug, Clone, PartialEq)]
pub struct CriterionTrace {
    values: Vec<f64>,
}

impl CriterionTrace {
    /// Validates and wraps a list of criterion values.
    pub fn new(values: Vec<f64>) -> Result<Self, EsaError> {
        if values.is_empty() {
            return Err(EsaError::EmptyValues);
        }
        for (i, &v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(EsaError::NonFiniteCriterion {
                    index: i + 1,
                    value: v,
                });
            }
        }
        Ok(CriterionTrace { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// A pluggable criterion evaluator: maps a 1-based model index to a
/// criterion value plus an opaque fitted artifact.
///
/// This is the extension point every instantiation implements. Evaluation is
/// allowed to be expensive; the engine calls it lazily, exactly once per
/// visited model, in traversal order.
pub trait LadderCriterion {
    /// Whatever the instantiation wants to keep per fitted model (posterior
    /// parameters, predictions, ...). Opaque to the engine.
    type Artifact;

    /// Fits model `index` (1-based) and returns its criterion value and
    /// artifact. Implementations should wrap their own failures with
    /// [`EsaError::evaluation`].
    fn evaluate(&mut self, index: usize) -> Result<(f64, Self::Artifact), EsaError>;
}

impl<A, F> LadderCriterion for F
where
    F: FnMut(usize) -> Result<(f64, A), EsaError>,
{
    type Artifact = A;

    fn evaluate(&mut self, index: usize) -> Result<(f64, A), EsaError> {
        self(index)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ladder_rejects_zero_models() {
        assert!(matches!(LadderSpec::new(0), Err(EsaError::EmptyLadder)));
    }

    #[test]
    fn ladder_labels_are_one_based() {
        let ladder = LadderSpec::with_labels(vec!["a".into(), "b".into()]).unwrap();
        assert_eq!(ladder.model_count(), 2);
        assert_eq!(ladder.label(1), Some("a"));
        assert_eq!(ladder.label(2), Some("b"));
        assert_eq!(ladder.label(0), None);
        assert_eq!(ladder.label(3), None);
    }

    #[test]
    fn trace_rejects_non_finite_values() {
        let err = CriterionTrace::new(vec![1.0, f64::NAN]).unwrap_err();
        assert!(matches!(err, EsaError::NonFiniteCriterion { index: 2, .. }));
        assert!(matches!(
            CriterionTrace::new(vec![]),
            Err(EsaError::EmptyValues)
        ));
    }
}
