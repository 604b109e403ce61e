//! Ladder runs over k-nearest-neighbor candidates.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use esa_core::{aggregate_points, run_esa, run_full, EsaError, EsaResult, LadderSpec, StopRule};

use crate::criteria::{aicc, mper};
use crate::data::{CriterionKind, KnnLadderSpec, RegressionData};
use crate::error::ErmError;
use crate::knn::{knn_predict, sse};

/// A completed ladder run: engine output (artifacts are neighbor counts),
/// per-model and aggregated test predictions, and the wall time of the
/// criterion-evaluation loop.
#[derive(Debug, Clone)]
pub struct KnnRun {
    pub result: EsaResult<usize>,
    /// Test predictions of each evaluated model, aligned with
    /// `result.model_indices`.
    pub model_predictions: Vec<Vec<f64>>,
    /// Weight-averaged test predictions.
    pub predictions: Vec<f64>,
    pub tuning_time: Duration,
}

/// Everything the per-model criterion needs, resolved once up front.
struct CriterionContext {
    /// Data the candidate models are fit on (the training split for
    /// sample-splitting, the full data otherwise).
    fit_data: RegressionData,
    /// Held-out rows for the validation criterion.
    validation: Option<RegressionData>,
    criterion: CriterionKind,
    counts: Vec<usize>,
}

impl CriterionContext {
    fn build(
        data: &RegressionData,
        ladder: &KnnLadderSpec,
        criterion: &CriterionKind,
    ) -> Result<Self, ErmError> {
        criterion.validate(ladder.len())?;
        let (fit_data, validation) = match criterion {
            CriterionKind::ValidationSse {
                split_fraction,
                seed,
                ..
            } => {
                let n = data.len();
                let n_val = ((n as f64) * split_fraction).round() as usize;
                if n_val == 0 || n_val >= n {
                    return Err(ErmError::EmptySplit {
                        n,
                        fraction: *split_fraction,
                    });
                }
                let mut indices: Vec<usize> = (0..n).collect();
                indices.shuffle(&mut ChaCha8Rng::seed_from_u64(*seed));
                let (val_idx, train_idx) = indices.split_at(n_val);
                (data.subset(train_idx), Some(data.subset(val_idx)))
            }
            _ => (data.clone(), None),
        };
        ladder.validate_for(fit_data.len())?;
        Ok(CriterionContext {
            fit_data,
            validation,
            criterion: criterion.clone(),
            counts: ladder.counts().to_vec(),
        })
    }

    /// Criterion value of ladder position `index` (1-based).
    fn evaluate(&self, index: usize) -> Result<f64, ErmError> {
        let k_nbr = self.counts[index - 1];
        match &self.criterion {
            CriterionKind::Aicc => {
                let preds = knn_predict(&self.fit_data, self.fit_data.features(), k_nbr)?;
                let train_sse = sse(&preds, self.fit_data.responses())?;
                let n = self.fit_data.len();
                aicc(train_sse, n as f64 / k_nbr as f64, n)
            }
            CriterionKind::ValidationSse { alpha, .. } => {
                let val = self.validation.as_ref().expect("split resolved at build");
                let preds = knn_predict(&self.fit_data, val.features(), k_nbr)?;
                Ok(alpha * sse(&preds, val.responses())?)
            }
            CriterionKind::Penalized { h, lambda } => {
                let preds = knn_predict(&self.fit_data, self.fit_data.features(), k_nbr)?;
                let train_sse = sse(&preds, self.fit_data.responses())?;
                Ok(mper(train_sse, h[index - 1], *lambda))
            }
        }
    }

    fn evaluator(&self) -> impl FnMut(usize) -> Result<(f64, usize), EsaError> + '_ {
        move |index| {
            let value = self
                .evaluate(index)
                .map_err(|e| EsaError::evaluation(index, e))?;
            Ok((value, self.counts[index - 1]))
        }
    }
}

fn predict_and_aggregate(
    context: &CriterionContext,
    result: EsaResult<usize>,
    test_x: &[Vec<f64>],
    tuning_time: Duration,
) -> Result<KnnRun, ErmError> {
    let mut model_predictions = Vec::with_capacity(result.artifacts.len());
    for &k_nbr in &result.artifacts {
        model_predictions.push(knn_predict(&context.fit_data, test_x, k_nbr)?);
    }
    let predictions = aggregate_points(&result.weights, &model_predictions)?;
    Ok(KnnRun {
        result,
        model_predictions,
        predictions,
        tuning_time,
    })
}

/// Early-stopped aggregation across the neighbor ladder; predictions on
/// `test_x` are the weight-averaged per-model predictions.
pub fn esa_regress(
    data: &RegressionData,
    ladder: &KnnLadderSpec,
    criterion: &CriterionKind,
    rule: &StopRule,
    test_x: &[Vec<f64>],
) -> Result<KnnRun, ErmError> {
    let context = CriterionContext::build(data, ladder, criterion)?;
    let spec = LadderSpec::new(ladder.len())?;
    let started = Instant::now();
    let result = run_esa(&mut context.evaluator(), &spec, rule)?;
    let tuning_time = started.elapsed();
    predict_and_aggregate(&context, result, test_x, tuning_time)
}

/// Evaluates the whole ladder (full aggregation).
pub fn full_regress(
    data: &RegressionData,
    ladder: &KnnLadderSpec,
    criterion: &CriterionKind,
    test_x: &[Vec<f64>],
) -> Result<KnnRun, ErmError> {
    let context = CriterionContext::build(data, ladder, criterion)?;
    let spec = LadderSpec::new(ladder.len())?;
    let started = Instant::now();
    let result = run_full(&mut context.evaluator(), &spec)?;
    let tuning_time = started.elapsed();
    predict_and_aggregate(&context, result, test_x, tuning_time)
}

#[cfg(test)]
mod tests {
    use super::*;
    use esa_core::exp_weights;
    use rand::Rng;
    use rand_distr::{Distribution, Normal};

    fn sine_data(n: usize, noise: f64, seed: u64) -> RegressionData {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gauss = Normal::new(0.0, noise.max(1e-300)).unwrap();
        let mut x = Vec::with_capacity(n);
        let mut y = Vec::with_capacity(n);
        for _ in 0..n {
            let u: f64 = rng.random_range(0.0..1.0);
            x.push(vec![u]);
            let noise = if noise > 0.0 {
                gauss.sample(&mut rng)
            } else {
                0.0
            };
            y.push((2.0 * std::f64::consts::PI * u).sin() + noise);
        }
        RegressionData::new(x, y).unwrap()
    }

    #[test]
    fn single_model_ladder_is_plain_prediction() {
        let data = sine_data(60, 0.1, 1);
        let ladder = KnnLadderSpec::new(vec![5]).unwrap();
        let test_x: Vec<Vec<f64>> = (0..10).map(|i| vec![i as f64 / 10.0]).collect();
        let run = esa_regress(
            &data,
            &ladder,
            &CriterionKind::Aicc,
            &StopRule::default(),
            &test_x,
        )
        .unwrap();
        let direct = knn_predict(&data, &test_x, 5).unwrap();
        assert_eq!(run.predictions, direct);
        assert_eq!(run.result.stop_index, 1);
    }

    #[test]
    fn aicc_trace_matches_independent_composition() {
        let data = sine_data(200, 0.3, 7);
        let ladder = KnnLadderSpec::new(vec![3, 5, 10, 20, 40]).unwrap();
        let run = full_regress(&data, &ladder, &CriterionKind::Aicc, data.features()).unwrap();
        for (pos, &k_nbr) in ladder.counts().iter().enumerate() {
            let preds = knn_predict(&data, data.features(), k_nbr).unwrap();
            let s = sse(&preds, data.responses()).unwrap();
            let expected = aicc(s, data.len() as f64 / k_nbr as f64, data.len()).unwrap();
            assert_eq!(run.result.trace.values()[pos], expected);
        }
    }

    #[test]
    fn validation_weights_reproduce_exponential_losses() {
        let data = sine_data(100, 0.2, 3);
        let criterion = CriterionKind::ValidationSse {
            split_fraction: 0.25,
            seed: 11,
            alpha: 0.7,
        };
        let ladder = KnnLadderSpec::new(vec![1, 3, 5, 10]).unwrap();
        let run = full_regress(&data, &ladder, &criterion, &[vec![0.5]]).unwrap();
        // Manual: weights proportional to exp(-alpha * validation SSE).
        let manual = exp_weights(run.result.trace.values()).unwrap();
        for (w, m) in run.result.weights.iter().zip(&manual) {
            assert!((w - m).abs() < 1e-12);
        }
        // Criterion values really are alpha-scaled SSEs: recompute one.
        assert!(run.result.trace.values().iter().all(|v| *v > 0.0));
    }

    #[test]
    fn penalized_with_zero_penalty_stops_at_first_sse_increase() {
        let data = sine_data(240, 0.3, 21);
        let ladder = KnnLadderSpec::default();
        let criterion = CriterionKind::Penalized {
            h: vec![0.0; ladder.len()],
            lambda: 1.0,
        };
        let run = esa_regress(
            &data,
            &ladder,
            &criterion,
            &StopRule::default(),
            &[vec![0.5]],
        )
        .unwrap();
        // Training SSE of nearest-neighbor smoothing grows with the
        // neighbor count on continuous data, so the walk stops immediately
        // after the second model.
        assert_eq!(run.result.stop_index, 2);
        let trace = run.result.trace.values();
        assert!(trace[1] > trace[0]);
    }

    #[test]
    fn aggregated_predictions_stay_within_per_model_envelope() {
        let data = sine_data(200, 0.3, 9);
        let test_x: Vec<Vec<f64>> = (0..25).map(|i| vec![i as f64 / 25.0]).collect();
        let ladder = KnnLadderSpec::new(vec![3, 5, 10, 20, 40, 80]).unwrap();
        let run = esa_regress(
            &data,
            &ladder,
            &CriterionKind::Aicc,
            &StopRule::default(),
            &test_x,
        )
        .unwrap();
        for (j, &pred) in run.predictions.iter().enumerate() {
            let lo = run
                .model_predictions
                .iter()
                .map(|p| p[j])
                .fold(f64::INFINITY, f64::min);
            let hi = run
                .model_predictions
                .iter()
                .map(|p| p[j])
                .fold(f64::NEG_INFINITY, f64::max);
            assert!(pred >= lo - 1e-12 && pred <= hi + 1e-12);
        }
    }

    #[test]
    fn equal_criteria_split_the_weight_evenly() {
        // Constant responses give every candidate zero penalized loss, so
        // the two models tie and each carries half the weight.
        let x: Vec<Vec<f64>> = (0..30).map(|i| vec![i as f64]).collect();
        let data = RegressionData::new(x, vec![2.5; 30]).unwrap();
        let ladder = KnnLadderSpec::new(vec![3, 6]).unwrap();
        let criterion = CriterionKind::Penalized {
            h: vec![0.0, 0.0],
            lambda: 1.0,
        };
        let run = esa_regress(
            &data,
            &ladder,
            &criterion,
            &StopRule::default(),
            &[vec![7.5], vec![22.0]],
        )
        .unwrap();
        assert_eq!(run.result.stop_index, 2);
        assert!((run.result.weights[0] - 0.5).abs() < 1e-15);
        for ((pred, a), b) in run
            .predictions
            .iter()
            .zip(&run.model_predictions[0])
            .zip(&run.model_predictions[1])
        {
            assert!((pred - 0.5 * (a + b)).abs() < 1e-12);
        }
    }

    #[test]
    fn validation_split_must_leave_both_parts_nonempty() {
        let data = sine_data(10, 0.1, 2);
        let ladder = KnnLadderSpec::new(vec![1, 3]).unwrap();
        let criterion = CriterionKind::ValidationSse {
            split_fraction: 0.01,
            seed: 5,
            alpha: 1.0,
        };
        let err = esa_regress(
            &data,
            &ladder,
            &criterion,
            &StopRule::default(),
            &[vec![0.5]],
        )
        .unwrap_err();
        assert!(matches!(err, ErmError::EmptySplit { .. }));
    }

    #[test]
    fn ladder_exceeding_training_rows_is_rejected() {
        let data = sine_data(50, 0.1, 4);
        let ladder = KnnLadderSpec::new(vec![10, 60]).unwrap();
        let err = esa_regress(
            &data,
            &ladder,
            &CriterionKind::Aicc,
            &StopRule::default(),
            &[vec![0.1]],
        )
        .unwrap_err();
        assert!(matches!(err, ErmError::NeighborCountOutOfRange { .. }));
    }
}
