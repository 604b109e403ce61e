//! Regression experiment: test root-mean-squared error of each tuning
//! strategy over a synthetic smooth signal, including a 5-fold
//! cross-validation reference.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use esa_core::select_best;
use esa_erm::{
    covering_penalty, esa_regress, full_regress, knn_predict, sse, CriterionKind, KnnLadderSpec,
    KnnRun, RegressionData,
};

use crate::config::{KnnExperiment, MethodKind, RegressionCriterion};
use crate::error::HarnessError;
use crate::record::RunRecord;
use crate::seed::{replicate_seed, stage_seed};

const EXPERIMENT: &str = "knn";
const TEST_FRACTION: f64 = 0.2;
const CV_FOLDS: usize = 5;

/// Synthetic regression truth: `y = sin(2 pi x1) + x2^2 + eps` with inputs
/// uniform on the unit square and Gaussian noise.
fn generate(n: usize, sigma: f64, seed: u64) -> (Vec<Vec<f64>>, Vec<f64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let noise = Normal::new(0.0, sigma.max(f64::MIN_POSITIVE)).expect("valid sigma");
    let mut x = Vec::with_capacity(n);
    let mut y = Vec::with_capacity(n);
    for _ in 0..n {
        let x1: f64 = rng.random_range(0.0..1.0);
        let x2: f64 = rng.random_range(0.0..1.0);
        let eps = if sigma > 0.0 {
            noise.sample(&mut rng)
        } else {
            0.0
        };
        x.push(vec![x1, x2]);
        y.push((2.0 * std::f64::consts::PI * x1).sin() + x2 * x2 + eps);
    }
    (x, y)
}

fn rmse(predictions: &[f64], truth: &[f64]) -> Result<f64, HarnessError> {
    Ok((sse(predictions, truth)? / truth.len() as f64).sqrt())
}

fn build_criterion(
    cfg: &KnnExperiment,
    seed: u64,
    ladder_len: usize,
    n_train: usize,
) -> CriterionKind {
    match cfg.criterion {
        RegressionCriterion::Aicc => CriterionKind::Aicc,
        RegressionCriterion::Validation => CriterionKind::ValidationSse {
            split_fraction: cfg.split,
            seed,
            alpha: cfg.alpha,
        },
        RegressionCriterion::Penalized => {
            // No exact parameter dimension exists for neighbor smoothing;
            // use the ladder position as the dimension proxy so the
            // penalty is nondecreasing along the walk.
            let df: Vec<f64> = (1..=ladder_len).map(|p| p as f64).collect();
            CriterionKind::Penalized {
                h: covering_penalty(&df, n_train),
                lambda: 1.0,
            }
        }
    }
}

fn method_record(
    cfg: &KnnExperiment,
    method: &str,
    replicate: usize,
    seed: u64,
    run: &KnnRun,
    stop_index: usize,
    value: f64,
) -> RunRecord {
    RunRecord {
        experiment: EXPERIMENT.into(),
        method: method.into(),
        replicate,
        seed,
        stop_index,
        criterion_trace: run.result.trace.values().to_vec(),
        metric: "test_rmse".into(),
        value,
        wall_time_ms: cfg.common.wall_ms(run.tuning_time),
    }
}

/// 5-fold cross-validation over the ladder: summed held-out SSE per model,
/// lowest wins. Returns the per-model criterion trace, the winning ladder
/// position, and the fold-loop wall time.
fn cross_validate(
    train: &RegressionData,
    ladder: &KnnLadderSpec,
    seed: u64,
) -> Result<(Vec<f64>, usize, std::time::Duration), HarnessError> {
    let n = train.len();
    let mut indices: Vec<usize> = (0..n).collect();
    indices.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));

    let started = Instant::now();
    let mut cv_sse = vec![0.0; ladder.len()];
    let fold_size = n.div_ceil(CV_FOLDS);
    for fold in 0..CV_FOLDS {
        let lo = fold * fold_size;
        let hi = ((fold + 1) * fold_size).min(n);
        if lo >= hi {
            continue;
        }
        let held: Vec<usize> = indices[lo..hi].to_vec();
        let kept: Vec<usize> = indices[..lo]
            .iter()
            .chain(&indices[hi..])
            .copied()
            .collect();
        let fit: Vec<Vec<f64>> = kept.iter().map(|&i| train.features()[i].clone()).collect();
        let fit_y: Vec<f64> = kept.iter().map(|&i| train.responses()[i]).collect();
        let fit_data = RegressionData::new(fit, fit_y)?;
        ladder.validate_for(fit_data.len())?;
        let held_x: Vec<Vec<f64>> = held.iter().map(|&i| train.features()[i].clone()).collect();
        let held_y: Vec<f64> = held.iter().map(|&i| train.responses()[i]).collect();
        for (pos, &k_nbr) in ladder.counts().iter().enumerate() {
            let preds = knn_predict(&fit_data, &held_x, k_nbr)?;
            cv_sse[pos] += sse(&preds, &held_y)?;
        }
    }
    let elapsed = started.elapsed();
    let best = select_best(&cv_sse)?;
    Ok((cv_sse, best, elapsed))
}

/// Per replicate: generate data, split train/test, tune under the chosen
/// criterion with each method plus the cross-validation reference, and
/// record the test error of every strategy.
pub fn run_knn_experiment(cfg: &KnnExperiment) -> Result<Vec<RunRecord>, HarnessError> {
    cfg.common.validate()?;
    if !(cfg.split > 0.0 && cfg.split < 1.0) {
        return Err(HarnessError::Config(format!(
            "split fraction must lie in (0, 1), got {}",
            cfg.split
        )));
    }
    if !(cfg.alpha.is_finite() && cfg.alpha > 0.0) {
        return Err(HarnessError::Config(format!(
            "alpha must be positive, got {}",
            cfg.alpha
        )));
    }
    let ladder = KnnLadderSpec::new(cfg.ladder.clone())?;

    // Largest rung must be servable by the smallest fitting set this run
    // will ever build: after the test split, minus the validation part or a
    // cross-validation fold.
    let n_train = cfg.common.n - ((cfg.common.n as f64) * TEST_FRACTION).round().max(1.0) as usize;
    let criterion_fit = match cfg.criterion {
        RegressionCriterion::Validation => {
            n_train - ((n_train as f64) * cfg.split).round() as usize
        }
        _ => n_train,
    };
    let cv_fit = n_train - n_train.div_ceil(CV_FOLDS);
    let smallest_fit = criterion_fit.min(cv_fit);
    let largest_rung = *ladder.counts().last().expect("nonempty ladder");
    if largest_rung > smallest_fit {
        return Err(HarnessError::Config(format!(
            "ladder rung {largest_rung} exceeds the {smallest_fit} rows available for fitting \
             (n = {}, test fraction {TEST_FRACTION})",
            cfg.common.n
        )));
    }

    // Untimed warm-up so the first replicate's measurements are not
    // inflated by cold code paths.
    {
        let (wx, wy) = generate(64, cfg.sigma, cfg.common.seed ^ 0xDEAD);
        let warm = RegressionData::new(wx, wy)?;
        let _ = knn_predict(&warm, warm.features(), 8)?;
    }

    let mut records = Vec::new();
    for replicate in 1..=cfg.common.replicates {
        let seed = replicate_seed(cfg.common.seed, replicate as u64);
        let (x, y) = generate(cfg.common.n, cfg.sigma, stage_seed(seed, 1));

        // Random train/test split.
        let n = x.len();
        let n_test = ((n as f64) * TEST_FRACTION).round().max(1.0) as usize;
        if n_test >= n {
            return Err(HarnessError::Config(format!(
                "n = {n} leaves no training rows after the test split"
            )));
        }
        let mut indices: Vec<usize> = (0..n).collect();
        indices.shuffle(&mut ChaCha8Rng::seed_from_u64(stage_seed(seed, 2)));
        let (test_idx, train_idx) = indices.split_at(n_test);
        let train = RegressionData::new(
            train_idx.iter().map(|&i| x[i].clone()).collect(),
            train_idx.iter().map(|&i| y[i]).collect(),
        )?;
        let test_x: Vec<Vec<f64>> = test_idx.iter().map(|&i| x[i].clone()).collect();
        let test_y: Vec<f64> = test_idx.iter().map(|&i| y[i]).collect();

        let criterion = build_criterion(cfg, stage_seed(seed, 3), ladder.len(), train.len());

        for method in &cfg.common.methods {
            let record = match method {
                MethodKind::Esa => {
                    let run = esa_regress(&train, &ladder, &criterion, &cfg.common.rule, &test_x)?;
                    let value = rmse(&run.predictions, &test_y)?;
                    method_record(
                        cfg,
                        "esa",
                        replicate,
                        seed,
                        &run,
                        run.result.stop_index,
                        value,
                    )
                }
                MethodKind::Fa => {
                    let run = full_regress(&train, &ladder, &criterion, &test_x)?;
                    let value = rmse(&run.predictions, &test_y)?;
                    method_record(cfg, "fa", replicate, seed, &run, ladder.len(), value)
                }
                MethodKind::Ms => {
                    let run = full_regress(&train, &ladder, &criterion, &test_x)?;
                    let best = select_best(run.result.trace.values())?;
                    let value = rmse(&run.model_predictions[best - 1], &test_y)?;
                    method_record(cfg, "ms", replicate, seed, &run, ladder.len(), value)
                }
            };
            records.push(record);
        }

        // Cross-validation reference, always reported.
        let (cv_trace, cv_best, cv_elapsed) = cross_validate(&train, &ladder, stage_seed(seed, 4))?;
        let cv_preds = knn_predict(&train, &test_x, ladder.counts()[cv_best - 1])?;
        records.push(RunRecord {
            experiment: EXPERIMENT.into(),
            method: "cv".into(),
            replicate,
            seed,
            stop_index: ladder.len(),
            criterion_trace: cv_trace,
            metric: "test_rmse".into(),
            value: rmse(&cv_preds, &test_y)?,
            wall_time_ms: cfg.common.wall_ms(cv_elapsed),
        });
    }
    Ok(records)
}
