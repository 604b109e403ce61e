//! Early-stopped aggregation over the component-count ladder.
//!
//! Candidate `k` is a mixture with `k` components; its criterion is the
//! negative of the best-of-restarts final lower bound, so walking the
//! ladder stops once adding a component no longer raises the bound.

use std::time::{Duration, Instant};

use nalgebra::DVector;

use esa_core::{run_esa, run_full, EsaError, EsaResult, LadderSpec, StopRule};

use crate::cavi::{cavi_fit, mix_seed, CaviConfig, GmmFit};
use crate::error::VgmmError;
use crate::prior::GmmPrior;

/// Outcome of a ladder run: engine result (artifacts are the fitted
/// candidates), hard labels from the maximum-weight model, and the wall
/// time of the criterion-evaluation loop.
#[derive(Debug, Clone)]
pub struct ClusterRun {
    pub result: EsaResult<GmmFit>,
    pub labels: Vec<usize>,
    pub tuning_time: Duration,
}

fn evaluator<'a, F>(
    data: &'a [DVector<f64>],
    prior_builder: &'a F,
    config: &'a CaviConfig,
) -> impl FnMut(usize) -> Result<(f64, GmmFit), EsaError> + 'a
where
    F: Fn(usize) -> GmmPrior,
{
    move |k| {
        // Per-candidate seeds depend only on (seed, k), so shared ladder
        // prefixes of different runs produce identical fits.
        let mut candidate_config = config.clone();
        candidate_config.seed = mix_seed(config.seed, 0x4b00 + k as u64);
        let prior = prior_builder(k);
        let fit =
            cavi_fit(data, k, &prior, &candidate_config).map_err(|e| EsaError::evaluation(k, e))?;
        Ok((-fit.final_elbo(), fit))
    }
}

fn labels_of(result: &EsaResult<GmmFit>) -> Vec<usize> {
    result.artifacts[result.max_weight_position()]
        .state
        .labels()
}

/// Walks `k = 1..=k_max` with the stopping rule and aggregates the
/// evaluated prefix.
pub fn esa_cluster<F>(
    data: &[DVector<f64>],
    k_max: usize,
    prior_builder: F,
    config: &CaviConfig,
    rule: &StopRule,
) -> Result<ClusterRun, VgmmError>
where
    F: Fn(usize) -> GmmPrior,
{
    let ladder = LadderSpec::new(k_max)?;
    let started = Instant::now();
    let result = run_esa(&mut evaluator(data, &prior_builder, config), &ladder, rule)?;
    let tuning_time = started.elapsed();
    let labels = labels_of(&result);
    Ok(ClusterRun {
        result,
        labels,
        tuning_time,
    })
}

/// Fits every candidate in the ladder (the full-aggregation baseline).
pub fn full_cluster<F>(
    data: &[DVector<f64>],
    k_max: usize,
    prior_builder: F,
    config: &CaviConfig,
) -> Result<ClusterRun, VgmmError>
where
    F: Fn(usize) -> GmmPrior,
{
    let ladder = LadderSpec::new(k_max)?;
    let started = Instant::now();
    let result = run_full(&mut evaluator(data, &prior_builder, config), &ladder)?;
    let tuning_time = started.elapsed();
    let labels = labels_of(&result);
    Ok(ClusterRun {
        result,
        labels,
        tuning_time,
    })
}
