//! Gaussian sequence-model experiment: realized excess risk of the
//! aggregated posterior mean under each aggregation strategy, plus the
//! closed-form risk curve emitted once per configuration.

use esa_core::select_best;
use esa_gauss::{
    esa_seq, excess_risk_curve, full_seq, posterior_k, power_law_truth, simulate_seq,
    true_excess_risk, SeqConfig, SeqRun,
};

use crate::config::{GaussExperiment, MethodKind};
use crate::error::HarnessError;
use crate::record::RunRecord;
use crate::seed::replicate_seed;

const EXPERIMENT: &str = "gauss-seq";

fn record_from_run(
    cfg: &GaussExperiment,
    method: &str,
    replicate: usize,
    seed: u64,
    run: &SeqRun,
    value: f64,
) -> RunRecord {
    RunRecord {
        experiment: EXPERIMENT.into(),
        method: method.into(),
        replicate,
        seed,
        stop_index: run.result.stop_index,
        criterion_trace: run.result.trace.values().to_vec(),
        metric: "true_excess_risk".into(),
        value,
        wall_time_ms: cfg.common.wall_ms(run.tuning_time),
    }
}

/// Runs the configured methods over seeded replicates. The first record
/// carries the closed-form excess-risk curve and its argmin; every later
/// record reports the realized excess risk of one method on one replicate.
pub fn run_gauss_experiment(cfg: &GaussExperiment) -> Result<Vec<RunRecord>, HarnessError> {
    cfg.common.validate()?;
    let config = SeqConfig::new(cfg.common.n as u64, cfg.beta_star, cfg.q_ladder.clone())?;
    let truth = power_law_truth(&config);
    let curve = excess_risk_curve(&config, &truth)?;
    let oracle_argmin = select_best(&curve)?;

    let mut records = Vec::new();
    records.push(RunRecord {
        experiment: EXPERIMENT.into(),
        method: "oracle".into(),
        replicate: 0,
        seed: cfg.common.seed,
        stop_index: curve.len(),
        criterion_trace: curve.clone(),
        metric: "oracle_risk_argmin".into(),
        value: oracle_argmin as f64,
        wall_time_ms: 0.0,
    });

    for replicate in 1..=cfg.common.replicates {
        let seed = replicate_seed(cfg.common.seed, replicate as u64);
        let data = simulate_seq(&config, seed);
        for method in &cfg.common.methods {
            let record = match method {
                MethodKind::Esa => {
                    let run = esa_seq(&data, &config, &cfg.common.rule)?;
                    let risk = true_excess_risk(&run.posterior_mean, &data.theta_star, &config)?;
                    record_from_run(cfg, "esa", replicate, seed, &run, risk)
                }
                MethodKind::Fa => {
                    let run = full_seq(&data, &config)?;
                    let risk = true_excess_risk(&run.posterior_mean, &data.theta_star, &config)?;
                    record_from_run(cfg, "fa", replicate, seed, &run, risk)
                }
                MethodKind::Ms => {
                    // Same evaluations as full aggregation, but the selected
                    // model's posterior mean is used alone.
                    let run = full_seq(&data, &config)?;
                    let best = select_best(run.result.trace.values())?;
                    let mean = posterior_k(&data, best, &config)?.padded_mean(config.trunc_dim());
                    let risk = true_excess_risk(&mean, &data.theta_star, &config)?;
                    record_from_run(cfg, "ms", replicate, seed, &run, risk)
                }
            };
            records.push(record);
        }
    }
    Ok(records)
}
