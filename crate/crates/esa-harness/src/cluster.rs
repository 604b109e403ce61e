//! Mixture clustering experiment: agreement scores of each aggregation
//! strategy against the generating labels.

use esa_core::select_best;
use esa_vgmm::{
    ari, esa_cluster, full_cluster, gen_setting_a, gen_setting_b, nmi, CaviConfig, ClusterRun,
    GmmPrior,
};

use crate::config::{ClusterExperiment, ClusterSetting, MethodKind};
use crate::error::HarnessError;
use crate::record::RunRecord;
use crate::seed::{replicate_seed, stage_seed};

const EXPERIMENT: &str = "gmm";

struct Row<'a> {
    method: &'a str,
    replicate: usize,
    seed: u64,
    stop_index: usize,
}

fn score_records(
    cfg: &ClusterExperiment,
    row: Row<'_>,
    run: &ClusterRun,
    labels: &[usize],
    truth: &[usize],
) -> Result<Vec<RunRecord>, HarnessError> {
    let wall = cfg.common.wall_ms(run.tuning_time);
    let trace = run.result.trace.values().to_vec();
    let scores = [("ari", ari(truth, labels)?), ("nmi", nmi(truth, labels)?)];
    Ok(scores
        .into_iter()
        .map(|(metric, value)| RunRecord {
            experiment: EXPERIMENT.into(),
            method: row.method.into(),
            replicate: row.replicate,
            seed: row.seed,
            stop_index: row.stop_index,
            criterion_trace: trace.clone(),
            metric: metric.into(),
            value,
            wall_time_ms: wall,
        })
        .collect())
}

fn failed_record(method: &str, replicate: usize, seed: u64, error: &HarnessError) -> RunRecord {
    eprintln!("warning: replicate {replicate} ({method}) failed: {error}");
    RunRecord {
        experiment: EXPERIMENT.into(),
        method: method.into(),
        replicate,
        seed,
        stop_index: 0,
        criterion_trace: Vec::new(),
        metric: "failed".into(),
        value: 1.0,
        wall_time_ms: 0.0,
    }
}

/// Per replicate: draw the configured setting, fit the component ladder
/// under each method, and record the adjusted Rand index and normalized
/// mutual information of the reported hard labels. A fitting failure turns
/// into a failed-replicate row rather than aborting the experiment.
pub fn run_cluster_experiment(cfg: &ClusterExperiment) -> Result<Vec<RunRecord>, HarnessError> {
    cfg.common.validate()?;
    if cfg.k_max == 0 {
        return Err(HarnessError::Config("k-max must be >= 1".into()));
    }
    let mut records = Vec::new();
    for replicate in 1..=cfg.common.replicates {
        let seed = replicate_seed(cfg.common.seed, replicate as u64);
        let (data, truth) = match cfg.setting {
            ClusterSetting::A => gen_setting_a(cfg.common.n, stage_seed(seed, 1)),
            ClusterSetting::B => gen_setting_b(cfg.common.n, stage_seed(seed, 1)),
        };
        let prior = GmmPrior::from_data(&data)?;
        let cavi = CaviConfig::new(stage_seed(seed, 2));

        for method in &cfg.common.methods {
            let outcome: Result<Vec<RunRecord>, HarnessError> = match method {
                MethodKind::Esa => {
                    esa_cluster(&data, cfg.k_max, |_| prior.clone(), &cavi, &cfg.common.rule)
                        .map_err(HarnessError::from)
                        .and_then(|run| {
                            let labels = run.labels.clone();
                            let row = Row {
                                method: "esa",
                                replicate,
                                seed,
                                stop_index: run.result.stop_index,
                            };
                            score_records(cfg, row, &run, &labels, &truth)
                        })
                }
                MethodKind::Fa => full_cluster(&data, cfg.k_max, |_| prior.clone(), &cavi)
                    .map_err(HarnessError::from)
                    .and_then(|run| {
                        let labels = run.labels.clone();
                        let row = Row {
                            method: "fa",
                            replicate,
                            seed,
                            stop_index: cfg.k_max,
                        };
                        score_records(cfg, row, &run, &labels, &truth)
                    }),
                MethodKind::Ms => full_cluster(&data, cfg.k_max, |_| prior.clone(), &cavi)
                    .map_err(HarnessError::from)
                    .and_then(|run| {
                        let best = select_best(run.result.trace.values())?;
                        let labels = run.result.artifacts[best - 1].state.labels();
                        let row = Row {
                            method: "ms",
                            replicate,
                            seed,
                            stop_index: cfg.k_max,
                        };
                        score_records(cfg, row, &run, &labels, &truth)
                    }),
            };
            match outcome {
                Ok(mut rows) => records.append(&mut rows),
                Err(error) => records.push(failed_record(method.name(), replicate, seed, &error)),
            }
        }
    }
    Ok(records)
}
