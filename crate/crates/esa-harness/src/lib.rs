//! Experiment harness: synthetic-data runners for the three instantiations,
//! replicate scheduling with splittable seeds, criterion-loop timing, and
//! CSV emission. The `esa` binary in this crate is the command-line entry
//! point over these runners.

mod cluster;
mod config;
mod error;
mod gauss;
mod knn;
mod record;
mod seed;

pub use cluster::run_cluster_experiment;
pub use config::{
    parse_methods, ClusterExperiment, ClusterSetting, CommonConfig, GaussExperiment, KnnExperiment,
    MethodKind, RegressionCriterion,
};
pub use error::HarnessError;
pub use gauss::run_gauss_experiment;
pub use knn::run_knn_experiment;
pub use record::{write_csv, RunRecord, CSV_HEADER};
pub use seed::{replicate_seed, stage_seed};
