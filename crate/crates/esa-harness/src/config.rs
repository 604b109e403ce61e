//! Experiment configuration shared by the runners and the command line.

use esa_core::StopRule;

use crate::error::HarnessError;

/// Aggregation strategies the runners can compare.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodKind {
    /// Early-stopped aggregation.
    Esa,
    /// Full aggregation over the whole ladder.
    Fa,
    /// Single-model selection by the criterion minimum.
    Ms,
}

impl MethodKind {
    pub fn name(&self) -> &'static str {
        match self {
            MethodKind::Esa => "esa",
            MethodKind::Fa => "fa",
            MethodKind::Ms => "ms",
        }
    }
}

/// Parses a comma-separated method list such as `esa,fa,ms`.
pub fn parse_methods(text: &str) -> Result<Vec<MethodKind>, HarnessError> {
    let mut out = Vec::new();
    for part in text.split(',') {
        let method = match part.trim() {
            "esa" => MethodKind::Esa,
            "fa" => MethodKind::Fa,
            "ms" => MethodKind::Ms,
            other => {
                return Err(HarnessError::Config(format!(
                    "unknown method '{other}' (expected esa, fa, ms)"
                )))
            }
        };
        if !out.contains(&method) {
            out.push(method);
        }
    }
    if out.is_empty() {
        return Err(HarnessError::Config("method list is empty".into()));
    }
    Ok(out)
}

/// Knobs common to every experiment.
#[derive(Debug, Clone)]
pub struct CommonConfig {
    pub methods: Vec<MethodKind>,
    pub n: usize,
    pub replicates: usize,
    pub seed: u64,
    pub rule: StopRule,
    /// Write 0 to the wall-time column so repeated runs are byte-identical.
    pub no_timing: bool,
}

impl CommonConfig {
    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.replicates == 0 {
            return Err(HarnessError::Config("replicates must be >= 1".into()));
        }
        if self.n == 0 {
            return Err(HarnessError::Config("n must be >= 1".into()));
        }
        if self.methods.is_empty() {
            return Err(HarnessError::Config("method list is empty".into()));
        }
        Ok(())
    }

    pub(crate) fn wall_ms(&self, elapsed: std::time::Duration) -> f64 {
        if self.no_timing {
            0.0
        } else {
            elapsed.as_secs_f64() * 1e3
        }
    }
}

/// Which synthetic clustering benchmark to draw from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClusterSetting {
    A,
    B,
}

/// Criterion selector for the regression experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegressionCriterion {
    Aicc,
    Validation,
    Penalized,
}

/// Gaussian sequence-model experiment parameters.
#[derive(Debug, Clone)]
pub struct GaussExperiment {
    pub common: CommonConfig,
    pub beta_star: f64,
    pub q_ladder: Vec<f64>,
}

/// Mixture clustering experiment parameters.
#[derive(Debug, Clone)]
pub struct ClusterExperiment {
    pub common: CommonConfig,
    pub setting: ClusterSetting,
    pub k_max: usize,
}

/// k-nearest-neighbor regression experiment parameters.
#[derive(Debug, Clone)]
pub struct KnnExperiment {
    pub common: CommonConfig,
    pub ladder: Vec<usize>,
    pub criterion: RegressionCriterion,
    pub alpha: f64,
    pub split: f64,
    /// Noise standard deviation of the synthetic generator.
    pub sigma: f64,
}
