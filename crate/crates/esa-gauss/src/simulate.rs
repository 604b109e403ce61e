//! Synthetic draws from the truncated Gaussian sequence model.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::config::SeqConfig;
use crate::error::GaussError;

/// One observed sample: the noisy coordinates and the ground truth they were
/// generated from (kept around for oracle risk evaluation).
#[derive(Debug, Clone, PartialEq)]
pub struct SeqData {
    pub x: Vec<f64>,
    pub theta_star: Vec<f64>,
}

impl SeqData {
    /// Validates externally supplied data against a config's window size.
    pub fn new(x: Vec<f64>, theta_star: Vec<f64>, config: &SeqConfig) -> Result<Self, GaussError> {
        if x.len() != config.trunc_dim() {
            return Err(GaussError::LengthMismatch {
                expected: config.trunc_dim(),
                got: x.len(),
            });
        }
        if theta_star.len() != x.len() {
            return Err(GaussError::LengthMismatch {
                expected: x.len(),
                got: theta_star.len(),
            });
        }
        if x.iter().chain(&theta_star).any(|v| !v.is_finite()) {
            return Err(GaussError::NonFiniteData);
        }
        Ok(SeqData { x, theta_star })
    }
}

/// Power-law ground truth for coordinate `i` (1-based): `i^(-beta - 1/2)`.
pub(crate) fn truth_coordinate(i: usize, beta_star: f64) -> f64 {
    (i as f64).powf(-beta_star - 0.5)
}

/// The deterministic ground-truth vector over the config's window,
/// independent of any draw.
pub fn power_law_truth(config: &SeqConfig) -> Vec<f64> {
    (1..=config.trunc_dim())
        .map(|i| truth_coordinate(i, config.beta_star()))
        .collect()
}

/// Draws `x_i = theta*_i + z_i` with independent Gaussian noise of variance
/// `1/n`, over the first `trunc_dim` coordinates. Deterministic given the
/// seed.
pub fn simulate_seq(config: &SeqConfig, seed: u64) -> SeqData {
    let d = config.trunc_dim();
    let noise = Normal::new(0.0, (1.0 / config.n() as f64).sqrt()).expect("valid std dev");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = Vec::with_capacity(d);
    let mut theta_star = Vec::with_capacity(d);
    for i in 1..=d {
        let t = truth_coordinate(i, config.beta_star());
        theta_star.push(t);
        x.push(t + noise.sample(&mut rng));
    }
    SeqData { x, theta_star }
}
