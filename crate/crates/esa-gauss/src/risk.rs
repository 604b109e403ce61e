//! Population excess-risk oracles for the sequence model.
//!
//! The excess risk of model `k` has the same closed form as the free energy
//! with the data replaced by the ground truth and the learning rate by the
//! oracle constant `xi1`, except that the inactive sum runs over the whole
//! (infinite) coordinate tail rather than stopping at the truncation window.

use crate::config::SeqConfig;
use crate::error::GaussError;

/// Tail sum `sum_{i > start} i^(-p)` for `p > 1`.
///
/// Terms are accumulated directly until they drop below 1e-12 of the running
/// total (or a block of 4096 terms is exhausted), after which the remainder
/// is closed out with an Euler-Maclaurin expansion of the tail, keeping the
/// result accurate to near machine precision even for slowly decaying
/// exponents.
pub(crate) fn power_tail(start: usize, p: f64) -> f64 {
    debug_assert!(p > 1.0);
    let mut acc = 0.0;
    let mut i = start + 1;
    let block_end = start + 4096;
    while i <= block_end {
        let term = (i as f64).powf(-p);
        acc += term;
        if term < 1e-12 * acc {
            return acc;
        }
        i += 1;
    }
    // Remainder from N = block_end + 1:
    let n = (block_end + 1) as f64;
    let head = n.powf(1.0 - p) / (p - 1.0);
    let correction = 0.5 * n.powf(-p) + p / 12.0 * n.powf(-p - 1.0);
    acc + head + correction
}

/// Closed-form excess risk of model `index`: complexity of the active block
/// plus the squared-bias tail of the frozen coordinates.
///
/// `theta_star` supplies the truth over the computed window; beyond its
/// length the power-law form `i^(-beta* - 1/2)` is summed analytically.
pub fn oracle_excess_risk(
    config: &SeqConfig,
    theta_star: &[f64],
    index: usize,
) -> Result<f64, GaussError> {
    let cutoff = config.cutoff(index)?;
    if theta_star.len() < cutoff {
        return Err(GaussError::LengthMismatch {
            expected: cutoff,
            got: theta_star.len(),
        });
    }
    let b = config.xi1() * config.n() as f64;
    let log_term = 0.5 * (1.0 + 2.0 * b).ln();
    let mut total = cutoff as f64 * log_term;
    for &t in &theta_star[..cutoff] {
        total += b * t * t / (1.0 + 2.0 * b);
    }
    for &t in &theta_star[cutoff..] {
        total += b * t * t;
    }
    total += b * power_tail(theta_star.len(), 2.0 * config.beta_star() + 1.0);
    Ok(total)
}

/// Evaluates [`oracle_excess_risk`] across the whole ladder.
pub fn excess_risk_curve(config: &SeqConfig, theta_star: &[f64]) -> Result<Vec<f64>, GaussError> {
    (1..=config.model_count())
        .map(|k| oracle_excess_risk(config, theta_star, k))
        .collect()
}

/// Near-optimal ladder index for slack `tau`: the smallest `k` whose excess
/// risk is within factor `(1 + tau)` of the next model's, or the last model
/// when no such index exists.
pub fn near_optimal_index(excess_risks: &[f64], tau: f64) -> Result<usize, GaussError> {
    if excess_risks.is_empty() {
        return Err(GaussError::LengthMismatch {
            expected: 1,
            got: 0,
        });
    }
    if !tau.is_finite() || tau < 0.0 {
        return Err(GaussError::NonPositive {
            name: "tau",
            value: tau,
        });
    }
    if excess_risks.iter().any(|v| !v.is_finite()) {
        return Err(GaussError::NonFiniteData);
    }
    let m = excess_risks.len();
    for k in 1..m {
        if excess_risks[k - 1] <= (1.0 + tau) * excess_risks[k] {
            return Ok(k);
        }
    }
    Ok(m)
}

/// Realized excess risk `n * ||estimate - theta*||^2` of a point estimate,
/// including the analytic squared-truth tail beyond the computed window.
pub fn true_excess_risk(
    estimate: &[f64],
    theta_star: &[f64],
    config: &SeqConfig,
) -> Result<f64, GaussError> {
    if estimate.len() != theta_star.len() {
        return Err(GaussError::LengthMismatch {
            expected: theta_star.len(),
            got: estimate.len(),
        });
    }
    let n = config.n() as f64;
    let mut sum = 0.0;
    for (e, t) in estimate.iter().zip(theta_star) {
        let d = e - t;
        sum += d * d;
    }
    sum += power_tail(theta_star.len(), 2.0 * config.beta_star() + 1.0);
    Ok(n * sum)
}
