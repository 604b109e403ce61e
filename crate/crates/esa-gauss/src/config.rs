//! Configuration for the truncated Gaussian sequence model and its
//! empirical-Bayes extension.

use std::sync::Arc;

use crate::error::GaussError;

/// Penalty on the prior-variance hyperparameter; `None` means identically 0.
pub type HyperPenalty = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

fn check_positive(name: &'static str, value: f64) -> Result<(), GaussError> {
    if !value.is_finite() || value <= 0.0 {
        return Err(GaussError::NonPositive { name, value });
    }
    Ok(())
}

/// Floor of `n^q` with a tiny relative guard so that exactly-integer powers
/// (e.g. 4096^0.5) are not pushed down by floating-point error in `powf`.
fn guarded_floor_pow(n: u64, q: f64) -> usize {
    let raw = (n as f64).powf(q);
    (raw * (1.0 + 1e-12)).floor() as usize
}

fn guarded_ceil_pow(n: u64, q: f64) -> usize {
    let raw = (n as f64).powf(q);
    (raw * (1.0 - 1e-12)).ceil() as usize
}

/// Problem setup: sample-size parameter, true smoothness, the exponent
/// ladder defining the nested truncation models, learning rate, the oracle
/// rate constant, and the coordinate window retained for computation.
///
/// Model `k` keeps the first `floor(n^{q_k})` coordinates active under a
/// standard normal prior and pins the rest to zero.
#[derive(Debug, Clone)]
pub struct SeqConfig {
    n: u64,
    beta_star: f64,
    q_ladder: Vec<f64>,
    lambda: f64,
    xi1: f64,
    trunc_dim: usize,
}

impl SeqConfig {
    /// Builds a config with the defaults: learning rate 1/2 (a fractional
    /// posterior), oracle constant equal to the learning rate, and the
    /// smallest valid truncation window `ceil(n^{q_M})`.
    pub fn new(n: u64, beta_star: f64, q_ladder: Vec<f64>) -> Result<Self, GaussError> {
        let lambda = 0.5;
        Self::with_parameters(n, beta_star, q_ladder, lambda, lambda, None)
    }

    /// Fully parameterized constructor. `trunc_dim = None` selects the
    /// default window; criterion differences are invariant to enlarging it.
    pub fn with_parameters(
        n: u64,
        beta_star: f64,
        q_ladder: Vec<f64>,
        lambda: f64,
        xi1: f64,
        trunc_dim: Option<usize>,
    ) -> Result<Self, GaussError> {
        if n == 0 {
            return Err(GaussError::NonPositive {
                name: "n",
                value: 0.0,
            });
        }
        check_positive("beta_star", beta_star)?;
        check_positive("lambda", lambda)?;
        check_positive("xi1", xi1)?;
        if q_ladder.is_empty() {
            return Err(GaussError::InvalidQLadder);
        }
        let mut prev = -f64::INFINITY;
        for &q in &q_ladder {
            if !q.is_finite() || !(0.0..=1.0).contains(&q) || q <= prev {
                return Err(GaussError::InvalidQLadder);
            }
            prev = q;
        }
        let required = guarded_ceil_pow(n, *q_ladder.last().unwrap()).max(1);
        let trunc_dim = trunc_dim.unwrap_or(required);
        if trunc_dim < required {
            return Err(GaussError::TruncationTooSmall {
                required,
                got: trunc_dim,
            });
        }
        Ok(SeqConfig {
            n,
            beta_star,
            q_ladder,
            lambda,
            xi1,
            trunc_dim,
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn beta_star(&self) -> f64 {
        self.beta_star
    }

    pub fn q_ladder(&self) -> &[f64] {
        &self.q_ladder
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn xi1(&self) -> f64 {
        self.xi1
    }

    pub fn trunc_dim(&self) -> usize {
        self.trunc_dim
    }

    pub fn model_count(&self) -> usize {
        self.q_ladder.len()
    }

    /// Active-coordinate cutoff of model `index` (1-based), clamped to the
    /// truncation window.
    pub fn cutoff(&self, index: usize) -> Result<usize, GaussError> {
        if index == 0 || index > self.q_ladder.len() {
            return Err(GaussError::ModelOutOfRange {
                index,
                model_count: self.q_ladder.len(),
            });
        }
        Ok(guarded_floor_pow(self.n, self.q_ladder[index - 1]).min(self.trunc_dim))
    }
}

/// Empirical-Bayes setup: the prior-variance search interval, the divisor
/// applied to the learning rate, an optional penalty on the hyperparameter,
/// and the 1-D search tolerance.
#[derive(Clone)]
pub struct EbConfig {
    pub psi_min: f64,
    pub psi_max: f64,
    pub rho_bar: f64,
    pub upsilon: Option<HyperPenalty>,
    pub tol: f64,
}

impl EbConfig {
    /// Defaults: learning-rate divisor 1, no hyperparameter penalty,
    /// search tolerance 1e-9.
    pub fn new(psi_min: f64, psi_max: f64) -> Result<Self, GaussError> {
        if !psi_min.is_finite() || !psi_max.is_finite() || psi_min <= 0.0 || psi_min > psi_max {
            return Err(GaussError::InvalidPsiBounds {
                min: psi_min,
                max: psi_max,
            });
        }
        Ok(EbConfig {
            psi_min,
            psi_max,
            rho_bar: 1.0,
            upsilon: None,
            tol: 1e-9,
        })
    }

    pub fn with_rho_bar(mut self, rho_bar: f64) -> Result<Self, GaussError> {
        if !rho_bar.is_finite() || rho_bar < 1.0 {
            return Err(GaussError::NonPositive {
                name: "rho_bar",
                value: rho_bar,
            });
        }
        self.rho_bar = rho_bar;
        Ok(self)
    }

    pub fn with_upsilon(mut self, upsilon: HyperPenalty) -> Self {
        self.upsilon = Some(upsilon);
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Result<Self, GaussError> {
        check_positive("tol", tol)?;
        self.tol = tol;
        Ok(self)
    }
}

impl std::fmt::Debug for EbConfig {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("EbConfig")
            .field("psi_min", &self.psi_min)
            .field("psi_max", &self.psi_max)
            .field("rho_bar", &self.rho_bar)
            .field("upsilon", &self.upsilon.as_ref().map(|_| "<fn>"))
            .field("tol", &self.tol)
            .finish()
    }
}
