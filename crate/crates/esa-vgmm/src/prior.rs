//! Conjugate Dirichlet + Normal-Wishart prior for a finite Gaussian mixture.

use nalgebra::{DMatrix, DVector};

use crate::error::VgmmError;

/// Shared prior for every mixture component: Dirichlet concentration on the
/// weights and a Normal-Wishart on each (mean, precision) pair.
#[derive(Debug, Clone)]
pub struct GmmPrior {
    alpha0: f64,
    beta0: f64,
    m0: DVector<f64>,
    w0: DMatrix<f64>,
    nu0: f64,
    // Cached pieces reused every sweep.
    w0_inv: DMatrix<f64>,
    ln_det_w0: f64,
}

pub(crate) fn ln_det_from_spd(matrix: &DMatrix<f64>) -> Option<f64> {
    let chol = matrix.clone().cholesky()?;
    let l = chol.l();
    let mut ln_det = 0.0;
    for i in 0..l.nrows() {
        let di = l[(i, i)];
        if di <= 0.0 || !di.is_finite() {
            return None;
        }
        ln_det += di.ln();
    }
    Some(2.0 * ln_det)
}

impl GmmPrior {
    pub fn new(
        alpha0: f64,
        beta0: f64,
        m0: DVector<f64>,
        w0: DMatrix<f64>,
        nu0: f64,
    ) -> Result<Self, VgmmError> {
        if !alpha0.is_finite() || alpha0 <= 0.0 {
            return Err(VgmmError::NonPositive {
                name: "alpha0",
                value: alpha0,
            });
        }
        if !beta0.is_finite() || beta0 <= 0.0 {
            return Err(VgmmError::NonPositive {
                name: "beta0",
                value: beta0,
            });
        }
        let d = m0.len();
        if w0.nrows() != d || w0.ncols() != d {
            return Err(VgmmError::ScaleNotSpd);
        }
        if !nu0.is_finite() || nu0 < d as f64 {
            return Err(VgmmError::DofBelowDimension { nu: nu0, dim: d });
        }
        let chol = w0.clone().cholesky().ok_or(VgmmError::ScaleNotSpd)?;
        let ln_det_w0 = ln_det_from_spd(&w0).ok_or(VgmmError::ScaleNotSpd)?;
        let w0_inv = chol.inverse();
        Ok(GmmPrior {
            alpha0,
            beta0,
            m0,
            w0,
            nu0,
            w0_inv,
            ln_det_w0,
        })
    }

    /// The data-driven default: unit Dirichlet and mean-precision scales,
    /// prior mean at the sample mean, scale set to the inverse sample
    /// covariance, and minimal degrees of freedom.
    pub fn from_data(data: &[DVector<f64>]) -> Result<Self, VgmmError> {
        let n = data.len();
        if n < 2 {
            return Err(VgmmError::TooFewPoints {
                required: 2,
                got: n,
            });
        }
        let d = data[0].len();
        for (i, x) in data.iter().enumerate() {
            if x.len() != d {
                return Err(VgmmError::DimensionMismatch {
                    index: i,
                    expected: d,
                    got: x.len(),
                });
            }
            if x.iter().any(|v| !v.is_finite()) {
                return Err(VgmmError::NonFiniteData);
            }
        }
        let mut mean = DVector::zeros(d);
        for x in data {
            mean += x;
        }
        mean /= n as f64;
        let mut scatter = DMatrix::zeros(d, d);
        for x in data {
            let c = x - &mean;
            scatter += &c * c.transpose();
        }
        scatter /= n as f64;
        let w0 = scatter.cholesky().ok_or(VgmmError::ScaleNotSpd)?.inverse();
        GmmPrior::new(1.0, 1.0, mean, w0, d as f64)
    }

    pub fn alpha0(&self) -> f64 {
        self.alpha0
    }

    pub fn beta0(&self) -> f64 {
        self.beta0
    }

    pub fn m0(&self) -> &DVector<f64> {
        &self.m0
    }

    pub fn w0(&self) -> &DMatrix<f64> {
        &self.w0
    }

    pub fn nu0(&self) -> f64 {
        self.nu0
    }

    pub fn dim(&self) -> usize {
        self.m0.len()
    }

    pub(crate) fn w0_inv(&self) -> &DMatrix<f64> {
        &self.w0_inv
    }

    pub(crate) fn ln_det_w0(&self) -> f64 {
        self.ln_det_w0
    }
}
