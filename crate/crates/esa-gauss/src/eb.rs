//! Empirical-Bayes criterion: the free energy jointly minimized over the
//! variational family and a scalar prior-variance hyperparameter.

use crate::config::{EbConfig, SeqConfig};
use crate::error::GaussError;
use crate::simulate::SeqData;

/// Free energy of model `index` at a fixed prior variance `psi`, including
/// the hyperparameter penalty. Closed form per coordinate, with learning
/// rate `lambda / rho_bar`.
fn eb_objective(data: &SeqData, cutoff: usize, config: &SeqConfig, eb: &EbConfig, psi: f64) -> f64 {
    let a = config.lambda() / eb.rho_bar * config.n() as f64;
    let mut total = 0.0;
    for (i, &x) in data.x.iter().enumerate() {
        if i < cutoff {
            total += 0.5 * (1.0 + 2.0 * a * psi).ln() + a * x * x / (1.0 + 2.0 * a * psi);
        } else {
            total += a * x * x;
        }
    }
    if let Some(upsilon) = &eb.upsilon {
        total += upsilon(psi);
    }
    total
}

/// Golden-section minimization over `[lo, hi]`. Once the bracket shrinks
/// below `tol`, the best of its endpoints and midpoint is returned, so
/// boundary minima are hit exactly rather than offset by half a bracket.
fn golden_section<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    if hi - lo > tol {
        let mut c = hi - INV_PHI * (hi - lo);
        let mut d = lo + INV_PHI * (hi - lo);
        let mut fc = f(c);
        let mut fd = f(d);
        while hi - lo > tol {
            if fc < fd {
                hi = d;
                d = c;
                fd = fc;
                c = hi - INV_PHI * (hi - lo);
                fc = f(c);
            } else {
                lo = c;
                c = d;
                fc = fd;
                d = lo + INV_PHI * (hi - lo);
                fd = f(d);
            }
        }
    }
    let mid = 0.5 * (lo + hi);
    let mut best = (f(lo), lo);
    for x in [mid, hi] {
        let fx = f(x);
        if fx < best.0 {
            best = (fx, x);
        }
    }
    best
}

/// Empirical-Bayes criterion of model `index`: minimizes the free energy
/// over the prior variance within `[psi_min, psi_max]` and returns the
/// minimized value together with the selected hyperparameter.
pub fn eb_mvfe(
    data: &SeqData,
    index: usize,
    config: &SeqConfig,
    eb: &EbConfig,
) -> Result<(f64, f64), GaussError> {
    if data.x.len() != config.trunc_dim() {
        return Err(GaussError::LengthMismatch {
            expected: config.trunc_dim(),
            got: data.x.len(),
        });
    }
    let cutoff = config.cutoff(index)?;
    if eb.psi_min == eb.psi_max {
        let psi = eb.psi_min;
        return Ok((eb_objective(data, cutoff, config, eb, psi), psi));
    }
    let (value, psi) = golden_section(
        |psi| eb_objective(data, cutoff, config, eb, psi),
        eb.psi_min,
        eb.psi_max,
        eb.tol,
    );
    Ok((value, psi))
}
