//! Coordinate-ascent variational inference for the conjugate mixture.
//!
//! Each sweep alternates the two closed-form blocks: the parameter step
//! refreshes the Dirichlet and Normal-Wishart statistics from
//! responsibility-weighted moments, and the responsibility step rebuilds
//! every row from digamma-adjusted expected log weights and expected
//! log-determinant precisions. The evidence lower bound is evaluated after
//! every sweep and must never decrease; that is the canonical correctness
//! check and is enforced by the test suites.

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use statrs::function::gamma::{digamma, ln_gamma};

use crate::error::VgmmError;
use crate::prior::{ln_det_from_spd, GmmPrior};
use crate::state::GmmVarState;

const LN_2PI: f64 = 1.837_877_066_409_345_6;

/// Mass below which a component is treated as empty and falls back to its
/// prior parameters instead of erroring out.
const EMPTY_MASS: f64 = 1e-10;

/// Knobs for the fitting loop.
#[derive(Debug, Clone)]
pub struct CaviConfig {
    /// Hard cap on sweeps per restart.
    pub max_iter: usize,
    /// Relative lower-bound change that counts as converged.
    pub rel_tol: f64,
    /// Independent initializations; the best final bound wins.
    pub restarts: usize,
    /// Seed for the initialization draws.
    pub seed: u64,
    /// Ridge added to the responsibility-weighted scatter diagonal.
    pub cov_floor: f64,
}

impl CaviConfig {
    pub fn new(seed: u64) -> Self {
        CaviConfig {
            max_iter: 500,
            rel_tol: 1e-6,
            restarts: 5,
            seed,
            cov_floor: 1e-9,
        }
    }

    fn validate(&self) -> Result<(), VgmmError> {
        if self.max_iter == 0 {
            return Err(VgmmError::NonPositive {
                name: "max_iter",
                value: 0.0,
            });
        }
        if !self.rel_tol.is_finite() || self.rel_tol <= 0.0 {
            return Err(VgmmError::NonPositive {
                name: "rel_tol",
                value: self.rel_tol,
            });
        }
        if self.restarts == 0 {
            return Err(VgmmError::NonPositive {
                name: "restarts",
                value: 0.0,
            });
        }
        if !self.cov_floor.is_finite() || self.cov_floor < 0.0 {
            return Err(VgmmError::NonPositive {
                name: "cov_floor",
                value: self.cov_floor,
            });
        }
        Ok(())
    }
}

/// One fitted candidate: the converged state plus the lower-bound history of
/// every restart (`best_restart` indexes the winner).
#[derive(Debug, Clone)]
pub struct GmmFit {
    pub state: GmmVarState,
    pub best_restart: usize,
    pub elbo_traces: Vec<Vec<f64>>,
}

impl GmmFit {
    /// Lower-bound history of the winning restart.
    pub fn elbo_trace(&self) -> &[f64] {
        &self.elbo_traces[self.best_restart]
    }

    pub fn final_elbo(&self) -> f64 {
        *self.elbo_trace().last().expect("nonempty trace")
    }
}

struct SufficientStats {
    mass: Vec<f64>,
    mean: Vec<DVector<f64>>,
    scatter: Vec<DMatrix<f64>>,
}

fn sufficient_stats(
    data: &[DVector<f64>],
    resp: &DMatrix<f64>,
    prior: &GmmPrior,
) -> SufficientStats {
    let k = resp.ncols();
    let d = prior.dim();
    let mut mass = vec![0.0; k];
    let mut mean = vec![DVector::zeros(d); k];
    for (i, x) in data.iter().enumerate() {
        for j in 0..k {
            let r = resp[(i, j)];
            mass[j] += r;
            mean[j].axpy(r, x, 1.0);
        }
    }
    for j in 0..k {
        if mass[j] > EMPTY_MASS {
            mean[j] /= mass[j];
        } else {
            mean[j] = prior.m0().clone();
        }
    }
    let mut scatter = vec![DMatrix::zeros(d, d); k];
    let mut centered = DVector::zeros(d);
    for (i, x) in data.iter().enumerate() {
        for j in 0..k {
            let r = resp[(i, j)];
            if r == 0.0 {
                continue;
            }
            centered.copy_from(x);
            centered -= &mean[j];
            scatter[j].ger(r, &centered, &centered, 1.0);
        }
    }
    for j in 0..k {
        if mass[j] > EMPTY_MASS {
            scatter[j] /= mass[j];
        } else {
            scatter[j].fill(0.0);
        }
    }
    SufficientStats {
        mass,
        mean,
        scatter,
    }
}

/// Dirichlet and Normal-Wishart parameters of every component, before the
/// responsibilities are attached.
struct ComponentParams {
    alpha: Vec<f64>,
    beta: Vec<f64>,
    means: Vec<DVector<f64>>,
    scales: Vec<DMatrix<f64>>,
    dof: Vec<f64>,
}

/// Parameter block: conjugate updates from the responsibility-weighted
/// moments. Empty components collapse to the prior.
fn parameter_step(
    data: &[DVector<f64>],
    resp: &DMatrix<f64>,
    prior: &GmmPrior,
    cov_floor: f64,
) -> Result<ComponentParams, VgmmError> {
    let stats = sufficient_stats(data, resp, prior);
    let k = resp.ncols();
    let d = prior.dim();
    let mut alpha = Vec::with_capacity(k);
    let mut beta = Vec::with_capacity(k);
    let mut means = Vec::with_capacity(k);
    let mut scales = Vec::with_capacity(k);
    let mut dof = Vec::with_capacity(k);
    for j in 0..k {
        let nj = stats.mass[j];
        let bj = prior.beta0() + nj;
        let mj = (prior.m0() * prior.beta0() + &stats.mean[j] * nj) / bj;

        let mut w_inv = prior.w0_inv().clone();
        w_inv += &stats.scatter[j] * nj;
        let dev = &stats.mean[j] - prior.m0();
        w_inv.ger(prior.beta0() * nj / (prior.beta0() + nj), &dev, &dev, 1.0);
        if cov_floor > 0.0 {
            for i in 0..d {
                w_inv[(i, i)] += cov_floor;
            }
        }
        let chol = w_inv
            .cholesky()
            .ok_or(VgmmError::DegenerateCovariance { component: j })?;
        scales.push(chol.inverse());
        alpha.push(prior.alpha0() + nj);
        beta.push(bj);
        means.push(mj);
        dof.push(prior.nu0() + nj);
    }
    Ok(ComponentParams {
        alpha,
        beta,
        means,
        scales,
        dof,
    })
}

fn expected_log_pi(alpha: &[f64]) -> Vec<f64> {
    let total: f64 = alpha.iter().sum();
    let psi_total = digamma(total);
    alpha.iter().map(|&a| digamma(a) - psi_total).collect()
}

fn expected_log_det_precision(scale: &DMatrix<f64>, nu: f64) -> Result<f64, VgmmError> {
    let d = scale.nrows();
    let ln_det = ln_det_from_spd(scale).ok_or(VgmmError::ScaleNotSpd)?;
    let mut value = d as f64 * std::f64::consts::LN_2 + ln_det;
    for l in 1..=d {
        value += digamma(0.5 * (nu + 1.0 - l as f64));
    }
    Ok(value)
}

/// Responsibility block: softmax over expected component log densities.
fn responsibility_step(
    data: &[DVector<f64>],
    params: &ComponentParams,
) -> Result<DMatrix<f64>, VgmmError> {
    let (n, k) = (data.len(), params.alpha.len());
    let d = params.means[0].len();
    let ln_pi = expected_log_pi(&params.alpha);
    let mut ln_lambda = Vec::with_capacity(k);
    for (scale, &nu) in params.scales.iter().zip(&params.dof) {
        ln_lambda.push(expected_log_det_precision(scale, nu)?);
    }
    let mut resp = DMatrix::zeros(n, k);
    let mut log_rho = vec![0.0; k];
    let mut centered = DVector::zeros(d);
    for (i, x) in data.iter().enumerate() {
        for j in 0..k {
            centered.copy_from(x);
            centered -= &params.means[j];
            let quad = centered.dot(&(&params.scales[j] * &centered));
            log_rho[j] = ln_pi[j] + 0.5 * ln_lambda[j]
                - 0.5 * (d as f64) * LN_2PI
                - 0.5 * (d as f64 / params.beta[j] + params.dof[j] * quad);
        }
        let max = log_rho.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
        let mut total = 0.0;
        for j in 0..k {
            let e = (log_rho[j] - max).exp();
            resp[(i, j)] = e;
            total += e;
        }
        for j in 0..k {
            resp[(i, j)] /= total;
        }
    }
    Ok(resp)
}

fn ln_dirichlet_norm(alpha: &[f64]) -> f64 {
    let total: f64 = alpha.iter().sum();
    ln_gamma(total) - alpha.iter().map(|&a| ln_gamma(a)).sum::<f64>()
}

fn ln_wishart_norm(scale: &DMatrix<f64>, nu: f64, ln_det: f64) -> f64 {
    let d = scale.nrows() as f64;
    let mut ln_gamma_d = 0.25 * d * (d - 1.0) * std::f64::consts::PI.ln();
    for l in 1..=scale.nrows() {
        ln_gamma_d += ln_gamma(0.5 * (nu + 1.0 - l as f64));
    }
    -0.5 * nu * ln_det - 0.5 * nu * d * std::f64::consts::LN_2 - ln_gamma_d
}

/// Evidence lower bound of a state against the data and prior, evaluated
/// from scratch (expected log joint minus variational entropies).
pub fn elbo(
    state: &GmmVarState,
    data: &[DVector<f64>],
    prior: &GmmPrior,
) -> Result<f64, VgmmError> {
    let k = state.component_count();
    let d = prior.dim();
    let stats = sufficient_stats(data, &state.resp, prior);
    let ln_pi = expected_log_pi(&state.alpha);

    let mut ln_det = Vec::with_capacity(k);
    let mut ln_lambda = Vec::with_capacity(k);
    for j in 0..k {
        let det = ln_det_from_spd(&state.scales[j]).ok_or(VgmmError::ScaleNotSpd)?;
        ln_det.push(det);
        ln_lambda.push(expected_log_det_precision(&state.scales[j], state.dof[j])?);
    }

    // Expected log likelihood.
    let mut t_likelihood = 0.0;
    for (j, &lnl) in ln_lambda.iter().enumerate() {
        let dev = &stats.mean[j] - &state.means[j];
        let quad = dev.dot(&(&state.scales[j] * &dev));
        let trace = (&stats.scatter[j] * &state.scales[j]).trace();
        t_likelihood += 0.5
            * stats.mass[j]
            * (lnl
                - d as f64 / state.beta[j]
                - state.dof[j] * trace
                - state.dof[j] * quad
                - d as f64 * LN_2PI);
    }

    // Expected log prior and entropy of the allocations.
    let mut t_alloc = 0.0;
    let mut h_alloc = 0.0;
    for i in 0..state.resp.nrows() {
        for (j, &lp) in ln_pi.iter().enumerate() {
            let r = state.resp[(i, j)];
            if r > 0.0 {
                t_alloc += r * lp;
                h_alloc += r * r.ln();
            }
        }
    }

    // Dirichlet prior vs variational Dirichlet.
    let alpha0_vec = vec![prior.alpha0(); k];
    let sum_ln_pi: f64 = ln_pi.iter().sum();
    let t_weights = ln_dirichlet_norm(&alpha0_vec) + (prior.alpha0() - 1.0) * sum_ln_pi;
    let h_weights = ln_dirichlet_norm(&state.alpha)
        + state
            .alpha
            .iter()
            .zip(&ln_pi)
            .map(|(&a, &lp)| (a - 1.0) * lp)
            .sum::<f64>();

    // Normal-Wishart prior term.
    let mut t_params = 0.0;
    for (j, &lnl) in ln_lambda.iter().enumerate() {
        let dev = &state.means[j] - prior.m0();
        let quad = dev.dot(&(&state.scales[j] * &dev));
        t_params += 0.5
            * (d as f64 * (prior.beta0() / (2.0 * std::f64::consts::PI)).ln() + lnl
                - d as f64 * prior.beta0() / state.beta[j]
                - prior.beta0() * state.dof[j] * quad);
        t_params += 0.5 * (prior.nu0() - d as f64 - 1.0) * lnl
            - 0.5 * state.dof[j] * (prior.w0_inv() * &state.scales[j]).trace();
    }
    t_params += k as f64 * ln_wishart_norm(prior.w0(), prior.nu0(), prior.ln_det_w0());

    // Normal-Wishart variational entropy (negated expectation of ln q).
    let mut h_params = 0.0;
    for (j, &lnl) in ln_lambda.iter().enumerate() {
        let wishart_entropy = -ln_wishart_norm(&state.scales[j], state.dof[j], ln_det[j])
            - 0.5 * (state.dof[j] - d as f64 - 1.0) * lnl
            + 0.5 * state.dof[j] * d as f64;
        h_params += 0.5 * lnl
            + 0.5 * d as f64 * (state.beta[j] / (2.0 * std::f64::consts::PI)).ln()
            - 0.5 * d as f64
            - wishart_entropy;
    }

    let value = t_likelihood + t_alloc + t_weights + t_params - h_alloc - h_weights - h_params;
    if !value.is_finite() {
        return Err(VgmmError::NonFiniteElbo);
    }
    Ok(value)
}

fn validate_data(data: &[DVector<f64>], k: usize) -> Result<usize, VgmmError> {
    if k == 0 {
        return Err(VgmmError::ZeroComponents);
    }
    if data.len() < k {
        return Err(VgmmError::TooFewPoints {
            required: k,
            got: data.len(),
        });
    }
    let d = data[0].len();
    if d == 0 {
        return Err(VgmmError::DimensionMismatch {
            index: 0,
            expected: 1,
            got: 0,
        });
    }
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
    Ok(d)
}

/// Initial responsibilities: draw `k` distinct data points as provisional
/// centers, one-hot assign every observation to its nearest center, then
/// soften by mixing with the uniform row at ratio 0.9/0.1.
fn init_responsibilities(data: &[DVector<f64>], k: usize, seed: u64) -> DMatrix<f64> {
    let n = data.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let centers = rand::seq::index::sample(&mut rng, n, k).into_vec();
    let mut resp = DMatrix::from_element(n, k, 0.1 / k as f64);
    for (i, x) in data.iter().enumerate() {
        let mut best = 0usize;
        let mut best_dist = f64::INFINITY;
        for (j, &c) in centers.iter().enumerate() {
            let dist = (x - &data[c]).norm_squared();
            if dist < best_dist {
                best = j;
                best_dist = dist;
            }
        }
        resp[(i, best)] += 0.9;
    }
    resp
}

fn splitmix64(state: u64) -> u64 {
    let mut z = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub(crate) fn mix_seed(seed: u64, stream: u64) -> u64 {
    splitmix64(seed ^ splitmix64(stream))
}

/// Runs coordinate ascent from explicit initial responsibilities until the
/// relative lower-bound change falls below `rel_tol` or `max_iter` sweeps.
pub fn cavi_fit_with_init(
    data: &[DVector<f64>],
    k: usize,
    prior: &GmmPrior,
    config: &CaviConfig,
    init_resp: DMatrix<f64>,
) -> Result<GmmFit, VgmmError> {
    config.validate()?;
    validate_data(data, k)?;
    let mut resp = init_resp;
    let mut trace = Vec::new();
    let mut state = None;
    for _ in 0..config.max_iter {
        let params = parameter_step(data, &resp, prior, config.cov_floor)?;
        resp = responsibility_step(data, &params)?;
        let candidate = GmmVarState {
            alpha: params.alpha,
            beta: params.beta,
            means: params.means,
            scales: params.scales,
            dof: params.dof,
            resp: resp.clone(),
        };
        let bound = elbo(&candidate, data, prior)?;
        state = Some(candidate);
        let done = trace
            .last()
            .is_some_and(|prev: &f64| (bound - prev).abs() < config.rel_tol * bound.abs());
        trace.push(bound);
        if done {
            break;
        }
    }
    Ok(GmmFit {
        state: state.expect("at least one sweep"),
        best_restart: 0,
        elbo_traces: vec![trace],
    })
}

/// Fits one mixture candidate: over `restarts` seeded initializations,
/// returns the run with the highest final lower bound, keeping every
/// restart's bound history.
pub fn cavi_fit(
    data: &[DVector<f64>],
    k: usize,
    prior: &GmmPrior,
    config: &CaviConfig,
) -> Result<GmmFit, VgmmError> {
    config.validate()?;
    validate_data(data, k)?;
    let mut best: Option<(usize, f64, GmmVarState)> = None;
    let mut traces = Vec::with_capacity(config.restarts);
    for restart in 0..config.restarts {
        let seed = mix_seed(config.seed, restart as u64);
        let init = init_responsibilities(data, k, seed);
        let fit = cavi_fit_with_init(data, k, prior, config, init)?;
        let bound = fit.final_elbo();
        traces.push(fit.elbo_traces.into_iter().next().expect("one trace"));
        if best.as_ref().is_none_or(|(_, b, _)| bound > *b) {
            best = Some((restart, bound, fit.state));
        }
    }
    let (best_restart, _, state) = best.expect("restarts >= 1");
    Ok(GmmFit {
        state,
        best_restart,
        elbo_traces: traces,
    })
}
