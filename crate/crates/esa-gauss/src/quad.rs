//! Composite-Simpson quadrature for the per-coordinate prior integrals.

/// Integrates `f` over `[a, b]` with composite Simpson on `intervals`
/// subintervals (rounded up to an even count).
pub(crate) fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, intervals: usize) -> f64 {
    let n = if intervals.is_multiple_of(2) {
        intervals
    } else {
        intervals + 1
    };
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * h);
    }
    acc * h / 3.0
}

/// Numerically computes `-log Integral exp(-rate * (x - t)^2) phi(t) dt`
/// over `t` in `[-10, 10]`, with `phi` the standard normal density. The
/// window covers ten prior standard deviations; the integrand is
/// Gaussian-tailed, so the truncation error is far below the quadrature
/// tolerance used by the oracles.
pub(crate) fn neg_log_gauss_integral(x: f64, rate: f64, grid_points: usize) -> f64 {
    let norm = 1.0 / (2.0 * std::f64::consts::PI).sqrt();
    let integral = simpson(
        |t| (-rate * (x - t) * (x - t)).exp() * norm * (-0.5 * t * t).exp(),
        -10.0,
        10.0,
        grid_points,
    );
    -integral.ln()
}
