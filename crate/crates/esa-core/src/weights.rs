//! Exponential aggregation weights and pointwise aggregation helpers.

use crate::error::EsaError;

/// Exponential weights over criterion values: `w_k` proportional to
/// `exp(-c_k)`, normalized onto the simplex.
///
/// Computed in shifted log space (the minimum is subtracted before
/// exponentiation), so the result is invariant to adding a constant to every
/// value and stays stable for magnitudes up to about `1e8`, where raw
/// exponentials would underflow to an all-zero vector.
pub fn exp_weights(values: &[f64]) -> Result<Vec<f64>, EsaError> {
    if values.is_empty() {
        return Err(EsaError::EmptyValues);
    }
    let mut min = f64::INFINITY;
    for (i, &v) in values.iter().enumerate() {
        if !v.is_finite() {
            return Err(EsaError::NonFiniteCriterion {
                index: i + 1,
                value: v,
            });
        }
        min = min.min(v);
    }
    let unnormalized: Vec<f64> = values.iter().map(|&v| (-(v - min)).exp()).collect();
    let total: f64 = unnormalized.iter().sum();
    Ok(unnormalized.into_iter().map(|w| w / total).collect())
}

/// Index (1-based) of the smallest criterion value; ties break toward the
/// smaller index, i.e. the simpler model.
pub fn select_best(values: &[f64]) -> Result<usize, EsaError> {
    if values.is_empty() {
        return Err(EsaError::EmptyValues);
    }
    let mut best = 0usize;
    for (i, &v) in values.iter().enumerate() {
        if !v.is_finite() {
            return Err(EsaError::NonFiniteCriterion {
                index: i + 1,
                value: v,
            });
        }
        if v < values[best] {
            best = i;
        }
    }
    Ok(best + 1)
}

/// Coordinatewise convex combination of equal-length vectors.
///
/// `weights` is expected to lie on the simplex (as produced by
/// [`exp_weights`]); the lengths of `weights` and `points` must agree, as
/// must the length of every vector in `points`.
pub fn aggregate_points(weights: &[f64], points: &[Vec<f64>]) -> Result<Vec<f64>, EsaError> {
    if weights.len() != points.len() {
        return Err(EsaError::LengthMismatch {
            expected: weights.len(),
            got: points.len(),
        });
    }
    if points.is_empty() {
        return Err(EsaError::EmptyValues);
    }
    let dim = points[0].len();
    let mut out = vec![0.0; dim];
    for (w, p) in weights.iter().zip(points) {
        if p.len() != dim {
            return Err(EsaError::LengthMismatch {
                expected: dim,
                got: p.len(),
            });
        }
        for (o, &x) in out.iter_mut().zip(p) {
            *o += w * x;
        }
    }
    Ok(out)
}
