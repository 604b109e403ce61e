//! Scalar model-selection criteria.

use crate::error::ErmError;

/// Corrected Akaike information criterion:
/// `n log(SSE/n) + 2 df + 2 df (df + 1) / (n - df - 1)`.
///
/// `df` is the effective degrees of freedom; for k-nearest-neighbor
/// regression the caller supplies `n / k_nbr`. A zero SSE means the model
/// interpolates its training data and the criterion diverges; that is an
/// error, not a value.
pub fn aicc(sse: f64, df: f64, n: usize) -> Result<f64, ErmError> {
    if !sse.is_finite() || sse < 0.0 {
        return Err(ErmError::InvalidParameter {
            name: "sse",
            value: sse,
        });
    }
    if sse == 0.0 {
        return Err(ErmError::ZeroSse);
    }
    if !df.is_finite() || df < 0.0 {
        return Err(ErmError::InvalidParameter {
            name: "df",
            value: df,
        });
    }
    let nf = n as f64;
    if nf - df - 1.0 <= 0.0 {
        return Err(ErmError::DfTooLarge { df, n });
    }
    Ok(nf * (sse / nf).ln() + 2.0 * df + 2.0 * df * (df + 1.0) / (nf - df - 1.0))
}

/// Penalized empirical risk: `lambda * loss + h_k`.
pub fn mper(empirical_loss: f64, h_k: f64, lambda: f64) -> f64 {
    debug_assert!(h_k >= 0.0);
    lambda * empirical_loss + h_k
}

/// Penalty sequence proportional to a supplied effective dimension:
/// `4 * df_k * log(3n)`, the parametric-covering form. For ladders without
/// an exact parameter dimension this is a heuristic; the caller is
/// responsible for passing a nondecreasing `df` sequence.
pub fn covering_penalty(df: &[f64], n: usize) -> Vec<f64> {
    let scale = 4.0 * (3.0 * n as f64).ln();
    df.iter().map(|d| scale * d).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aicc_direct_substitution() {
        // n = 100, SSE = 100, df = 10: 0 + 20 + 220/89.
        let value = aicc(100.0, 10.0, 100).unwrap();
        assert!((value - (20.0 + 220.0 / 89.0)).abs() < 1e-12);
        assert!((value - 22.471_910_112_359_55).abs() < 1e-12);
    }

    #[test]
    fn aicc_reduces_to_log_likelihood_term_without_df() {
        let value = aicc(50.0, 0.0, 25).unwrap();
        assert!((value - 25.0 * (2.0f64).ln()).abs() < 1e-12);
    }

    #[test]
    fn aicc_rejects_interpolation_and_saturated_df() {
        assert!(matches!(aicc(0.0, 1.0, 10), Err(ErmError::ZeroSse)));
        assert!(matches!(
            aicc(1.0, 9.0, 10),
            Err(ErmError::DfTooLarge { .. })
        ));
        assert!(aicc(-1.0, 1.0, 10).is_err());
    }

    #[test]
    fn aicc_matches_formula_on_random_inputs() {
        let cases = [
            (3.5, 2.0, 12usize),
            (120.0, 30.0, 400),
            (0.77, 12.5, 50),
            (1e6, 1.0, 1000),
        ];
        for (sse, df, n) in cases {
            let nf = n as f64;
            let direct = nf * (sse / nf).ln() + 2.0 * df + 2.0 * df * (df + 1.0) / (nf - df - 1.0);
            assert_eq!(aicc(sse, df, n).unwrap(), direct);
        }
    }

    #[test]
    fn mper_is_affine_in_the_loss() {
        assert_eq!(mper(5.0, 0.0, 1.0), 5.0);
        assert_eq!(mper(2.0, 3.0, 0.5), 4.0);
        // Additivity in the loss argument.
        let (a, b, h, lambda) = (1.7, 2.4, 0.9, 0.3);
        assert!((mper(a, h, lambda) + mper(b, 0.0, lambda) - mper(a + b, h, lambda)).abs() < 1e-15);
    }

    #[test]
    fn covering_penalty_scales_with_dimension() {
        let h = covering_penalty(&[1.0, 2.0, 4.0], 100);
        let unit = 4.0 * 300.0f64.ln();
        assert_eq!(h, vec![unit, 2.0 * unit, 4.0 * unit]);
    }
}
