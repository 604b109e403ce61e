//! Regression data, the neighbor-count ladder, and criterion selection.

use crate::error::ErmError;

/// A fixed design matrix with responses.
#[derive(Debug, Clone)]
pub struct RegressionData {
    x: Vec<Vec<f64>>,
    y: Vec<f64>,
}

impl RegressionData {
    pub fn new(x: Vec<Vec<f64>>, y: Vec<f64>) -> Result<Self, ErmError> {
        if x.len() < 2 {
            return Err(ErmError::TooFewRows(x.len()));
        }
        if x.len() != y.len() {
            return Err(ErmError::ResponseMismatch {
                rows: x.len(),
                responses: y.len(),
            });
        }
        let p = x[0].len();
        for (index, row) in x.iter().enumerate() {
            if row.len() != p {
                return Err(ErmError::RaggedRow {
                    index,
                    expected: p,
                    got: row.len(),
                });
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(ErmError::NonFiniteData);
            }
        }
        if y.iter().any(|v| !v.is_finite()) {
            return Err(ErmError::NonFiniteData);
        }
        Ok(RegressionData { x, y })
    }

    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.x.first().map_or(0, Vec::len)
    }

    pub fn features(&self) -> &[Vec<f64>] {
        &self.x
    }

    pub fn responses(&self) -> &[f64] {
        &self.y
    }

    /// Row subset by index (used for train/validation splits).
    pub(crate) fn subset(&self, indices: &[usize]) -> RegressionData {
        RegressionData {
            x: indices.iter().map(|&i| self.x[i].clone()).collect(),
            y: indices.iter().map(|&i| self.y[i]).collect(),
        }
    }
}

/// The neighbor-count ladder. Position 1 holds the smallest count; walking
/// the ladder moves toward heavier smoothing.
#[derive(Debug, Clone)]
pub struct KnnLadderSpec {
    counts: Vec<usize>,
}

impl KnnLadderSpec {
    pub fn new(counts: Vec<usize>) -> Result<Self, ErmError> {
        if counts.is_empty() || counts[0] == 0 {
            return Err(ErmError::LadderNotIncreasing);
        }
        if counts.windows(2).any(|w| w[1] <= w[0]) {
            return Err(ErmError::LadderNotIncreasing);
        }
        Ok(KnnLadderSpec { counts })
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Every count must be servable by `n_train` rows.
    pub fn validate_for(&self, n_train: usize) -> Result<(), ErmError> {
        let max = *self.counts.last().expect("nonempty ladder");
        if max > n_train {
            return Err(ErmError::NeighborCountOutOfRange {
                k_nbr: max,
                n_train,
            });
        }
        Ok(())
    }
}

impl Default for KnnLadderSpec {
    fn default() -> Self {
        KnnLadderSpec {
            counts: vec![1, 3, 5, 10, 20, 40, 80, 160],
        }
    }
}

/// Which criterion scores a ladder position.
#[derive(Debug, Clone)]
pub enum CriterionKind {
    /// Corrected Akaike information criterion on training residuals.
    Aicc,
    /// Sample splitting: fit on a training part, score
    /// `alpha * SSE` on the held-out part.
    ValidationSse {
        split_fraction: f64,
        seed: u64,
        alpha: f64,
    },
    /// Penalized training loss `lambda * SSE + H_k` with a nondecreasing
    /// nonnegative penalty per ladder position.
    Penalized { h: Vec<f64>, lambda: f64 },
}

impl CriterionKind {
    pub(crate) fn validate(&self, model_count: usize) -> Result<(), ErmError> {
        match self {
            CriterionKind::Aicc => Ok(()),
            CriterionKind::ValidationSse {
                split_fraction,
                alpha,
                ..
            } => {
                if !split_fraction.is_finite() || *split_fraction <= 0.0 || *split_fraction >= 1.0 {
                    return Err(ErmError::InvalidParameter {
                        name: "split_fraction",
                        value: *split_fraction,
                    });
                }
                if !alpha.is_finite() || *alpha <= 0.0 {
                    return Err(ErmError::InvalidParameter {
                        name: "alpha",
                        value: *alpha,
                    });
                }
                Ok(())
            }
            CriterionKind::Penalized { h, lambda } => {
                if !lambda.is_finite() || *lambda <= 0.0 {
                    return Err(ErmError::InvalidParameter {
                        name: "lambda",
                        value: *lambda,
                    });
                }
                if h.len() != model_count {
                    return Err(ErmError::InvalidPenalty("length must match the ladder"));
                }
                if h.iter().any(|v| !v.is_finite() || *v < 0.0) {
                    return Err(ErmError::InvalidPenalty("entries must be finite and >= 0"));
                }
                if h.windows(2).any(|w| w[1] < w[0]) {
                    return Err(ErmError::InvalidPenalty("entries must be nondecreasing"));
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ladder_default_matches_reference_counts() {
        assert_eq!(
            KnnLadderSpec::default().counts(),
            &[1, 3, 5, 10, 20, 40, 80, 160]
        );
    }

    #[test]
    fn ladder_rejects_non_increasing_counts() {
        assert!(KnnLadderSpec::new(vec![1, 1, 2]).is_err());
        assert!(KnnLadderSpec::new(vec![3, 2]).is_err());
        assert!(KnnLadderSpec::new(vec![0, 1]).is_err());
        assert!(KnnLadderSpec::new(vec![]).is_err());
    }

    #[test]
    fn penalty_must_be_nondecreasing() {
        let pen = CriterionKind::Penalized {
            h: vec![1.0, 0.5],
            lambda: 1.0,
        };
        assert!(pen.validate(2).is_err());
        let ok = CriterionKind::Penalized {
            h: vec![0.0, 0.0, 3.0],
            lambda: 0.5,
        };
        assert!(ok.validate(3).is_ok());
        assert!(ok.validate(2).is_err());
    }

    #[test]
    fn data_shape_is_validated() {
        assert!(RegressionData::new(vec![vec![1.0]], vec![1.0]).is_err());
        assert!(RegressionData::new(vec![vec![1.0], vec![2.0, 3.0]], vec![1.0, 2.0]).is_err());
        assert!(RegressionData::new(vec![vec![1.0], vec![2.0]], vec![1.0]).is_err());
        assert!(RegressionData::new(vec![vec![1.0], vec![f64::NAN]], vec![1.0, 2.0]).is_err());
    }
}
