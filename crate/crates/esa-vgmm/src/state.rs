//! Variational parameters of one mixture candidate.

use nalgebra::{DMatrix, DVector};

/// Mean-field state: Dirichlet concentrations, Normal-Wishart parameters
/// per component, and the responsibility matrix (one simplex row per
/// observation).
#[derive(Debug, Clone)]
pub struct GmmVarState {
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    pub means: Vec<DVector<f64>>,
    /// Wishart scale matrices `W_j` (not their inverses).
    pub scales: Vec<DMatrix<f64>>,
    pub dof: Vec<f64>,
    /// `n x K` responsibilities.
    pub resp: DMatrix<f64>,
}

impl GmmVarState {
    pub fn component_count(&self) -> usize {
        self.alpha.len()
    }

    pub fn dim(&self) -> usize {
        self.means.first().map_or(0, |m| m.len())
    }

    pub fn observation_count(&self) -> usize {
        self.resp.nrows()
    }

    /// Hard assignment per observation: the argmax responsibility, with
    /// ties broken toward the lowest component index.
    pub fn labels(&self) -> Vec<usize> {
        let (n, k) = (self.resp.nrows(), self.resp.ncols());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut best = 0usize;
            for j in 1..k {
                if self.resp[(i, j)] > self.resp[(i, best)] {
                    best = j;
                }
            }
            out.push(best);
        }
        out
    }

    /// Permutes the components by `perm` (new position `j` takes old
    /// component `perm[j]`), reordering responsibility columns to match.
    pub fn permuted(&self, perm: &[usize]) -> GmmVarState {
        let k = self.component_count();
        assert_eq!(perm.len(), k);
        let n = self.resp.nrows();
        let mut resp = DMatrix::zeros(n, k);
        for (new_j, &old_j) in perm.iter().enumerate() {
            for i in 0..n {
                resp[(i, new_j)] = self.resp[(i, old_j)];
            }
        }
        GmmVarState {
            alpha: perm.iter().map(|&j| self.alpha[j]).collect(),
            beta: perm.iter().map(|&j| self.beta[j]).collect(),
            means: perm.iter().map(|&j| self.means[j].clone()).collect(),
            scales: perm.iter().map(|&j| self.scales[j].clone()).collect(),
            dof: perm.iter().map(|&j| self.dof[j]).collect(),
            resp,
        }
    }
}
