//! Synthetic 2-D clustering benchmarks.

use nalgebra::{DMatrix, DVector, Matrix2, Vector2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

fn sample_gaussian_2d(
    mean: Vector2<f64>,
    chol: &Matrix2<f64>,
    rng: &mut ChaCha8Rng,
) -> DVector<f64> {
    let z = Vector2::new(StandardNormal.sample(rng), StandardNormal.sample(rng));
    let x = mean + chol * z;
    DVector::from_vec(vec![x[0], x[1]])
}

/// Heterogeneous three-component Gaussian mixture: weights
/// (0.35, 0.5, 0.15), means (-4,0), (0,0), (4,0), an elongated axis-aligned
/// component, a rotated one, and a tight spherical one.
pub fn gen_setting_a(n: usize, seed: u64) -> (Vec<DVector<f64>>, Vec<usize>) {
    let weights = [0.35, 0.5, 0.15];
    let means = [
        Vector2::new(-4.0, 0.0),
        Vector2::new(0.0, 0.0),
        Vector2::new(4.0, 0.0),
    ];
    let sigma1 = Matrix2::new(2.0, 0.0, 0.0, 1.0);
    let phi = std::f64::consts::PI / 3.0;
    let rot = Matrix2::new(phi.cos(), -phi.sin(), phi.sin(), phi.cos());
    let sigma2 = rot * Matrix2::new(2.0, 0.0, 0.0, 0.2) * rot.transpose();
    let sigma3 = Matrix2::new(0.15, 0.0, 0.0, 0.15);
    let chols: Vec<Matrix2<f64>> = [sigma1, sigma2, sigma3]
        .iter()
        .map(|s| s.cholesky().expect("SPD covariance").l())
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut data = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for _ in 0..n {
        let u: f64 = rng.random();
        let component = if u < weights[0] {
            0
        } else if u < weights[0] + weights[1] {
            1
        } else {
            2
        };
        data.push(sample_gaussian_2d(
            means[component],
            &chols[component],
            &mut rng,
        ));
        labels.push(component);
    }
    (data, labels)
}

/// Interleaving semicircles: a fair coin picks the branch, an angle uniform
/// on (0, pi) places the point on the upper unit semicircle or its shifted
/// reflection, and isotropic Gaussian noise with variance 0.15 per
/// coordinate is added. A Gaussian mixture misspecifies this truth.
pub fn gen_setting_b(n: usize, seed: u64) -> (Vec<DVector<f64>>, Vec<usize>) {
    let noise_std = 0.15_f64.sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut data = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for _ in 0..n {
        let branch = usize::from(rng.random::<f64>() >= 0.5);
        let phi: f64 = rng.random_range(0.0..std::f64::consts::PI);
        let mean = if branch == 0 {
            Vector2::new(phi.cos(), phi.sin())
        } else {
            Vector2::new(0.8 - phi.cos(), 0.5 - phi.sin())
        };
        let g1: f64 = StandardNormal.sample(&mut rng);
        let g2: f64 = StandardNormal.sample(&mut rng);
        data.push(DVector::from_vec(vec![
            mean[0] + noise_std * g1,
            mean[1] + noise_std * g2,
        ]));
        labels.push(branch);
    }
    (data, labels)
}

/// Stacks sampled points into an `n x d` matrix (handy for tests).
pub fn to_matrix(data: &[DVector<f64>]) -> DMatrix<f64> {
    let n = data.len();
    let d = data.first().map_or(0, |x| x.len());
    DMatrix::from_fn(n, d, |i, j| data[i][j])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn setting_a_component_frequencies() {
        let n = 100_000;
        let (_, labels) = gen_setting_a(n, 1);
        let mut counts = [0usize; 3];
        for &l in &labels {
            counts[l] += 1;
        }
        let target = [0.35, 0.5, 0.15];
        for (c, t) in counts.iter().zip(target) {
            let freq = *c as f64 / n as f64;
            assert!((freq - t).abs() < 0.01, "freq {freq} target {t}");
        }
    }

    #[test]
    fn setting_a_first_component_moments() {
        let n = 100_000;
        let (data, labels) = gen_setting_a(n, 2);
        let points: Vec<&DVector<f64>> = data
            .iter()
            .zip(&labels)
            .filter(|(_, &l)| l == 0)
            .map(|(x, _)| x)
            .collect();
        let count = points.len() as f64;
        let mean_x: f64 = points.iter().map(|p| p[0]).sum::<f64>() / count;
        let mean_y: f64 = points.iter().map(|p| p[1]).sum::<f64>() / count;
        // Component 1 std is sqrt(2) horizontally, 1 vertically.
        let tol_x = 3.0 * 2.0_f64.sqrt() / count.sqrt();
        let tol_y = 3.0 / count.sqrt();
        assert!((mean_x + 4.0).abs() < tol_x, "mean_x {mean_x}");
        assert!(mean_y.abs() < tol_y, "mean_y {mean_y}");
    }

    #[test]
    fn setting_a_third_component_covariance() {
        let n = 100_000;
        let (data, labels) = gen_setting_a(n, 3);
        let points: Vec<&DVector<f64>> = data
            .iter()
            .zip(&labels)
            .filter(|(_, &l)| l == 2)
            .map(|(x, _)| x)
            .collect();
        let count = points.len() as f64;
        let mx: f64 = points.iter().map(|p| p[0]).sum::<f64>() / count;
        let my: f64 = points.iter().map(|p| p[1]).sum::<f64>() / count;
        let mut cov = [0.0f64; 3]; // xx, yy, xy
        for p in &points {
            cov[0] += (p[0] - mx) * (p[0] - mx);
            cov[1] += (p[1] - my) * (p[1] - my);
            cov[2] += (p[0] - mx) * (p[1] - my);
        }
        for c in &mut cov {
            *c /= count;
        }
        assert!((cov[0] - 0.15).abs() < 0.015, "var_x {}", cov[0]);
        assert!((cov[1] - 0.15).abs() < 0.015, "var_y {}", cov[1]);
        assert!(cov[2].abs() < 0.015, "cov_xy {}", cov[2]);
    }

    #[test]
    fn setting_b_branch_frequency_and_radius() {
        let n = 100_000;
        let (data, labels) = gen_setting_b(n, 4);
        let zeros = labels.iter().filter(|&&l| l == 0).count() as f64;
        assert!((zeros / n as f64 - 0.5).abs() < 0.01);
        // Branch-0 points scatter around the unit circle; the noise biases
        // the mean radius upward by less than 0.2.
        let radii: Vec<f64> = data
            .iter()
            .zip(&labels)
            .filter(|(_, &l)| l == 0)
            .map(|(x, _)| (x[0] * x[0] + x[1] * x[1]).sqrt())
            .collect();
        let mean_r = radii.iter().sum::<f64>() / radii.len() as f64;
        assert!((mean_r - 1.0).abs() < 0.2, "mean radius {mean_r}");
    }

    #[test]
    fn noiseless_semicircle_means_lie_on_the_unit_circle() {
        // Construction check on the branch-0 mean curve.
        for step in 0..=16 {
            let phi = std::f64::consts::PI * step as f64 / 16.0;
            let r = (phi.cos().powi(2) + phi.sin().powi(2)).sqrt();
            assert!((r - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn generators_are_seed_deterministic() {
        let (a1, l1) = gen_setting_a(50, 9);
        let (a2, l2) = gen_setting_a(50, 9);
        assert_eq!(l1, l2);
        assert_eq!(to_matrix(&a1), to_matrix(&a2));
        let (b1, _) = gen_setting_b(50, 9);
        let (b2, _) = gen_setting_b(50, 9);
        assert_eq!(to_matrix(&b1), to_matrix(&b2));
    }
}
