//! k-nearest-neighbor regression.

use crate::data::RegressionData;
use crate::error::ErmError;

fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Predicts each query row as the unweighted mean of the `k_nbr` training
/// responses nearest in Euclidean distance. Distance ties break toward the
/// lower training index, so predictions are deterministic.
pub fn knn_predict(
    train: &RegressionData,
    query: &[Vec<f64>],
    k_nbr: usize,
) -> Result<Vec<f64>, ErmError> {
    let n = train.len();
    if k_nbr == 0 || k_nbr > n {
        return Err(ErmError::NeighborCountOutOfRange { k_nbr, n_train: n });
    }
    let mut out = Vec::with_capacity(query.len());
    let mut order: Vec<usize> = Vec::new();
    for q in query {
        if q.len() != train.dim() {
            return Err(ErmError::RaggedRow {
                index: out.len(),
                expected: train.dim(),
                got: q.len(),
            });
        }
        order.clear();
        order.extend(0..n);
        let dist: Vec<f64> = train
            .features()
            .iter()
            .map(|row| squared_distance(q, row))
            .collect();
        let by_distance_then_index =
            |&a: &usize, &b: &usize| dist[a].total_cmp(&dist[b]).then(a.cmp(&b));
        if k_nbr < n {
            order.select_nth_unstable_by(k_nbr - 1, by_distance_then_index);
        }
        // Sum the selected responses in ascending training-index order so
        // the result does not depend on the selection algorithm's internal
        // ordering of the prefix.
        order[..k_nbr].sort_unstable();
        let mean = order[..k_nbr]
            .iter()
            .map(|&i| train.responses()[i])
            .sum::<f64>()
            / k_nbr as f64;
        out.push(mean);
    }
    Ok(out)
}

/// Sum of squared errors of predictions against responses.
pub fn sse(predictions: &[f64], responses: &[f64]) -> Result<f64, ErmError> {
    if predictions.len() != responses.len() {
        return Err(ErmError::ResponseMismatch {
            rows: predictions.len(),
            responses: responses.len(),
        });
    }
    Ok(predictions
        .iter()
        .zip(responses)
        .map(|(p, y)| (p - y) * (p - y))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn toy_data() -> RegressionData {
        RegressionData::new(
            vec![
                vec![0.0, 0.0],
                vec![1.0, 0.0],
                vec![0.0, 1.0],
                vec![2.0, 2.0],
            ],
            vec![1.0, 2.0, 3.0, 10.0],
        )
        .unwrap()
    }

    #[test]
    fn all_neighbors_returns_the_training_mean() {
        let train = toy_data();
        let preds = knn_predict(&train, &[vec![5.0, -3.0]], 4).unwrap();
        assert_eq!(preds, vec![4.0]);
    }

    #[test]
    fn single_neighbor_recovers_the_training_response() {
        let train = toy_data();
        let preds = knn_predict(&train, &[vec![1.0, 0.0]], 1).unwrap();
        assert_eq!(preds, vec![2.0]);
    }

    #[test]
    fn distance_ties_break_toward_lower_index() {
        // Query equidistant from rows 1 and 2; with k = 1 the lower index wins.
        let train = RegressionData::new(
            vec![vec![-5.0], vec![1.0], vec![-1.0]],
            vec![100.0, 7.0, 9.0],
        )
        .unwrap();
        let preds = knn_predict(&train, &[vec![0.0]], 1).unwrap();
        assert_eq!(preds, vec![7.0]);
    }

    #[test]
    fn permuting_query_rows_permutes_predictions() {
        let train = toy_data();
        let q1 = vec![vec![0.1, 0.2], vec![1.5, 1.5], vec![-1.0, 0.0]];
        let q2 = vec![q1[2].clone(), q1[0].clone(), q1[1].clone()];
        let p1 = knn_predict(&train, &q1, 2).unwrap();
        let p2 = knn_predict(&train, &q2, 2).unwrap();
        assert_eq!(p2, vec![p1[2], p1[0], p1[1]]);
    }

    #[test]
    fn matches_exhaustive_sort_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let x: Vec<Vec<f64>> = (0..20)
            .map(|_| (0..3).map(|_| rng.random_range(-1.0..1.0)).collect())
            .collect();
        let y: Vec<f64> = (0..20).map(|_| rng.random_range(-5.0..5.0)).collect();
        let train = RegressionData::new(x, y).unwrap();
        let query: Vec<Vec<f64>> = (0..15)
            .map(|_| (0..3).map(|_| rng.random_range(-1.0..1.0)).collect())
            .collect();
        for k in [1usize, 3, 7, 20] {
            let fast = knn_predict(&train, &query, k).unwrap();
            // Oracle: full pairwise-distance sort, prefix mean.
            for (qi, q) in query.iter().enumerate() {
                let mut pairs: Vec<(f64, usize)> = train
                    .features()
                    .iter()
                    .enumerate()
                    .map(|(i, row)| (squared_distance(q, row), i))
                    .collect();
                pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
                let mut chosen: Vec<usize> = pairs[..k].iter().map(|&(_, i)| i).collect();
                chosen.sort_unstable();
                let mean = chosen.iter().map(|&i| train.responses()[i]).sum::<f64>() / k as f64;
                assert_eq!(fast[qi], mean, "query {qi} with k = {k}");
            }
        }
    }

    #[test]
    fn neighbor_count_bounds_are_enforced() {
        let train = toy_data();
        assert!(knn_predict(&train, &[vec![0.0, 0.0]], 0).is_err());
        assert!(knn_predict(&train, &[vec![0.0, 0.0]], 5).is_err());
    }
}
