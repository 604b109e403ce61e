//! Property tests for the aggregation engine's contractual invariants.

use esa_core::{
    aggregate_points, exp_weights, run_esa, run_full, select_best, EsaError, LadderSpec,
    MarginMode, StopRule, Traversal,
};
use proptest::prelude::*;

fn finite_trace() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0e6..1.0e6f64, 1..24)
}

fn strictly_decreasing_trace() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(1.0e-6..1.0e3f64, 2..24).prop_map(|gaps| {
        let mut v = Vec::with_capacity(gaps.len());
        let mut current = 0.0;
        for g in gaps {
            current -= g;
            v.push(current);
        }
        v
    })
}

fn eval_of(trace: &[f64]) -> impl FnMut(usize) -> Result<(f64, usize), EsaError> + '_ {
    move |k| Ok((trace[k - 1], k))
}

proptest! {
    #[test]
    fn weights_form_a_simplex(trace in finite_trace()) {
        let w = exp_weights(&trace).unwrap();
        let sum: f64 = w.iter().sum();
        prop_assert!((sum - 1.0).abs() < 1e-12);
        for wi in &w {
            prop_assert!((0.0..=1.0).contains(wi));
        }
    }

    #[test]
    fn zero_delta_stop_and_weights_are_shift_invariant(
        trace in finite_trace(),
        shift in -1.0e6..1.0e6f64,
    ) {
        let ladder = LadderSpec::new(trace.len()).unwrap();
        let rule = StopRule::default();
        let shifted: Vec<f64> = trace.iter().map(|c| c + shift).collect();

        let base = run_esa(&mut eval_of(&trace), &ladder, &rule).unwrap();
        let moved = run_esa(&mut eval_of(&shifted), &ladder, &rule).unwrap();
        prop_assert_eq!(base.stop_index, moved.stop_index);
        for (a, b) in base.weights.iter().zip(&moved.weights) {
            prop_assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn strictly_decreasing_traces_make_esa_and_full_identical(
        trace in strictly_decreasing_trace(),
    ) {
        let ladder = LadderSpec::new(trace.len()).unwrap();
        let esa = run_esa(&mut eval_of(&trace), &ladder, &StopRule::default()).unwrap();
        let full = run_full(&mut eval_of(&trace), &ladder).unwrap();
        prop_assert_eq!(esa.stop_index, full.stop_index);
        prop_assert_eq!(esa.trace.values(), full.trace.values());
        for (a, b) in esa.weights.iter().zip(&full.weights) {
            prop_assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn stop_index_matches_scan_of_the_loop_rule(trace in finite_trace()) {
        let ladder = LadderSpec::new(trace.len()).unwrap();
        let result = run_esa(&mut eval_of(&trace), &ladder, &StopRule::default()).unwrap();
        // Independent scan: first m >= 2 with a strict increase, else M.
        let mut expected = trace.len();
        for m in 1..trace.len() {
            if trace[m - 1] < trace[m] {
                expected = m + 1;
                break;
            }
        }
        prop_assert_eq!(result.stop_index, expected);
    }

    #[test]
    fn evaluator_is_called_exactly_stop_index_times(trace in finite_trace()) {
        let ladder = LadderSpec::new(trace.len()).unwrap();
        let mut calls = 0usize;
        let mut eval = |k: usize| {
            calls += 1;
            Ok((trace[k - 1], ()))
        };
        let result = run_esa(&mut eval, &ladder, &StopRule::default()).unwrap();
        prop_assert_eq!(calls, result.stop_index);

        calls = 0;
        let mut eval = |k: usize| {
            calls += 1;
            Ok((trace[k - 1], ()))
        };
        run_full(&mut eval, &ladder).unwrap();
        prop_assert_eq!(calls, trace.len());
    }

    #[test]
    fn backward_traversal_mirrors_forward(trace in finite_trace()) {
        let m = trace.len();
        let ladder = LadderSpec::new(m).unwrap();
        let forward = run_esa(&mut eval_of(&trace), &ladder, &StopRule::default()).unwrap();

        let reversed: Vec<f64> = trace.iter().rev().copied().collect();
        let backward_rule =
            StopRule::new(0.0, MarginMode::Additive, Traversal::Backward).unwrap();
        let backward = run_esa(&mut eval_of(&reversed), &ladder, &backward_rule).unwrap();

        // Walking the reversed trace backward replays the forward walk, so
        // the same number of models is evaluated and the last ladder index
        // reached is the mirror image of the forward stop index.
        prop_assert_eq!(backward.stop_index, forward.stop_index);
        prop_assert_eq!(
            *backward.model_indices.last().unwrap(),
            m + 1 - forward.stop_index
        );
    }

    #[test]
    fn select_best_agrees_with_linear_scan(trace in finite_trace()) {
        let picked = select_best(&trace).unwrap();
        let mut best = 1usize;
        for (i, &v) in trace.iter().enumerate() {
            if v < trace[best - 1] {
                best = i + 1;
            }
        }
        prop_assert_eq!(picked, best);
    }

    #[test]
    fn aggregation_matches_direct_dot_products(
        trace in prop::collection::vec(-50.0..50.0f64, 1..8),
        dim in 1..6usize,
        raw in prop::collection::vec(-100.0..100.0f64, 48),
    ) {
        let weights = exp_weights(&trace).unwrap();
        let points: Vec<Vec<f64>> = (0..trace.len())
            .map(|i| (0..dim).map(|j| raw[(i * dim + j) % raw.len()]).collect())
            .collect();
        let agg = aggregate_points(&weights, &points).unwrap();
        for j in 0..dim {
            let direct: f64 = weights
                .iter()
                .zip(&points)
                .map(|(w, p)| w * p[j])
                .sum();
            prop_assert!((agg[j] - direct).abs() <= 1e-13 * direct.abs().max(1.0));
        }
    }
}
