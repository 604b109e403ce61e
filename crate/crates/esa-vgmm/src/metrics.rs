//! Clustering agreement scores.
//!
//! Both scores are computed from the joint contingency table. Ordered maps
//! keep the floating-point summation order deterministic across runs.

use std::collections::BTreeMap;

use crate::error::VgmmError;

type Contingency = (
    BTreeMap<usize, u64>,
    BTreeMap<usize, u64>,
    BTreeMap<(usize, usize), u64>,
);

fn contingency(a: &[usize], b: &[usize]) -> Contingency {
    let mut rows = BTreeMap::new();
    let mut cols = BTreeMap::new();
    let mut cells = BTreeMap::new();
    for (&x, &y) in a.iter().zip(b) {
        *rows.entry(x).or_insert(0u64) += 1;
        *cols.entry(y).or_insert(0u64) += 1;
        *cells.entry((x, y)).or_insert(0u64) += 1;
    }
    (rows, cols, cells)
}

fn comb2(count: u64) -> f64 {
    let c = count as f64;
    c * (c - 1.0) / 2.0
}

fn check_lengths(a: &[usize], b: &[usize], min: usize) -> Result<(), VgmmError> {
    if a.len() != b.len() || a.len() < min {
        return Err(VgmmError::LabelLengthMismatch {
            a: a.len(),
            b: b.len(),
            min,
        });
    }
    Ok(())
}

/// Adjusted Rand index between two labelings, in `[-1, 1]`. A chance-level
/// agreement scores 0; when the adjustment denominator vanishes (both
/// partitions trivial in the same way) the score is 1 by convention.
pub fn ari(a: &[usize], b: &[usize]) -> Result<f64, VgmmError> {
    check_lengths(a, b, 2)?;
    let (rows, cols, cells) = contingency(a, b);
    let index: f64 = cells.values().map(|&c| comb2(c)).sum();
    let sum_rows: f64 = rows.values().map(|&c| comb2(c)).sum();
    let sum_cols: f64 = cols.values().map(|&c| comb2(c)).sum();
    let total = comb2(a.len() as u64);
    let expected = sum_rows * sum_cols / total;
    let max_index = 0.5 * (sum_rows + sum_cols);
    let denom = max_index - expected;
    if denom == 0.0 {
        Ok(1.0)
    } else {
        Ok((index - expected) / denom)
    }
}

fn entropy(counts: &BTreeMap<usize, u64>, n: f64) -> f64 {
    counts
        .values()
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.ln()
        })
        .sum()
}

/// Normalized mutual information: mutual information divided by the
/// arithmetic mean of the two label entropies, in `[0, 1]`. Defined as 1
/// when both entropies vanish.
pub fn nmi(a: &[usize], b: &[usize]) -> Result<f64, VgmmError> {
    check_lengths(a, b, 1)?;
    let n = a.len() as f64;
    let (rows, cols, cells) = contingency(a, b);
    let h_a = entropy(&rows, n);
    let h_b = entropy(&cols, n);
    let mean = 0.5 * (h_a + h_b);
    if mean == 0.0 {
        return Ok(1.0);
    }
    let mut mi = 0.0;
    for (&(x, y), &c) in &cells {
        let joint = c as f64 / n;
        let px = rows[&x] as f64 / n;
        let py = cols[&y] as f64 / n;
        mi += joint * (joint / (px * py)).ln();
    }
    Ok((mi / mean).clamp(0.0, 1.0))
}
