//! Partition agreement (adjusted Rand index), most-common-answer consensus,
//! and confusion matrices.

use std::collections::HashMap;

use crate::alternation::RunResult;
use crate::assignment::Assignment;
use crate::error::{Result, SegError};

fn comb2(n: u64) -> f64 {
    (n as f64) * (n as f64 - 1.0) / 2.0
}

/// Adjusted Rand index between two labelings of the same points.
///
/// Returns 1.0 when the chance-corrected denominator vanishes (both partitions
/// trivial and identical up to relabeling).
pub fn ari(a: &Assignment, b: &Assignment) -> Result<f64> {
    if a.len() != b.len() {
        return Err(SegError::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let n = a.len() as u64;
    let mut pairs: HashMap<(usize, usize), u64> = HashMap::new();
    let mut rows: HashMap<usize, u64> = HashMap::new();
    let mut cols: HashMap<usize, u64> = HashMap::new();
    for (&x, &y) in a.labels().iter().zip(b.labels()) {
        *pairs.entry((x, y)).or_default() += 1;
        *rows.entry(x).or_default() += 1;
        *cols.entry(y).or_default() += 1;
    }
    // integer sums keep the result symmetric bit-for-bit
    let index: u64 = pairs.values().map(|&v| v * v.saturating_sub(1) / 2).sum();
    let sum_a: u64 = rows.values().map(|&v| v * v.saturating_sub(1) / 2).sum();
    let sum_b: u64 = cols.values().map(|&v| v * v.saturating_sub(1) / 2).sum();
    let total = comb2(n);
    if total == 0.0 {
        return Ok(1.0);
    }
    let expected = sum_a as f64 * sum_b as f64 / total;
    let max_index = 0.5 * (sum_a as f64 + sum_b as f64);
    let denominator = max_index - expected;
    let numerator = index as f64 - expected;
    if denominator == 0.0 {
        return Ok(if numerator == 0.0 { 1.0 } else { 0.0 });
    }
    Ok(numerator / denominator)
}

/// Mean ARI of each result against all the others (1.0 for a single result).
pub fn mean_pairwise_ari(assignments: &[&Assignment]) -> Result<Vec<f64>> {
    let k = assignments.len();
    let mut sums = vec![0.0; k];
    for i in 0..k {
        for j in i + 1..k {
            let v = ari(assignments[i], assignments[j])?;
            sums[i] += v;
            sums[j] += v;
        }
    }
    if k <= 1 {
        return Ok(vec![1.0; k]);
    }
    Ok(sums.into_iter().map(|s| s / (k - 1) as f64).collect())
}

/// Index of the most common answer: highest mean ARI, then lower cost, then lower seed.
pub fn consensus_index(results: &[&RunResult]) -> Result<usize> {
    if results.is_empty() {
        return Err(SegError::InvalidConstraints(
            "consensus over zero results".into(),
        ));
    }
    let assignments: Vec<&Assignment> = results.iter().map(|r| &r.assignment).collect();
    let means = mean_pairwise_ari(&assignments)?;
    let mut best = 0;
    for i in 1..results.len() {
        let key = (means[i], results[i].cost, results[i].seed);
        let cur = (means[best], results[best].cost, results[best].seed);
        let better = key.0 > cur.0
            || (key.0 == cur.0 && (key.1 < cur.1 || (key.1 == cur.1 && key.2 < cur.2)));
        if better {
            best = i;
        }
    }
    Ok(best)
}

/// The result with the highest mean pairwise ARI against the rest.
pub fn consensus(results: &[RunResult]) -> Result<RunResult> {
    let refs: Vec<&RunResult> = results.iter().collect();
    Ok(results[consensus_index(&refs)?].clone())
}

/// `counts[i][j] = |{t : pred_t = i, truth_t = j}|`, sized by the largest label on each side.
pub fn confusion_matrix(pred: &Assignment, truth: &Assignment) -> Result<Vec<Vec<usize>>> {
    if pred.len() != truth.len() {
        return Err(SegError::LengthMismatch {
            left: pred.len(),
            right: truth.len(),
        });
    }
    let rows = pred.labels().iter().max().map_or(0, |m| m + 1);
    let cols = truth.labels().iter().max().map_or(0, |m| m + 1);
    let mut counts = vec![vec![0; cols]; rows];
    for (&p, &t) in pred.labels().iter().zip(truth.labels()) {
        counts[p][t] += 1;
    }
    Ok(counts)
}
