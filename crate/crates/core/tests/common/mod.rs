#![allow(dead_code)]

use rand::Rng;
use segdp::CostTable;

/// Minimum of `sum_t cost(t, label_t)` over every labeling whose blocks all
/// have at least `min_block` points, with at most `n_max` transitions.
/// Enumerates block partitions directly, independent of the recurrence.
pub fn brute_force_min(
    costs: &[Vec<f64>],
    n_max: usize,
    min_block: usize,
) -> Option<(f64, Vec<usize>)> {
    #[allow(clippy::too_many_arguments)]
    fn go(
        costs: &[Vec<f64>],
        start: usize,
        prev: Option<usize>,
        used: usize,
        n_max: usize,
        min_block: usize,
        labels: &mut Vec<usize>,
        best: &mut Option<(f64, Vec<usize>)>,
    ) {
        let len = costs.len();
        if start == len {
            let total: f64 = labels.iter().enumerate().map(|(t, &c)| costs[t][c]).sum();
            if best.as_ref().is_none_or(|(b, _)| total < *b) {
                *best = Some((total, labels.clone()));
            }
            return;
        }
        let n_clusters = costs[0].len();
        for end in start + min_block..=len {
            for c in 0..n_clusters {
                if Some(c) == prev {
                    continue;
                }
                let next_used = if prev.is_some() { used + 1 } else { 0 };
                if next_used > n_max {
                    continue;
                }
                labels.extend(std::iter::repeat_n(c, end - start));
                go(
                    costs,
                    end,
                    Some(c),
                    next_used,
                    n_max,
                    min_block,
                    labels,
                    best,
                );
                labels.truncate(start);
            }
        }
    }
    let mut best = None;
    go(
        costs,
        0,
        None,
        0,
        n_max,
        min_block,
        &mut Vec::new(),
        &mut best,
    );
    best
}

pub fn table_of(costs: &[Vec<f64>]) -> CostTable {
    let n_clusters = costs[0].len();
    let flat: Vec<f64> = costs.iter().flatten().copied().collect();
    CostTable::from_costs(flat, costs.len(), vec![true; n_clusters]).unwrap()
}

pub fn random_costs<R: Rng>(rng: &mut R, len: usize, n_clusters: usize) -> Vec<Vec<f64>> {
    (0..len)
        .map(|_| {
            (0..n_clusters)
                .map(|_| rng.random_range(0.0..10.0))
                .collect()
        })
        .collect()
}

pub fn labeling_cost(costs: &[Vec<f64>], labels: &[usize]) -> f64 {
    labels.iter().enumerate().map(|(t, &c)| costs[t][c]).sum()
}
