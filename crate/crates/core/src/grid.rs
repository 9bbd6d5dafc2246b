//! Restart consensus, grid search over `(N, C)`, and selection of the dense,
//! diverse cost region.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::alternation::{derive_seed, run_once, RunResult};
use crate::assignment::Constraints;
use crate::consensus::consensus_index;
use crate::error::{Result, SegError};
use crate::models::ModelAdapter;
use crate::series::SeriesMatrix;

/// Absolute tolerance used when placing costs into histogram bins.
pub const BIN_TOLERANCE: f64 = 1e-12;

/// Seed of restart `r` at grid cell `(n, c)`.
pub fn restart_seed(master_seed: u64, n: usize, c: usize, r: usize) -> u64 {
    derive_seed(master_seed, &[n as u64, c as u64, r as u64])
}

/// Runs `n_init` independent restarts in parallel; results are in restart order.
pub fn run_restarts(
    series: &SeriesMatrix,
    adapter: &dyn ModelAdapter,
    constraints: &Constraints,
    n_init: usize,
    max_outer_iters: usize,
    master_seed: u64,
) -> Vec<Result<RunResult>> {
    (0..n_init)
        .into_par_iter()
        .map(|r| {
            let seed = restart_seed(master_seed, constraints.n_max, constraints.c_max, r);
            run_once(series, adapter, constraints, max_outer_iters, seed)
        })
        .collect()
}

/// Consensus over the successful restarts; the first error if none succeeded.
pub fn consensus_of_restarts(runs: Vec<Result<RunResult>>) -> Result<RunResult> {
    let mut first_err = None;
    let ok: Vec<RunResult> = runs
        .into_iter()
        .filter_map(|r| r.map_err(|e| first_err.get_or_insert(e).clone()).ok())
        .collect();
    if ok.is_empty() {
        return Err(first_err.unwrap_or(SegError::AllInfeasible));
    }
    let refs: Vec<&RunResult> = ok.iter().collect();
    let i = consensus_index(&refs)?;
    Ok(ok.into_iter().nth(i).expect("index in range"))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridConfig {
    pub n_max_grid: usize,
    pub c_max_grid: usize,
    pub min_block: usize,
    pub epsilon: f64,
    pub n_init: usize,
    pub max_outer_iters: usize,
    pub master_seed: u64,
}

impl GridConfig {
    /// Grid bounds from prior `(N, C)` scaled by `k` (about 1.5), rounded up.
    pub fn bounds_from_prior(n_prior: usize, c_prior: usize, k: f64) -> (usize, usize) {
        (
            (n_prior as f64 * k).ceil() as usize,
            ((c_prior as f64 * k).ceil() as usize).max(1),
        )
    }
}

/// Consensus answer at one `(n_grid, c_grid)` input pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    pub n_grid: usize,
    pub c_grid: usize,
    pub result: Option<RunResult>,
    /// Why the point has no result.
    pub failure: Option<String>,
}

impl GridPoint {
    pub fn cost(&self) -> Option<f64> {
        self.result.as_ref().map(|r| r.cost)
    }

    /// Transitions actually used by the answer.
    pub fn n_effective(&self) -> Option<usize> {
        self.result.as_ref().map(|r| r.assignment.n_transitions())
    }

    /// Distinct clusters actually used by the answer.
    pub fn c_effective(&self) -> Option<usize> {
        self.result.as_ref().map(|r| r.assignment.n_distinct())
    }
}

/// Runs `n_init` restarts at every `(n, c)` in `[0, n_max_grid] x [1, c_max_grid]`.
///
/// Points are ordered by `n` then `c`. A point whose restarts all fail is kept
/// with its failure message.
pub fn grid_search(
    series: &SeriesMatrix,
    adapter: &dyn ModelAdapter,
    config: &GridConfig,
) -> Vec<GridPoint> {
    let cells: Vec<(usize, usize)> = (0..=config.n_max_grid)
        .flat_map(|n| (1..=config.c_max_grid).map(move |c| (n, c)))
        .collect();
    let jobs: Vec<(usize, usize)> = (0..cells.len())
        .flat_map(|i| (0..config.n_init.max(1)).map(move |r| (i, r)))
        .collect();
    let runs: Vec<Result<RunResult>> = jobs
        .par_iter()
        .map(|&(i, r)| {
            let (n, c) = cells[i];
            let constraints = Constraints::new(c, n, config.min_block, config.epsilon)?;
            run_once(
                series,
                adapter,
                &constraints,
                config.max_outer_iters,
                restart_seed(config.master_seed, n, c, r),
            )
        })
        .collect();

    let mut runs = runs.into_iter();
    cells
        .iter()
        .map(|&(n, c)| {
            let chunk: Vec<_> = runs.by_ref().take(config.n_init.max(1)).collect();
            match consensus_of_restarts(chunk) {
                Ok(result) => GridPoint {
                    n_grid: n,
                    c_grid: c,
                    result: Some(result),
                    failure: None,
                },
                Err(e) => GridPoint {
                    n_grid: n,
                    c_grid: c,
                    result: None,
                    failure: Some(e.to_string()),
                },
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SelectionPolicy {
    /// Histogram bins over `[min cost, max cost]`.
    pub bins: usize,
    /// Contiguous bins per candidate window.
    pub window: usize,
    pub min_distinct_n: usize,
    pub min_distinct_c: usize,
}

impl Default for SelectionPolicy {
    fn default() -> Self {
        SelectionPolicy {
            bins: 20,
            window: 1,
            min_distinct_n: 3,
            min_distinct_c: 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SelectionMode {
    MostCommon,
    LowestCost,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionReport {
    pub mode: SelectionMode,
    /// Index into the grid points of the retained answer.
    pub chosen: usize,
    /// Most common answer inside the dense region, if a region qualified.
    pub most_common: Option<usize>,
    /// Lowest-cost point; ties go to smaller `n_grid`, then smaller `c_grid`.
    pub lowest_cost: usize,
    /// Cost interval of the selected window.
    pub region: Option<(f64, f64)>,
    pub region_members: Vec<usize>,
    /// All successful costs, ascending.
    pub rug: Vec<f64>,
    pub policy: SelectionPolicy,
}

fn bin_of(cost: f64, lo: f64, hi: f64, bins: usize) -> usize {
    if hi - lo <= BIN_TOLERANCE {
        return 0;
    }
    if cost >= hi - BIN_TOLERANCE {
        return bins - 1;
    }
    let width = (hi - lo) / bins as f64;
    (((cost - lo + BIN_TOLERANCE) / width).floor() as usize).min(bins - 1)
}

/// Picks the densest cost window that is diverse in both `n_grid` and `c_grid`.
///
/// Costs are binned; each run of `policy.window` consecutive bins is a
/// candidate. A candidate qualifies when it holds at least `min_distinct_n`
/// distinct `n_grid` and `min_distinct_c` distinct `c_grid` values. The
/// qualifying window with the most points wins (ties go to lower cost) and its
/// most common answer is reported. Without a qualifying window the lowest-cost
/// point is chosen.
pub fn select_region(points: &[GridPoint], policy: &SelectionPolicy) -> Result<SelectionReport> {
    let scored: Vec<(usize, f64)> = points
        .iter()
        .enumerate()
        .filter_map(|(i, p)| p.cost().map(|c| (i, c)))
        .collect();
    if scored.is_empty() {
        return Err(SegError::AllInfeasible);
    }
    let bins = policy.bins.max(1);
    let window = policy.window.clamp(1, bins);

    let lowest_cost = scored
        .iter()
        .min_by(|a, b| {
            a.1.total_cmp(&b.1)
                .then(points[a.0].n_grid.cmp(&points[b.0].n_grid))
                .then(points[a.0].c_grid.cmp(&points[b.0].c_grid))
        })
        .map(|&(i, _)| i)
        .expect("non-empty");

    let lo = scored.iter().map(|s| s.1).fold(f64::INFINITY, f64::min);
    let hi = scored.iter().map(|s| s.1).fold(f64::NEG_INFINITY, f64::max);
    let binned: Vec<(usize, usize)> = scored
        .iter()
        .map(|&(i, c)| (i, bin_of(c, lo, hi, bins)))
        .collect();

    let mut best: Option<(usize, Vec<usize>)> = None;
    for start in 0..=bins - window {
        let members: Vec<usize> = binned
            .iter()
            .filter(|(_, b)| (start..start + window).contains(b))
            .map(|&(i, _)| i)
            .collect();
        let ns: BTreeSet<usize> = members.iter().map(|&i| points[i].n_grid).collect();
        let cs: BTreeSet<usize> = members.iter().map(|&i| points[i].c_grid).collect();
        if ns.len() < policy.min_distinct_n
            || cs.len() < policy.min_distinct_c
            || members.is_empty()
        {
            continue;
        }
        if best.as_ref().is_none_or(|(_, m)| members.len() > m.len()) {
            best = Some((start, members));
        }
    }

    let mut rug: Vec<f64> = scored.iter().map(|s| s.1).collect();
    rug.sort_by(f64::total_cmp);

    match best {
        Some((start, members)) => {
            let results: Vec<&RunResult> = members
                .iter()
                .map(|&i| points[i].result.as_ref().expect("scored"))
                .collect();
            let most_common = members[consensus_index(&results)?];
            let width = if hi > lo {
                (hi - lo) / bins as f64
            } else {
                0.0
            };
            let region = (
                lo + start as f64 * width,
                if width > 0.0 {
                    lo + (start + window) as f64 * width
                } else {
                    hi
                },
            );
            Ok(SelectionReport {
                mode: SelectionMode::MostCommon,
                chosen: most_common,
                most_common: Some(most_common),
                lowest_cost,
                region: Some(region),
                region_members: members,
                rug,
                policy: *policy,
            })
        }
        None => Ok(SelectionReport {
            mode: SelectionMode::LowestCost,
            chosen: lowest_cost,
            most_common: None,
            lowest_cost,
            region: None,
            region_members: Vec::new(),
            rug,
            policy: *policy,
        }),
    }
}
