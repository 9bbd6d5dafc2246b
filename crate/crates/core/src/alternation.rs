//! The outer loop: characterize clusters, rebuild costs, re-assign by DP,
//! until the objective stops moving.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::assignment::{Assignment, Constraints};
use crate::cost::{table_objective, ClusterWeights};
use crate::dp;
use crate::error::{Result, SegError};
use crate::models::{members_by_label, ModelAdapter};
use crate::series::SeriesMatrix;

pub const DEFAULT_MAX_OUTER_ITERS: usize = 100;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    /// Best-cost assignment seen during the run.
    pub assignment: Assignment,
    /// Weights that produced `assignment`.
    pub weights: ClusterWeights,
    /// `L_f(assignment, weights)`.
    pub cost: f64,
    pub iterations: usize,
    pub loss_trace: Vec<f64>,
    pub seed: u64,
    pub converged: bool,
}

/// Deterministic child seed from a master seed and a path of indices (SplitMix64 mixing).
pub fn derive_seed(master: u64, path: &[u64]) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    path.iter().fold(mix(master), |acc, &p| mix(acc ^ mix(p)))
}

/// Random labels with at most `n_max` transitions, blocks of at least
/// `min_block` points, and adjacent blocks in different clusters.
///
/// The transition count is uniform over the feasible range; block lengths are
/// a uniform composition of the slack `len - (n+1) * min_block`.
pub fn random_assignment<R: Rng + ?Sized>(
    n_clusters: usize,
    len: usize,
    n_max: usize,
    min_block: usize,
    rng: &mut R,
) -> Result<Assignment> {
    if min_block == 0 || n_clusters == 0 {
        return Err(SegError::InvalidConstraints(
            "need n_clusters >= 1 and min_block >= 1".into(),
        ));
    }
    if len < min_block {
        return Err(SegError::Infeasible { len, min_block });
    }
    let feasible = if n_clusters == 1 {
        0
    } else {
        n_max.min(len / min_block - 1)
    };
    let n = rng.random_range(0..=feasible);
    let slack = len - (n + 1) * min_block;

    // stars and bars: n bars among slack + n slots
    let mut bars = sample(rng, slack + n, n).into_vec();
    bars.sort_unstable();
    let mut lengths = Vec::with_capacity(n + 1);
    let mut prev = 0;
    for (i, &b) in bars.iter().enumerate() {
        let stars = b - i;
        lengths.push(min_block + stars - prev);
        prev = stars;
    }
    lengths.push(min_block + slack - prev);

    let mut labels = Vec::with_capacity(len);
    let mut current = rng.random_range(0..n_clusters);
    for (i, &l) in lengths.iter().enumerate() {
        if i > 0 {
            let r = rng.random_range(0..n_clusters - 1);
            current = if r >= current { r + 1 } else { r };
        }
        labels.extend(std::iter::repeat_n(current, l));
    }
    Ok(Assignment::new(labels))
}

/// Per-cluster weights keyed by the member rows they were fitted on. Fits are
/// deterministic, so an unchanged member set reuses its weights.
struct FitCache {
    entries: Vec<Option<(Vec<usize>, Vec<f64>)>>,
}

impl FitCache {
    fn new(n_clusters: usize) -> Self {
        FitCache {
            entries: vec![None; n_clusters],
        }
    }

    /// Characterizes every allowed cluster with enough support; others come back inactive.
    fn characterize(
        &mut self,
        series: &SeriesMatrix,
        adapter: &dyn ModelAdapter,
        labels: &Assignment,
        allowed: &[bool],
        min_block: usize,
    ) -> Result<ClusterWeights> {
        let members = members_by_label(series, labels, allowed.len())?;
        let support = adapter.min_support(min_block).max(1);
        let fits = members
            .par_iter()
            .enumerate()
            .map(|(c, rows)| {
                if !allowed[c] || rows.len() < support {
                    return Ok(None);
                }
                match &self.entries[c] {
                    Some((cached, w)) if cached == rows => Ok(Some(w.clone())),
                    _ => adapter.fit_cluster(series, rows, c).map(Some),
                }
            })
            .collect::<Result<Vec<Option<Vec<f64>>>>>()?;
        for (c, (rows, w)) in members.into_iter().zip(&fits).enumerate() {
            self.entries[c] = w.as_ref().map(|w| (rows, w.clone()));
        }
        Ok(ClusterWeights::new(fits))
    }
}

/// One randomly initialized run of the alternating scheme.
pub fn run_once(
    series: &SeriesMatrix,
    adapter: &dyn ModelAdapter,
    constraints: &Constraints,
    max_outer_iters: usize,
    seed: u64,
) -> Result<RunResult> {
    constraints.check_feasible(series.len())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_clusters = constraints.c_max;
    let mut labels = random_assignment(
        n_clusters,
        series.len(),
        constraints.n_max,
        constraints.min_block,
        &mut rng,
    )?;
    let mut allowed = vec![true; n_clusters];
    let mut cache = FitCache::new(n_clusters);

    let mut old = f64::INFINITY;
    let mut current = 0.0;
    let mut trace = Vec::new();
    let mut best: Option<(Assignment, ClusterWeights, f64)> = None;

    while (current - old).abs() >= constraints.epsilon && trace.len() < max_outer_iters.max(1) {
        let weights =
            cache.characterize(series, adapter, &labels, &allowed, constraints.min_block)?;
        for (c, ok) in allowed.iter_mut().enumerate() {
            *ok = weights.is_active(c);
        }
        if weights.n_active() == 0 {
            return Err(SegError::AllClustersRemoved);
        }
        let table = adapter.cost_table(series, &weights)?;
        let (next, _) = dp::solve(&table, constraints)?;
        old = current;
        current = table_objective(&table, &next)?;
        trace.push(current);
        if best.as_ref().is_none_or(|(_, _, c)| current < *c) {
            best = Some((next.clone(), weights, current));
        }
        labels = next;
    }

    let (assignment, weights, cost) = best.expect("at least one iteration runs");
    Ok(RunResult {
        assignment,
        weights,
        cost,
        iterations: trace.len(),
        converged: (current - old).abs() < constraints.epsilon,
        loss_trace: trace,
        seed,
    })
}
