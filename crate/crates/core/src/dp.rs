//! Exact constrained assignment by dynamic programming.
//!
//! `omega[t][n][c]` is the optimal cost of labelling points `0..=t` with exactly
//! `n` transitions, ending in cluster `c`, with every block at least
//! `min_block` long. Cells are filled bottom-up:
//!
//! * `t < min_block - 1`: infeasible.
//! * `t == min_block - 1`: finite only for `n == 0`, the sum of the first block.
//! * `n == 0`: pure accumulation `f(x_t, w_c) + omega[t-1][0][c]`.
//! * `n >= 1`: the cheaper of staying in `c` or opening a new block of exactly
//!   `min_block` points in `c` after a state `omega[t-min_block][n-1][c']`, `c' != c`.
//!
//! The inner `min_{c' != c}` uses the best and second-best entries of the
//! source slice, so each cell costs O(1).

use crate::assignment::{Assignment, Constraints};
use crate::cost::CostTable;
use crate::error::{Result, SegError};

/// How a cell was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BackPointer {
    /// Infeasible cell.
    None,
    /// First block: points `0..=t` all in this cluster, no predecessor.
    Init,
    /// Continues the current block from `t - 1`.
    Stay,
    /// Opens a `min_block`-long block after cluster `from` at `t - min_block`.
    TransitionFrom(usize),
}

/// Filled recurrence with backpointers.
#[derive(Debug, Clone)]
pub struct DpTensor {
    omega: Vec<f64>,
    back: Vec<BackPointer>,
    len: usize,
    n_max: usize,
    n_clusters: usize,
    min_block: usize,
    active: Vec<bool>,
}

impl DpTensor {
    #[inline]
    fn idx(&self, t: usize, n: usize, c: usize) -> usize {
        (t * (self.n_max + 1) + n) * self.n_clusters + c
    }

    pub fn omega(&self, t: usize, n: usize, c: usize) -> f64 {
        self.omega[self.idx(t, n, c)]
    }

    pub fn back(&self, t: usize, n: usize, c: usize) -> BackPointer {
        self.back[self.idx(t, n, c)]
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn n_clusters(&self) -> usize {
        self.n_clusters
    }

    pub fn min_block(&self) -> usize {
        self.min_block
    }
}

/// Best and runner-up over clusters for one `(t, n)` slice; ties keep the lower id.
#[derive(Clone, Copy)]
struct TopTwo {
    best: (f64, usize),
    second: (f64, usize),
}

impl TopTwo {
    fn of(values: &[f64]) -> TopTwo {
        let mut best = (f64::INFINITY, usize::MAX);
        let mut second = (f64::INFINITY, usize::MAX);
        for (c, &v) in values.iter().enumerate() {
            if v < best.0 || best.1 == usize::MAX {
                second = best;
                best = (v, c);
            } else if v < second.0 || second.1 == usize::MAX {
                second = (v, c);
            }
        }
        TopTwo { best, second }
    }

    /// `min_{c' != c}` as `(value, c')`.
    fn excluding(&self, c: usize) -> (f64, usize) {
        if self.best.1 != c {
            self.best
        } else {
            self.second
        }
    }
}

fn naive_min_excluding(values: &[f64], c: usize) -> (f64, usize) {
    let mut best = (f64::INFINITY, usize::MAX);
    for (other, &v) in values.iter().enumerate() {
        if other != c && (v < best.0 || best.1 == usize::MAX) {
            best = (v, other);
        }
    }
    best
}

/// Fills the recurrence for `table` under `constraints`.
pub fn fill(table: &CostTable, constraints: &Constraints) -> Result<DpTensor> {
    fill_impl(table, constraints, false)
}

/// Same recurrence with the O(C) scan for `min_{c' != c}`; used to cross-check [`fill`].
pub fn fill_naive(table: &CostTable, constraints: &Constraints) -> Result<DpTensor> {
    fill_impl(table, constraints, true)
}

fn fill_impl(table: &CostTable, constraints: &Constraints, naive: bool) -> Result<DpTensor> {
    constraints.check_feasible(table.len())?;
    if table.n_active() == 0 {
        return Err(SegError::AllClustersRemoved);
    }
    let len = table.len();
    let n_clusters = table.n_clusters();
    let n_max = constraints.n_max;
    let mb = constraints.min_block;
    let cells = len * (n_max + 1) * n_clusters;
    let mut dp = DpTensor {
        omega: vec![f64::INFINITY; cells],
        back: vec![BackPointer::None; cells],
        len,
        n_max,
        n_clusters,
        min_block: mb,
        active: (0..n_clusters).map(|c| table.is_active(c)).collect(),
    };

    let t0 = mb - 1;
    for c in 0..n_clusters {
        let v = table.block_sum(0, t0, c);
        if v.is_finite() {
            let i = dp.idx(t0, 0, c);
            dp.omega[i] = v;
            dp.back[i] = BackPointer::Init;
        }
    }

    let slice = (n_max + 1) * n_clusters;
    for t in mb..len {
        for c in 0..n_clusters {
            let prev = dp.idx(t - 1, 0, c);
            let here = dp.idx(t, 0, c);
            let v = table.cost(t, c) + dp.omega[prev];
            if v.is_finite() {
                dp.omega[here] = v;
                dp.back[here] = BackPointer::Stay;
            }
        }
        let src_t = t - mb;
        for n in 1..=n_max {
            let src_start = src_t * slice + (n - 1) * n_clusters;
            let (src_lo, rest) = dp.omega.split_at_mut(t * slice);
            let src = &src_lo[src_start..src_start + n_clusters];
            let top = TopTwo::of(src);
            let prev_row =
                &src_lo[(t - 1) * slice + n * n_clusters..(t - 1) * slice + (n + 1) * n_clusters];
            let out = &mut rest[n * n_clusters..(n + 1) * n_clusters];
            let back_out =
                &mut dp.back[t * slice + n * n_clusters..t * slice + (n + 1) * n_clusters];
            for c in 0..n_clusters {
                let stay = table.cost(t, c) + prev_row[c];
                let (from_cost, from) = if naive {
                    naive_min_excluding(src, c)
                } else {
                    top.excluding(c)
                };
                let transition = if from == usize::MAX {
                    f64::INFINITY
                } else {
                    table.block_sum(t + 1 - mb, t, c) + from_cost
                };
                if stay.is_finite() && stay <= transition {
                    out[c] = stay;
                    back_out[c] = BackPointer::Stay;
                } else if transition.is_finite() {
                    out[c] = transition;
                    back_out[c] = BackPointer::TransitionFrom(from);
                }
            }
        }
    }
    Ok(dp)
}

/// The optimal terminal state `(cost, n*, c*)`; ties prefer fewer transitions, then lower ids.
pub fn best_terminal(dp: &DpTensor) -> Result<(f64, usize, usize)> {
    let t = dp.len - 1;
    let mut best: Option<(f64, usize, usize)> = None;
    for n in 0..=dp.n_max {
        for c in (0..dp.n_clusters).filter(|&c| dp.active[c]) {
            let v = dp.omega(t, n, c);
            if v.is_finite() && best.is_none_or(|(b, _, _)| v < b) {
                best = Some((v, n, c));
            }
        }
    }
    best.ok_or(SegError::AllInfeasible)
}

/// Follows backpointers from `(T-1, n, c)` to rebuild the labels.
pub fn backtrack(dp: &DpTensor, n: usize, c: usize) -> Result<Assignment> {
    let mut labels = vec![usize::MAX; dp.len];
    let (mut t, mut n, mut c) = (dp.len - 1, n, c);
    loop {
        if n > dp.n_max || c >= dp.n_clusters || !dp.omega(t, n, c).is_finite() {
            return Err(SegError::CorruptBackpointer { t, n, cluster: c });
        }
        match dp.back(t, n, c) {
            BackPointer::None => return Err(SegError::CorruptBackpointer { t, n, cluster: c }),
            BackPointer::Init => {
                labels[..=t].fill(c);
                break;
            }
            BackPointer::Stay => {
                labels[t] = c;
                if t == 0 {
                    return Err(SegError::CorruptBackpointer { t, n, cluster: c });
                }
                t -= 1;
            }
            BackPointer::TransitionFrom(from) => {
                let start = t + 1 - dp.min_block;
                labels[start..=t].fill(c);
                if start == 0 || n == 0 {
                    return Err(SegError::CorruptBackpointer { t, n, cluster: c });
                }
                t = start - 1;
                n -= 1;
                c = from;
            }
        }
    }
    Ok(Assignment::new(labels))
}

/// Fill, pick the best terminal and backtrack in one call.
pub fn solve(table: &CostTable, constraints: &Constraints) -> Result<(Assignment, f64)> {
    let dp = fill(table, constraints)?;
    let (cost, n, c) = best_terminal(&dp)?;
    Ok((backtrack(&dp, n, c)?, cost))
}
