//! Cluster weights, the per-point cost table and the objective `L_f`.

use serde::{Deserialize, Serialize};

use crate::assignment::Assignment;
use crate::error::{Result, SegError};
use crate::series::SeriesMatrix;

/// Per-cluster weight vectors. Removed clusters keep their id and hold `None`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterWeights {
    rows: Vec<Option<Vec<f64>>>,
}

impl ClusterWeights {
    pub fn new(rows: Vec<Option<Vec<f64>>>) -> Self {
        ClusterWeights { rows }
    }

    /// All clusters active.
    pub fn dense(rows: Vec<Vec<f64>>) -> Self {
        ClusterWeights {
            rows: rows.into_iter().map(Some).collect(),
        }
    }

    pub fn n_clusters(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, c: usize) -> Option<&[f64]> {
        self.rows.get(c).and_then(|r| r.as_deref())
    }

    pub fn is_active(&self, c: usize) -> bool {
        self.get(c).is_some()
    }

    pub fn active(&self) -> Vec<usize> {
        (0..self.rows.len())
            .filter(|&c| self.is_active(c))
            .collect()
    }

    pub fn n_active(&self) -> usize {
        self.rows.iter().filter(|r| r.is_some()).count()
    }

    pub fn rows(&self) -> &[Option<Vec<f64>>] {
        &self.rows
    }

    /// Marks a cluster inactive.
    pub fn deactivate(&mut self, c: usize) {
        if let Some(row) = self.rows.get_mut(c) {
            *row = None;
        }
    }
}

/// `T x C` affiliation costs with per-cluster running sums.
///
/// Infinite entries are tracked separately so that block sums over finite
/// stretches stay exact even when a column contains `+inf`.
#[derive(Debug, Clone, PartialEq)]
pub struct CostTable {
    costs: Vec<f64>,
    finite_prefix: Vec<f64>,
    inf_prefix: Vec<u32>,
    active: Vec<bool>,
    len: usize,
    n_clusters: usize,
}

impl CostTable {
    /// Builds a table from a row-major `T x C` matrix. `+inf` marks an impossible pairing.
    pub fn from_costs(costs: Vec<f64>, len: usize, active: Vec<bool>) -> Result<Self> {
        let n_clusters = active.len();
        if costs.len() != len * n_clusters {
            return Err(SegError::LengthMismatch {
                left: costs.len(),
                right: len * n_clusters,
            });
        }
        for (i, &v) in costs.iter().enumerate() {
            if v.is_nan() || v < 0.0 || v == f64::NEG_INFINITY {
                return Err(SegError::NonFiniteCost {
                    t: i / n_clusters,
                    cluster: i % n_clusters,
                    value: v,
                });
            }
        }
        let mut finite_prefix = vec![0.0; (len + 1) * n_clusters];
        let mut inf_prefix = vec![0u32; (len + 1) * n_clusters];
        for t in 0..len {
            for c in 0..n_clusters {
                let v = costs[t * n_clusters + c];
                let (fin, inf) = if v.is_finite() { (v, 0) } else { (0.0, 1) };
                finite_prefix[(t + 1) * n_clusters + c] = finite_prefix[t * n_clusters + c] + fin;
                inf_prefix[(t + 1) * n_clusters + c] = inf_prefix[t * n_clusters + c] + inf;
            }
        }
        Ok(CostTable {
            costs,
            finite_prefix,
            inf_prefix,
            active,
            len,
            n_clusters,
        })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn n_clusters(&self) -> usize {
        self.n_clusters
    }

    pub fn is_active(&self, c: usize) -> bool {
        self.active[c]
    }

    pub fn n_active(&self) -> usize {
        self.active.iter().filter(|&&a| a).count()
    }

    #[inline]
    pub fn cost(&self, t: usize, c: usize) -> f64 {
        self.costs[t * self.n_clusters + c]
    }

    /// `sum_{s <= t} costs[s][c]`, `+inf` once any entry is infinite.
    pub fn prefix(&self, t: usize, c: usize) -> f64 {
        self.block_sum(0, t, c)
    }

    /// `sum_{s = a..=b} costs[s][c]` in O(1).
    #[inline]
    pub fn block_sum(&self, a: usize, b: usize, c: usize) -> f64 {
        let hi = (b + 1) * self.n_clusters + c;
        let lo = a * self.n_clusters + c;
        if self.inf_prefix[hi] != self.inf_prefix[lo] {
            f64::INFINITY
        } else {
            self.finite_prefix[hi] - self.finite_prefix[lo]
        }
    }
}

/// Evaluates `affiliate(x_t, w_c)` for every point and active cluster.
pub fn build_cost_table<F>(
    series: &SeriesMatrix,
    weights: &ClusterWeights,
    affiliate: F,
) -> Result<CostTable>
where
    F: Fn(&[f64], &[f64]) -> f64,
{
    if weights.n_active() == 0 {
        return Err(SegError::AllClustersRemoved);
    }
    let n_clusters = weights.n_clusters();
    let mut costs = vec![f64::INFINITY; series.len() * n_clusters];
    for (t, x) in series.rows().enumerate() {
        for c in 0..n_clusters {
            if let Some(w) = weights.get(c) {
                let v = affiliate(x, w);
                if v.is_nan() || v < 0.0 {
                    return Err(SegError::NonFiniteCost {
                        t,
                        cluster: c,
                        value: v,
                    });
                }
                costs[t * n_clusters + c] = v;
            }
        }
    }
    let active = (0..n_clusters).map(|c| weights.is_active(c)).collect();
    CostTable::from_costs(costs, series.len(), active)
}

/// `L_f = sum_t f(x_t, w_{y_t})`.
pub fn objective<F>(
    series: &SeriesMatrix,
    assignment: &Assignment,
    weights: &ClusterWeights,
    affiliate: F,
) -> Result<f64>
where
    F: Fn(&[f64], &[f64]) -> f64,
{
    if assignment.len() != series.len() {
        return Err(SegError::LengthMismatch {
            left: assignment.len(),
            right: series.len(),
        });
    }
    let mut total = 0.0;
    for (t, (x, &label)) in series.rows().zip(assignment.labels()).enumerate() {
        let w = weights
            .get(label)
            .ok_or(SegError::InactiveLabel { t, label })?;
        total += affiliate(x, w);
    }
    Ok(total)
}

/// Sums the table entries selected by the labels.
pub fn table_objective(table: &CostTable, assignment: &Assignment) -> Result<f64> {
    if assignment.len() != table.len() {
        return Err(SegError::LengthMismatch {
            left: assignment.len(),
            right: table.len(),
        });
    }
    let mut total = 0.0;
    for (t, &label) in assignment.labels().iter().enumerate() {
        if label >= table.n_clusters() || !table.is_active(label) {
            return Err(SegError::InactiveLabel { t, label });
        }
        total += table.cost(t, label);
    }
    Ok(total)
}
