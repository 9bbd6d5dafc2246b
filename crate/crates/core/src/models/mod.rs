//! Cluster models: how a cluster is characterized from its members and how
//! badly a single point fits a characterized cluster.

mod kmeans;
mod nelder_mead;
mod ws;

pub use kmeans::{kmeans_affiliate, kmeans_characterize, KMeans};
pub use nelder_mead::{nelder_mead, SimplexConfig, SimplexResult};
pub use ws::{
    b_coefficient, qv, ws_affiliate, ws_characterize, ws_forward, WsEnvironment, WsFitConfig,
    WsModel, WsParams, RHO_W_FLOOR,
};

use rayon::prelude::*;

use crate::assignment::Assignment;
use crate::cost::{build_cost_table, objective, ClusterWeights, CostTable};
use crate::error::{Result, SegError};
use crate::series::SeriesMatrix;

/// Characterization plus affiliation for one family of cluster models.
pub trait ModelAdapter: Send + Sync {
    fn name(&self) -> &'static str;

    /// Length of each weight vector.
    fn weight_dim(&self) -> usize;

    /// Smallest member count for which a cluster is characterized.
    fn min_support(&self, min_block: usize) -> usize;

    /// Weights of cluster `label` from its member rows.
    fn fit_cluster(&self, series: &SeriesMatrix, rows: &[usize], label: usize) -> Result<Vec<f64>>;

    /// Fits weights for clusters `0..n_clusters`; under-supported clusters come back inactive.
    fn characterize(
        &self,
        series: &SeriesMatrix,
        assignment: &Assignment,
        n_clusters: usize,
        min_block: usize,
    ) -> Result<ClusterWeights> {
        let members = members_by_label(series, assignment, n_clusters)?;
        let support = self.min_support(min_block).max(1);
        let rows = members
            .par_iter()
            .enumerate()
            .map(|(c, rows)| {
                (rows.len() >= support)
                    .then(|| self.fit_cluster(series, rows, c))
                    .transpose()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ClusterWeights::new(rows))
    }

    /// Nonnegative misfit of point `x` to a cluster with weights `w`; `+inf` when undefined.
    fn affiliate(&self, x: &[f64], w: &[f64]) -> f64;

    fn cost_table(&self, series: &SeriesMatrix, weights: &ClusterWeights) -> Result<CostTable> {
        build_cost_table(series, weights, |x, w| self.affiliate(x, w))
    }

    fn objective(
        &self,
        series: &SeriesMatrix,
        assignment: &Assignment,
        weights: &ClusterWeights,
    ) -> Result<f64> {
        objective(series, assignment, weights, |x, w| self.affiliate(x, w))
    }
}

/// Groups row indices by label, rejecting labels `>= n_clusters`.
pub(crate) fn members_by_label(
    series: &SeriesMatrix,
    assignment: &Assignment,
    n_clusters: usize,
) -> Result<Vec<Vec<usize>>> {
    if assignment.len() != series.len() {
        return Err(SegError::LengthMismatch {
            left: assignment.len(),
            right: series.len(),
        });
    }
    let mut members = vec![Vec::new(); n_clusters];
    for (t, &label) in assignment.labels().iter().enumerate() {
        if label >= n_clusters {
            return Err(SegError::LabelOutOfRange {
                t,
                label,
                n_clusters,
            });
        }
        members[label].push(t);
    }
    Ok(members)
}
