use super::{members_by_label, ModelAdapter};
use crate::assignment::Assignment;
use crate::cost::ClusterWeights;
use crate::error::Result;
use crate::series::SeriesMatrix;

/// Squared Euclidean distance.
pub fn kmeans_affiliate(x: &[f64], w: &[f64]) -> f64 {
    x.iter().zip(w).map(|(a, b)| (a - b) * (a - b)).sum()
}

fn mean_of(series: &SeriesMatrix, rows: &[usize]) -> Vec<f64> {
    let mut mean = vec![0.0; series.dim()];
    for &t in rows {
        for (m, x) in mean.iter_mut().zip(series.row(t)) {
            *m += x;
        }
    }
    mean.iter_mut().for_each(|m| *m /= rows.len() as f64);
    mean
}

/// Member means; clusters without members are inactive.
pub fn kmeans_characterize(
    series: &SeriesMatrix,
    assignment: &Assignment,
    n_clusters: usize,
) -> Result<ClusterWeights> {
    let members = members_by_label(series, assignment, n_clusters)?;
    let rows = members
        .iter()
        .map(|idx| (!idx.is_empty()).then(|| mean_of(series, idx)))
        .collect();
    Ok(ClusterWeights::new(rows))
}

/// Classical K-means: mean characterization, squared-distance affiliation.
#[derive(Debug, Clone, Copy, Default)]
pub struct KMeans {
    pub dim: usize,
}

impl KMeans {
    pub fn new(dim: usize) -> Self {
        KMeans { dim }
    }
}

impl ModelAdapter for KMeans {
    fn name(&self) -> &'static str {
        "kmeans"
    }

    fn weight_dim(&self) -> usize {
        self.dim
    }

    fn min_support(&self, _min_block: usize) -> usize {
        1
    }

    fn fit_cluster(
        &self,
        series: &SeriesMatrix,
        rows: &[usize],
        _label: usize,
    ) -> Result<Vec<f64>> {
        Ok(mean_of(series, rows))
    }

    fn affiliate(&self, x: &[f64], w: &[f64]) -> f64 {
        kmeans_affiliate(x, w)
    }
}
