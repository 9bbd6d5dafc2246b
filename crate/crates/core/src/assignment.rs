//! Label vectors, their block structure, and the hard constraints they must meet.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SegError};

/// A maximal run of identical labels, `start..=end`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub start: usize,
    pub end: usize,
    pub label: usize,
}

impl Block {
    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Per-point cluster labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Assignment {
    labels: Vec<usize>,
}

impl Assignment {
    pub fn new(labels: Vec<usize>) -> Self {
        Assignment { labels }
    }

    pub fn constant(len: usize, label: usize) -> Self {
        Assignment {
            labels: vec![label; len],
        }
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn into_labels(self) -> Vec<usize> {
        self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Number of `t` with `labels[t] != labels[t - 1]`.
    pub fn n_transitions(&self) -> usize {
        self.labels.windows(2).filter(|w| w[0] != w[1]).count()
    }

    pub fn blocks(&self) -> Vec<Block> {
        let mut blocks = Vec::new();
        let mut start = 0;
        for t in 1..=self.labels.len() {
            if t == self.labels.len() || self.labels[t] != self.labels[start] {
                blocks.push(Block {
                    start,
                    end: t - 1,
                    label: self.labels[start],
                });
                start = t;
            }
        }
        blocks
    }

    /// Sorted distinct labels.
    pub fn distinct_labels(&self) -> Vec<usize> {
        let mut labels = self.labels.clone();
        labels.sort_unstable();
        labels.dedup();
        labels
    }

    pub fn n_distinct(&self) -> usize {
        self.distinct_labels().len()
    }

    pub fn min_block_len(&self) -> usize {
        self.blocks().iter().map(Block::len).min().unwrap_or(0)
    }

    /// Relabels in order of first appearance: the first block gets 0, the next new label 1, ...
    pub fn canonical(&self) -> Assignment {
        let mut map: Vec<Option<usize>> = Vec::new();
        let mut next = 0;
        let labels = self
            .labels
            .iter()
            .map(|&l| {
                if l >= map.len() {
                    map.resize(l + 1, None);
                }
                *map[l].get_or_insert_with(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect();
        Assignment { labels }
    }

    /// Checks every hard constraint; returns a description of the first violation.
    pub fn check(&self, constraints: &Constraints) -> Result<()> {
        if self.labels.is_empty() {
            return Err(SegError::InvalidConstraints("empty assignment".into()));
        }
        if let Some((t, &label)) = self
            .labels
            .iter()
            .enumerate()
            .find(|(_, &l)| l >= constraints.c_max)
        {
            return Err(SegError::LabelOutOfRange {
                t,
                label,
                n_clusters: constraints.c_max,
            });
        }
        let transitions = self.n_transitions();
        if transitions > constraints.n_max {
            return Err(SegError::InvalidConstraints(format!(
                "{transitions} transitions exceed n_max = {}",
                constraints.n_max
            )));
        }
        if let Some(b) = self
            .blocks()
            .iter()
            .find(|b| b.len() < constraints.min_block)
        {
            return Err(SegError::InvalidConstraints(format!(
                "block {}..={} has length {} < min_block = {}",
                b.start,
                b.end,
                b.len(),
                constraints.min_block
            )));
        }
        Ok(())
    }
}

/// Hard limits on an assignment plus the outer-loop convergence threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Constraints {
    /// Maximum number of distinct clusters.
    pub c_max: usize,
    /// Maximum number of transitions.
    pub n_max: usize,
    /// Minimal block length.
    pub min_block: usize,
    /// Convergence threshold on the change of the objective.
    pub epsilon: f64,
}

impl Constraints {
    pub fn new(c_max: usize, n_max: usize, min_block: usize, epsilon: f64) -> Result<Self> {
        let c = Constraints {
            c_max,
            n_max,
            min_block,
            epsilon,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if self.c_max < 1 {
            return Err(SegError::InvalidConstraints("c_max must be >= 1".into()));
        }
        if self.min_block < 1 {
            return Err(SegError::InvalidConstraints(
                "min_block must be >= 1".into(),
            ));
        }
        if !(self.epsilon > 0.0) || !self.epsilon.is_finite() {
            return Err(SegError::InvalidConstraints(format!(
                "epsilon must be finite and > 0, got {}",
                self.epsilon
            )));
        }
        Ok(())
    }

    pub fn check_feasible(&self, len: usize) -> Result<()> {
        self.validate()?;
        if len < self.min_block {
            return Err(SegError::Infeasible {
                len,
                min_block: self.min_block,
            });
        }
        Ok(())
    }
}
