use thiserror::Error;

/// Errors raised across segmentation, modelling and simulation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SegError {
    #[error("invalid series: {0}")]
    InvalidSeries(String),

    #[error("invalid constraints: {0}")]
    InvalidConstraints(String),

    #[error("infeasible: series of length {len} cannot hold a block of {min_block} points")]
    Infeasible { len: usize, min_block: usize },

    #[error("affiliation cost at t={t}, cluster={cluster} is {value} (must be finite and >= 0, or +inf)")]
    NonFiniteCost {
        t: usize,
        cluster: usize,
        value: f64,
    },

    #[error("label {label} at t={t} has no active weights")]
    InactiveLabel { t: usize, label: usize },

    #[error("label {label} at t={t} is outside 0..{n_clusters}")]
    LabelOutOfRange {
        t: usize,
        label: usize,
        n_clusters: usize,
    },

    #[error("no feasible terminal state: every path violates the constraints")]
    AllInfeasible,

    #[error("backpointer at t={t}, n={n}, cluster={cluster} leads to an infeasible cell")]
    CorruptBackpointer { t: usize, n: usize, cluster: usize },

    #[error("characterization removed every cluster")]
    AllClustersRemoved,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("optimizer start point has non-finite objective {0}")]
    NonFiniteStart(f64),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("dataset spec error: {0}")]
    Spec(String),

    #[error("io error: {0}")]
    Io(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl SegError {
    /// True for errors caused by constraints that no assignment can satisfy.
    pub fn is_infeasible(&self) -> bool {
        matches!(
            self,
            SegError::Infeasible { .. } | SegError::AllInfeasible | SegError::InvalidConstraints(_)
        )
    }
}

impl From<std::io::Error> for SegError {
    fn from(e: std::io::Error) -> Self {
        SegError::Io(e.to_string())
    }
}

impl From<csv::Error> for SegError {
    fn from(e: csv::Error) -> Self {
        SegError::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, SegError>;
