//! Segmentation of multivariate series into contiguous blocks, each assigned
//! to one of at most `C` clusters with at most `N` transitions and a minimal
//! block length.
//!
//! The assignment step is an exact dynamic program over `(t, n, c)`; the
//! characterization step fits one model per cluster (K-means centroids or a
//! Waxman-Smits petrophysical regression). The two alternate from random
//! starts, and a grid over `(N, C)` plus a density rule picks the answer.

pub mod alternation;
pub mod assignment;
pub mod consensus;
pub mod cost;
pub mod dp;
pub mod error;
pub mod grid;
pub mod io;
pub mod models;
pub mod series;
pub mod simulator;

pub use alternation::{random_assignment, run_once, RunResult};
pub use assignment::{Assignment, Block, Constraints};
pub use consensus::{ari, confusion_matrix, consensus};
pub use cost::{build_cost_table, objective, ClusterWeights, CostTable};
pub use error::{Result, SegError};
pub use grid::{
    grid_search, select_region, GridConfig, GridPoint, SelectionMode, SelectionPolicy,
    SelectionReport,
};
pub use models::{KMeans, ModelAdapter, WsModel};
pub use series::SeriesMatrix;
