//! TOML run configuration and simulation spec files.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use segdp::grid::GridConfig;
use segdp::models::{SimplexConfig, WsEnvironment, WsFitConfig, WsParams};
use segdp::simulator::{preset, DatasetSpec};
use segdp::{Constraints, KMeans, ModelAdapter, SelectionPolicy, SeriesMatrix, WsModel};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Kmeans,
    Ws,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintsConfig {
    /// Maximum distinct clusters.
    pub c: usize,
    /// Maximum transitions.
    pub n: usize,
    pub min_block: usize,
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
}

fn default_epsilon() -> f64 {
    1e-6
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WsConfig {
    #[serde(default = "default_temperature")]
    pub temperature: f64,
    #[serde(default)]
    pub ws_init: WsParams,
    #[serde(default = "default_tol")]
    pub f_tol: f64,
    #[serde(default = "default_tol")]
    pub x_tol: f64,
    #[serde(default)]
    pub max_iters: Option<usize>,
}

fn default_temperature() -> f64 {
    25.0
}

fn default_tol() -> f64 {
    1e-8
}

impl Default for WsConfig {
    fn default() -> Self {
        WsConfig {
            temperature: default_temperature(),
            ws_init: WsParams::default(),
            f_tol: default_tol(),
            x_tol: default_tol(),
            max_iters: None,
        }
    }
}

/// Grid bounds. Explicit `n_max`/`c_max` win over `scale` times the constraint prior.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridBounds {
    #[serde(default = "default_scale")]
    pub scale: f64,
    #[serde(default)]
    pub n_max: Option<usize>,
    #[serde(default)]
    pub c_max: Option<usize>,
}

fn default_scale() -> f64 {
    1.5
}

impl Default for GridBounds {
    fn default() -> Self {
        GridBounds {
            scale: default_scale(),
            n_max: None,
            c_max: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub model: ModelKind,
    /// Dataset name used in reports; defaults to the series file stem.
    #[serde(default)]
    pub name: Option<String>,
    pub constraints: ConstraintsConfig,
    #[serde(default = "default_n_init")]
    pub n_init: usize,
    #[serde(default = "default_max_outer_iters")]
    pub max_outer_iters: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub ws: WsConfig,
    #[serde(default)]
    pub grid: GridBounds,
    #[serde(default)]
    pub selection: SelectionPolicy,
}

fn default_n_init() -> usize {
    50
}

fn default_max_outer_iters() -> usize {
    100
}

impl RunConfig {
    pub fn parse(text: &str) -> CliResult<Self> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> CliResult<()> {
        self.constraints()?;
        if self.n_init == 0 {
            return Err(CliError::Config("n_init must be at least 1".into()));
        }
        if self.max_outer_iters == 0 {
            return Err(CliError::Config(
                "max_outer_iters must be at least 1".into(),
            ));
        }
        if !(self.ws.temperature > 0.0) {
            return Err(CliError::Config("ws.temperature must be positive".into()));
        }
        if !(self.ws.f_tol > 0.0 && self.ws.x_tol > 0.0) {
            return Err(CliError::Config(
                "ws.f_tol and ws.x_tol must be positive".into(),
            ));
        }
        if !(self.grid.scale > 0.0) {
            return Err(CliError::Config("grid.scale must be positive".into()));
        }
        if self.grid.c_max == Some(0) {
            return Err(CliError::Config("grid.c_max must be at least 1".into()));
        }
        let p = &self.selection;
        if p.bins == 0 || p.window == 0 || p.window > p.bins {
            return Err(CliError::Config(
                "selection needs bins >= 1 and 1 <= window <= bins".into(),
            ));
        }
        Ok(())
    }

    pub fn constraints(&self) -> CliResult<Constraints> {
        let c = &self.constraints;
        Constraints::new(c.c, c.n, c.min_block, c.epsilon)
            .map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn grid_config(&self) -> GridConfig {
        let (n_prior, c_prior) =
            GridConfig::bounds_from_prior(self.constraints.n, self.constraints.c, self.grid.scale);
        GridConfig {
            n_max_grid: self.grid.n_max.unwrap_or(n_prior),
            c_max_grid: self.grid.c_max.unwrap_or(c_prior),
            min_block: self.constraints.min_block,
            epsilon: self.constraints.epsilon,
            n_init: self.n_init,
            max_outer_iters: self.max_outer_iters,
            master_seed: self.seed,
        }
    }

    pub fn adapter(&self, series: &SeriesMatrix) -> CliResult<Box<dyn ModelAdapter>> {
        match self.model {
            ModelKind::Kmeans => Ok(Box::new(KMeans::new(series.dim()))),
            ModelKind::Ws => {
                if !series.is_ws_layout() {
                    return Err(CliError::Config(
                        "model \"ws\" needs series columns f_clay,phi,sw,rho_o".into(),
                    ));
                }
                let fit = WsFitConfig {
                    init: self.ws.ws_init,
                    simplex: SimplexConfig {
                        f_tol: self.ws.f_tol,
                        x_tol: self.ws.x_tol,
                        max_iters: self.ws.max_iters,
                    },
                };
                Ok(Box::new(WsModel::new(
                    WsEnvironment {
                        temperature: self.ws.temperature,
                    },
                    fit,
                )))
            }
        }
    }
}

/// Simulation input: a named preset (optionally reseeded) or an inline dataset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateSpec {
    #[serde(default)]
    pub preset: Option<String>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub dataset: Option<DatasetSpec>,
}

impl SimulateSpec {
    pub fn parse(text: &str) -> CliResult<Self> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn resolve(self) -> CliResult<DatasetSpec> {
        let mut spec = match (self.preset, self.dataset) {
            (Some(name), None) => {
                preset(&name).ok_or_else(|| CliError::Config(format!("unknown preset {name:?}")))?
            }
            (None, Some(spec)) => spec,
            _ => {
                return Err(CliError::Config(
                    "give exactly one of `preset` or `[dataset]`".into(),
                ))
            }
        };
        if let Some(seed) = self.seed {
            spec.seed = seed;
        }
        spec.validate()?;
        Ok(spec)
    }
}

pub fn read_text(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}
