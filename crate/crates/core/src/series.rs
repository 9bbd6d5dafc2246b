//! Row-major observation matrix with optional column semantics.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SegError};

/// Semantic tag for a series column.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ColumnRole {
    /// Clay volume fraction, in `[0, 1]`.
    FClay,
    /// Porosity fraction, in `[0, 1]`.
    Phi,
    /// Water saturation fraction, in `[0, 1]`.
    Sw,
    /// Measured formation resistivity (ohm.m), strictly positive.
    RhoO,
    /// Any other numeric column.
    Generic(String),
}

impl ColumnRole {
    pub fn from_header(name: &str) -> Self {
        match name {
            "f_clay" => ColumnRole::FClay,
            "phi" => ColumnRole::Phi,
            "sw" => ColumnRole::Sw,
            "rho_o" => ColumnRole::RhoO,
            other => ColumnRole::Generic(other.to_string()),
        }
    }

    pub fn header(&self) -> &str {
        match self {
            ColumnRole::FClay => "f_clay",
            ColumnRole::Phi => "phi",
            ColumnRole::Sw => "sw",
            ColumnRole::RhoO => "rho_o",
            ColumnRole::Generic(name) => name,
        }
    }

    fn is_fraction(&self) -> bool {
        matches!(self, ColumnRole::FClay | ColumnRole::Phi | ColumnRole::Sw)
    }
}

/// Column order expected by the Waxman-Smits adapter.
pub const WS_COLUMNS: [&str; 4] = ["f_clay", "phi", "sw", "rho_o"];

pub const WS_FCLAY: usize = 0;
pub const WS_PHI: usize = 1;
pub const WS_SW: usize = 2;
pub const WS_RHO_O: usize = 3;

/// A `T x d` matrix of finite observations.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesMatrix {
    values: Vec<f64>,
    roles: Vec<ColumnRole>,
    len: usize,
    dim: usize,
}

impl SeriesMatrix {
    /// Builds a series from rows. Fraction and resistivity roles are range-checked.
    pub fn new(rows: Vec<Vec<f64>>, roles: Vec<ColumnRole>) -> Result<Self> {
        let len = rows.len();
        if len == 0 {
            return Err(SegError::InvalidSeries("series has no rows".into()));
        }
        let dim = roles.len();
        if dim == 0 {
            return Err(SegError::InvalidSeries("series has no columns".into()));
        }
        let mut values = Vec::with_capacity(len * dim);
        for (t, row) in rows.into_iter().enumerate() {
            if row.len() != dim {
                return Err(SegError::InvalidSeries(format!(
                    "row {t} has {} values, expected {dim}",
                    row.len()
                )));
            }
            values.extend(row);
        }
        let series = SeriesMatrix {
            values,
            roles,
            len,
            dim,
        };
        series.validate()?;
        Ok(series)
    }

    /// Unlabelled numeric series; columns are named `x0, x1, ...`.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let dim = rows.first().map_or(0, Vec::len);
        let roles = (0..dim)
            .map(|j| ColumnRole::Generic(format!("x{j}")))
            .collect();
        Self::new(rows, roles)
    }

    /// One-dimensional series.
    pub fn from_column(values: &[f64]) -> Result<Self> {
        Self::from_rows(values.iter().map(|&v| vec![v]).collect())
    }

    /// Series with the four Waxman-Smits logs `[f_clay, phi, sw, rho_o]`.
    pub fn ws(rows: Vec<[f64; 4]>) -> Result<Self> {
        let roles = WS_COLUMNS
            .iter()
            .map(|h| ColumnRole::from_header(h))
            .collect();
        Self::new(rows.into_iter().map(|r| r.to_vec()).collect(), roles)
    }

    fn validate(&self) -> Result<()> {
        for t in 0..self.len {
            for (j, role) in self.roles.iter().enumerate() {
                let v = self.values[t * self.dim + j];
                if !v.is_finite() {
                    return Err(SegError::InvalidSeries(format!(
                        "non-finite value {v} at row {t}, column {}",
                        role.header()
                    )));
                }
                if role.is_fraction() && !(0.0..=1.0).contains(&v) {
                    return Err(SegError::InvalidSeries(format!(
                        "{} = {v} at row {t} is outside [0, 1]",
                        role.header()
                    )));
                }
                if *role == ColumnRole::RhoO && v <= 0.0 {
                    return Err(SegError::InvalidSeries(format!(
                        "rho_o = {v} at row {t} must be > 0"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn roles(&self) -> &[ColumnRole] {
        &self.roles
    }

    pub fn row(&self, t: usize) -> &[f64] {
        &self.values[t * self.dim..(t + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks_exact(self.dim)
    }

    /// True when the columns are exactly `f_clay, phi, sw, rho_o` in that order.
    pub fn is_ws_layout(&self) -> bool {
        self.dim == 4
            && self
                .roles
                .iter()
                .zip(WS_COLUMNS)
                .all(|(role, name)| role.header() == name)
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.rows().map(|r| r[j]).collect()
    }
}
