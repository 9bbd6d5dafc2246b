//! Waxman-Smits shaly-sand conductivity model.
//!
//! ```text
//! Q_v     = CEC * f_clay * (1 - phi) / phi
//! B       = (1 - 0.83 exp(-sigma_w / (-2.47 + 0.229 ln(T)^2 + 1311 / T^2))) * (-9.2431 + 2.6146 sqrt(T))
//! sigma_o = phi^m * S_w^n * (sigma_w + B * Q_v / S_w)
//! rho_o   = 1 / sigma_o,   sigma_w = 1 / rho_w
//! ```
//!
//! A cluster is characterized by `[m, n, rho_w, CEC]`, regressed by downhill
//! simplex on the squared `rho_o` residuals of its members.

use serde::{Deserialize, Serialize};

use super::nelder_mead::{nelder_mead, SimplexConfig};
use super::ModelAdapter;
use crate::assignment::Assignment;
use crate::cost::ClusterWeights;
use crate::error::{Result, SegError};
use crate::series::{SeriesMatrix, WS_FCLAY, WS_PHI, WS_RHO_O, WS_SW};

/// Lower bound applied to `rho_w` before inversion.
pub const RHO_W_FLOOR: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WsParams {
    /// Cementation exponent.
    pub m: f64,
    /// Saturation exponent.
    pub n: f64,
    /// Water resistivity, ohm.m.
    pub rho_w: f64,
    /// Cation exchange capacity.
    pub cec: f64,
}

impl WsParams {
    pub fn new(m: f64, n: f64, rho_w: f64, cec: f64) -> Self {
        WsParams { m, n, rho_w, cec }
    }

    pub fn to_vec(self) -> Vec<f64> {
        vec![self.m, self.n, self.rho_w, self.cec]
    }

    pub fn from_slice(w: &[f64]) -> Self {
        WsParams {
            m: w[0],
            n: w[1],
            rho_w: w[2],
            cec: w[3],
        }
    }

    /// Maps an unconstrained simplex vertex to valid parameters by mirroring
    /// `rho_w` and CEC at zero. Unlike clamping this leaves no flat region, so
    /// the simplex can settle on a CEC of exactly zero.
    pub fn mirrored(self) -> Self {
        WsParams {
            rho_w: self.rho_w.abs(),
            cec: self.cec.abs(),
            ..self
        }
        .guarded()
    }

    /// Applies the `rho_w` floor and `cec >= 0`.
    pub fn guarded(self) -> Self {
        WsParams {
            rho_w: self.rho_w.max(RHO_W_FLOOR),
            cec: self.cec.max(0.0),
            ..self
        }
    }
}

impl Default for WsParams {
    fn default() -> Self {
        WsParams {
            m: 2.0,
            n: 2.0,
            rho_w: 0.05,
            cec: 10.0,
        }
    }
}

/// Constant formation temperature, used verbatim in the `B` formula.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WsEnvironment {
    pub temperature: f64,
}

impl Default for WsEnvironment {
    fn default() -> Self {
        WsEnvironment { temperature: 25.0 }
    }
}

/// Volume concentration of clay exchange cations.
pub fn qv(cec: f64, f_clay: f64, phi: f64) -> Result<f64> {
    if !(phi > 0.0) {
        return Err(SegError::Domain(format!(
            "qv: porosity must be > 0, got {phi}"
        )));
    }
    Ok(cec * f_clay * (1.0 - phi) / phi)
}

/// Equivalent conductance of the clay exchange cations as a function of temperature.
pub fn b_coefficient(sigma_w: f64, env: &WsEnvironment) -> Result<f64> {
    let t = env.temperature;
    if !(t > 0.0) {
        return Err(SegError::Domain(format!(
            "temperature must be > 0, got {t}"
        )));
    }
    let ln_t = t.ln();
    let inner = -2.47 + 0.229 * ln_t * ln_t + 1311.0 / (t * t);
    if inner == 0.0 {
        return Err(SegError::Domain("B: temperature term is zero".into()));
    }
    Ok((1.0 - 0.83 * (-sigma_w * inner.recip()).exp()) * (-9.2431 + 2.6146 * t.sqrt()))
}

/// Predicted `rho_o` for a row `[f_clay, phi, sw, ...]`.
pub fn ws_forward(x: &[f64], w: &WsParams, env: &WsEnvironment) -> Result<f64> {
    let (f_clay, phi, sw) = (x[WS_FCLAY], x[WS_PHI], x[WS_SW]);
    if !(sw > 0.0) {
        return Err(SegError::Domain(format!(
            "water saturation must be > 0, got {sw}"
        )));
    }
    let w = w.guarded();
    let sigma_w = 1.0 / w.rho_w;
    let q = qv(w.cec, f_clay, phi)?;
    let b = b_coefficient(sigma_w, env)?;
    let sigma_o = phi.powf(w.m) * sw.powf(w.n) * (sigma_w + b * q / sw);
    if !(sigma_o > 0.0) {
        return Err(SegError::Domain(format!(
            "non-positive conductivity {sigma_o}"
        )));
    }
    Ok(1.0 / sigma_o)
}

/// Squared `rho_o` residual; `+inf` when the forward model is undefined.
pub fn ws_affiliate(x: &[f64], w: &WsParams, env: &WsEnvironment) -> f64 {
    match ws_forward(x, w, env) {
        Ok(pred) => {
            let r = x[WS_RHO_O] - pred;
            r * r
        }
        Err(_) => f64::INFINITY,
    }
}

/// Row features that do not depend on the weights.
struct Prepared {
    ln_phi: f64,
    ln_sw: f64,
    /// `f_clay (1 - phi) / (phi S_w)`, so `B Q_v / S_w = B * CEC * clay_term`.
    clay_term: f64,
    rho_o: f64,
}

fn prepare(series: &SeriesMatrix, rows: &[usize]) -> Vec<Prepared> {
    rows.iter()
        .map(|&t| {
            let x = series.row(t);
            let (f_clay, phi, sw) = (x[WS_FCLAY], x[WS_PHI], x[WS_SW]);
            Prepared {
                ln_phi: phi.ln(),
                ln_sw: sw.ln(),
                clay_term: f_clay * (1.0 - phi) / (phi * sw),
                rho_o: x[WS_RHO_O],
            }
        })
        .collect()
}

/// Sum of squared residuals over prepared rows.
fn regression_loss(rows: &[Prepared], w: &[f64], env: &WsEnvironment) -> f64 {
    let p = WsParams::from_slice(w).mirrored();
    let sigma_w = 1.0 / p.rho_w;
    let Ok(b) = b_coefficient(sigma_w, env) else {
        return f64::INFINITY;
    };
    let b_cec = b * p.cec;
    let mut total = 0.0;
    for r in rows {
        let sigma_o = (p.m * r.ln_phi + p.n * r.ln_sw).exp() * (sigma_w + b_cec * r.clay_term);
        if !(sigma_o > 0.0) {
            return f64::INFINITY;
        }
        let res = r.rho_o - sigma_o.recip();
        total += res * res;
    }
    total
}

/// Regression settings for [`ws_characterize`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WsFitConfig {
    pub init: WsParams,
    pub simplex: SimplexConfig,
}

impl Default for WsFitConfig {
    fn default() -> Self {
        WsFitConfig {
            init: WsParams::default(),
            simplex: SimplexConfig::default(),
        }
    }
}

fn fit_cluster(
    series: &SeriesMatrix,
    rows: &[usize],
    env: &WsEnvironment,
    config: &WsFitConfig,
    label: usize,
) -> WsParams {
    let prepared = prepare(series, rows);
    let x0 = config.init.to_vec();
    match nelder_mead(|w| regression_loss(&prepared, w, env), &x0, &config.simplex) {
        Ok(fit) => {
            if !fit.converged {
                log::warn!(
                    "WS regression for cluster {label} stopped at the iteration cap (loss {:.6e}); keeping best vertex",
                    fit.f
                );
            }
            WsParams::from_slice(&fit.x).mirrored()
        }
        Err(e) => {
            log::warn!(
                "WS regression for cluster {label} could not start ({e}); using the initial guess"
            );
            config.init.guarded()
        }
    }
}

fn require_layout(series: &SeriesMatrix) -> Result<()> {
    if !series.is_ws_layout() {
        return Err(SegError::InvalidSeries(
            "WS model needs columns f_clay,phi,sw,rho_o".into(),
        ));
    }
    Ok(())
}

/// Regresses `[m, n, rho_w, CEC]` for every cluster with at least `min_block` members.
pub fn ws_characterize(
    series: &SeriesMatrix,
    assignment: &Assignment,
    n_clusters: usize,
    min_block: usize,
    env: &WsEnvironment,
    config: &WsFitConfig,
) -> Result<ClusterWeights> {
    require_layout(series)?;
    WsModel::new(*env, *config).characterize(series, assignment, n_clusters, min_block)
}

/// Waxman-Smits adapter.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct WsModel {
    pub env: WsEnvironment,
    pub fit: WsFitConfig,
}

impl WsModel {
    pub fn new(env: WsEnvironment, fit: WsFitConfig) -> Self {
        WsModel { env, fit }
    }

    /// Regression loss of a parameter vector over a set of rows (the quantity the simplex minimizes).
    pub fn fit_loss(&self, series: &SeriesMatrix, rows: &[usize], w: &[f64]) -> f64 {
        regression_loss(&prepare(series, rows), w, &self.env)
    }
}

impl ModelAdapter for WsModel {
    fn name(&self) -> &'static str {
        "ws"
    }

    fn weight_dim(&self) -> usize {
        4
    }

    fn min_support(&self, min_block: usize) -> usize {
        min_block
    }

    fn fit_cluster(&self, series: &SeriesMatrix, rows: &[usize], label: usize) -> Result<Vec<f64>> {
        require_layout(series)?;
        Ok(fit_cluster(series, rows, &self.env, &self.fit, label).to_vec())
    }

    fn affiliate(&self, x: &[f64], w: &[f64]) -> f64 {
        ws_affiliate(x, &WsParams::from_slice(w), &self.env)
    }
}
