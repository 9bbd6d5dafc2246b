//! Synthetic well logs with known formation labels.
//!
//! Each formation carries expected Waxman-Smits parameters and log ranges. A
//! block draws a smooth porosity walk, a water saturation that increases with
//! depth, and per-point clay fractions; measurement noise is then applied to
//! the logs and natural variation to `m`, `n` and CEC, and `rho_o` is computed
//! from the noisy values. Blocks are concatenated either directly or with
//! linear interpolation across each boundary.

mod presets;

pub use presets::{preset, PRESET_NAMES};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::assignment::Assignment;
use crate::error::{Result, SegError};
use crate::models::{ws_forward, WsEnvironment, WsParams};
use crate::series::SeriesMatrix;

/// Smallest value a noisy porosity or saturation may take.
const FRACTION_FLOOR: f64 = 1e-3;
/// Porosity walk step, as a fraction of the porosity range.
const PHI_STEP: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormationSpec {
    pub label: usize,
    pub m: f64,
    pub n: f64,
    pub cec: f64,
    pub rho_w: f64,
    pub phi_range: (f64, f64),
    pub sw_range: (f64, f64),
    pub fclay_range: (f64, f64),
}

impl FormationSpec {
    pub fn params(&self) -> WsParams {
        WsParams::new(self.m, self.n, self.rho_w, self.cec)
    }

    fn validate(&self) -> Result<()> {
        let open_unit = |(lo, hi): (f64, f64)| lo > 0.0 && lo <= hi && hi <= 1.0;
        let closed_unit = |(lo, hi): (f64, f64)| lo >= 0.0 && lo <= hi && hi <= 1.0;
        if !open_unit(self.phi_range) || !open_unit(self.sw_range) || !closed_unit(self.fclay_range)
        {
            return Err(SegError::Spec(format!(
                "formation {}: log ranges must lie in (0, 1]",
                self.label
            )));
        }
        if !(self.rho_w > 0.0) || self.cec < 0.0 || !self.m.is_finite() || !self.n.is_finite() {
            return Err(SegError::Spec(format!(
                "formation {}: invalid parameters",
                self.label
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockSpec {
    pub label: usize,
    pub length: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase", deny_unknown_fields)]
pub enum TransitionMode {
    Sharp,
    Smooth { width: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseSpec {
    /// Relative error level of each log is drawn once per block in `[rel_error_min, rel_error_max]`.
    pub rel_error_min: f64,
    pub rel_error_max: f64,
    /// Standard deviation of the per-row perturbation of `m`.
    pub sigma_m: f64,
    /// Standard deviation of the per-row perturbation of `n`.
    pub sigma_n: f64,
}

impl NoiseSpec {
    pub fn none() -> Self {
        NoiseSpec {
            rel_error_min: 0.0,
            rel_error_max: 0.0,
            sigma_m: 0.0,
            sigma_n: 0.0,
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = self.rel_error_min >= 0.0
            && self.rel_error_max >= self.rel_error_min
            && self.sigma_m >= 0.0
            && self.sigma_n >= 0.0;
        if !ok {
            return Err(SegError::Spec(
                "noise levels must be nonnegative with min <= max".into(),
            ));
        }
        Ok(())
    }
}

impl Default for NoiseSpec {
    fn default() -> Self {
        NoiseSpec {
            rel_error_min: 0.05,
            rel_error_max: 0.10,
            sigma_m: 0.05,
            sigma_n: 0.03,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetSpec {
    pub name: String,
    pub formations: Vec<FormationSpec>,
    pub blocks: Vec<BlockSpec>,
    pub transition: TransitionMode,
    pub noise: NoiseSpec,
    pub temperature: f64,
    pub seed: u64,
    /// When set, every block must be at least this long.
    #[serde(default)]
    pub min_block: Option<usize>,
}

impl DatasetSpec {
    pub fn formation(&self, label: usize) -> Option<&FormationSpec> {
        self.formations.iter().find(|f| f.label == label)
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.length).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Number of transitions in the ground truth (adjacent equal labels merge).
    pub fn n_transitions(&self) -> usize {
        self.blocks
            .windows(2)
            .filter(|w| w[0].label != w[1].label)
            .count()
    }

    pub fn n_clusters(&self) -> usize {
        let mut labels: Vec<usize> = self.blocks.iter().map(|b| b.label).collect();
        labels.sort_unstable();
        labels.dedup();
        labels.len()
    }

    pub fn env(&self) -> WsEnvironment {
        WsEnvironment {
            temperature: self.temperature,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.blocks.is_empty() {
            return Err(SegError::Spec("dataset has no blocks".into()));
        }
        for f in &self.formations {
            f.validate()?;
        }
        self.noise.validate()?;
        if !(self.temperature > 0.0) {
            return Err(SegError::Spec("temperature must be > 0".into()));
        }
        for (i, b) in self.blocks.iter().enumerate() {
            if self.formation(b.label).is_none() {
                return Err(SegError::Spec(format!(
                    "block {i} uses unknown formation label {}",
                    b.label
                )));
            }
            if b.length == 0 {
                return Err(SegError::Spec(format!("block {i} is empty")));
            }
            if let Some(mb) = self.min_block {
                if b.length < mb {
                    return Err(SegError::Spec(format!(
                        "block {i} is shorter than min_block {mb}"
                    )));
                }
            }
            if let TransitionMode::Smooth { width } = self.transition {
                if b.length <= width {
                    return Err(SegError::Spec(format!(
                        "block {i} of length {} cannot host a smooth transition of width {width}",
                        b.length
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Logs and parameters of one row before `rho_o` is computed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RowInputs {
    pub f_clay: f64,
    pub phi: f64,
    pub sw: f64,
    pub params: WsParams,
}

/// A generated block: noisy inputs, the noiseless reference logs, and the rows.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratedBlock {
    pub inputs: Vec<RowInputs>,
    /// Noiseless `[f_clay, phi, sw]` reference signal.
    pub reference: Vec<[f64; 3]>,
    /// `[f_clay, phi, sw, rho_o]`.
    pub rows: Vec<[f64; 4]>,
}

fn uniform<R: Rng + ?Sized>(rng: &mut R, (lo, hi): (f64, f64)) -> f64 {
    if hi > lo {
        rng.random_range(lo..=hi)
    } else {
        lo
    }
}

fn reflect(mut x: f64, lo: f64, hi: f64) -> f64 {
    if hi <= lo {
        return lo;
    }
    for _ in 0..4 {
        if x < lo {
            x = 2.0 * lo - x;
        } else if x > hi {
            x = 2.0 * hi - x;
        } else {
            break;
        }
    }
    x.clamp(lo, hi)
}

fn reference_logs<R: Rng + ?Sized>(
    spec: &FormationSpec,
    length: usize,
    rng: &mut R,
) -> Vec<[f64; 3]> {
    let (plo, phi_hi) = spec.phi_range;
    let step = PHI_STEP * (phi_hi - plo);
    let mut phi = uniform(rng, spec.phi_range);
    let mut phis = Vec::with_capacity(length);
    for _ in 0..length {
        phis.push(phi);
        let d = if step > 0.0 {
            rng.random_range(-step..=step)
        } else {
            0.0
        };
        phi = reflect(phi + d, plo, phi_hi);
    }

    // saturation grows with depth: sorted draws between a top and a bottom value
    let (slo, shi) = spec.sw_range;
    let top = uniform(rng, (slo, slo + 0.5 * (shi - slo)));
    let bottom = uniform(rng, (top, shi));
    let mut sws: Vec<f64> = (0..length).map(|_| uniform(rng, (top, bottom))).collect();
    sws.sort_by(f64::total_cmp);

    (0..length)
        .map(|t| [uniform(rng, spec.fclay_range), phis[t], sws[t]])
        .collect()
}

fn block_inputs<R: Rng + ?Sized>(
    spec: &FormationSpec,
    length: usize,
    noise: &NoiseSpec,
    rng: &mut R,
) -> (Vec<RowInputs>, Vec<[f64; 3]>) {
    let reference = reference_logs(spec, length, rng);
    let level = |rng: &mut R| uniform(rng, (noise.rel_error_min, noise.rel_error_max));
    let (lv_clay, lv_phi, lv_sw, lv_cec) = (level(rng), level(rng), level(rng), level(rng));
    let inputs = reference
        .iter()
        .map(|&[f_clay, phi, sw]| {
            let mut rel = |lv: f64| {
                let z: f64 = rng.sample(StandardNormal);
                1.0 + lv * z
            };
            let f_clay = (f_clay * rel(lv_clay)).clamp(0.0, 1.0);
            let phi = (phi * rel(lv_phi)).clamp(FRACTION_FLOOR, 1.0);
            let sw = (sw * rel(lv_sw)).clamp(FRACTION_FLOOR, 1.0);
            let cec = (spec.cec * rel(lv_cec)).max(0.0);
            let zm: f64 = rng.sample(StandardNormal);
            let zn: f64 = rng.sample(StandardNormal);
            let params = WsParams::new(
                spec.m + noise.sigma_m * zm,
                spec.n + noise.sigma_n * zn,
                spec.rho_w,
                cec,
            );
            RowInputs {
                f_clay,
                phi,
                sw,
                params,
            }
        })
        .collect();
    (inputs, reference)
}

fn forward_rows(inputs: &[RowInputs], env: &WsEnvironment) -> Result<Vec<[f64; 4]>> {
    inputs
        .iter()
        .map(|r| {
            let rho = ws_forward(&[r.f_clay, r.phi, r.sw], &r.params, env)
                .map_err(|e| SegError::Spec(format!("forward model failed: {e}")))?;
            Ok([r.f_clay, r.phi, r.sw, rho])
        })
        .collect()
}

/// Generates one block of `length` rows for a formation.
pub fn generate_block<R: Rng + ?Sized>(
    spec: &FormationSpec,
    length: usize,
    noise: &NoiseSpec,
    env: &WsEnvironment,
    rng: &mut R,
) -> Result<GeneratedBlock> {
    let (inputs, reference) = block_inputs(spec, length, noise, rng);
    let rows = forward_rows(&inputs, env)?;
    Ok(GeneratedBlock {
        inputs,
        reference,
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetManifest {
    pub spec: DatasetSpec,
    pub seed: u64,
    pub len: usize,
    pub n_transitions: usize,
    pub n_clusters: usize,
    /// First row index of each block after the first.
    pub boundaries: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulatedDataset {
    pub series: SeriesMatrix,
    pub truth: Assignment,
    pub inputs: Vec<RowInputs>,
    pub manifest: DatasetManifest,
}

/// Generates and concatenates every block of the dataset.
pub fn generate_dataset(spec: &DatasetSpec) -> Result<SimulatedDataset> {
    spec.validate()?;
    let env = spec.env();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut inputs = Vec::with_capacity(spec.len());
    let mut labels = Vec::with_capacity(spec.len());
    let mut boundaries = Vec::new();
    for b in &spec.blocks {
        let formation = spec.formation(b.label).expect("validated");
        if !inputs.is_empty() {
            boundaries.push(inputs.len());
        }
        let (block, _) = block_inputs(formation, b.length, &spec.noise, &mut rng);
        inputs.extend(block);
        labels.extend(std::iter::repeat_n(b.label, b.length));
    }

    if let TransitionMode::Smooth { width } = spec.transition {
        smooth_boundaries(&mut inputs, &boundaries, width);
    }

    let rows = forward_rows(&inputs, &env)?;
    let series = SeriesMatrix::ws(rows)?;
    let truth = Assignment::new(labels);
    let manifest = DatasetManifest {
        spec: spec.clone(),
        seed: spec.seed,
        len: truth.len(),
        n_transitions: truth.n_transitions(),
        n_clusters: truth.n_distinct(),
        boundaries,
    };
    Ok(SimulatedDataset {
        series,
        truth,
        inputs,
        manifest,
    })
}

/// Replaces the logs of the `width` rows straddling each boundary by a linear
/// ramp between the last untouched row before and the first untouched row
/// after. Each row keeps the parameters of the block it belongs to.
fn smooth_boundaries(inputs: &mut [RowInputs], boundaries: &[usize], width: usize) {
    if width == 0 {
        return;
    }
    let left = width / 2;
    let right = width - left;
    for &b in boundaries {
        let lo_anchor = inputs[b - left - 1];
        let hi_anchor = inputs[b + right];
        for j in 0..width {
            let s = (j + 1) as f64 / (width + 1) as f64;
            let mix = |x: f64, y: f64| x + s * (y - x);
            let row = &mut inputs[b - left + j];
            row.f_clay = mix(lo_anchor.f_clay, hi_anchor.f_clay);
            row.phi = mix(lo_anchor.phi, hi_anchor.phi);
            row.sw = mix(lo_anchor.sw, hi_anchor.sw);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn formation() -> FormationSpec {
        FormationSpec {
            label: 0,
            m: 2.0,
            n: 2.0,
            cec: 20.0,
            rho_w: 0.05,
            phi_range: (0.15, 0.35),
            sw_range: (0.3, 1.0),
            fclay_range: (0.0, 0.4),
        }
    }

    #[test]
    fn degenerate_ranges_without_noise_are_constant() {
        let f = FormationSpec {
            phi_range: (0.2, 0.2),
            sw_range: (0.7, 0.7),
            fclay_range: (0.1, 0.1),
            ..formation()
        };
        let env = WsEnvironment::default();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let b = generate_block(&f, 30, &NoiseSpec::none(), &env, &mut rng).unwrap();
        let expected = ws_forward(&[0.1, 0.2, 0.7], &f.params(), &env).unwrap();
        assert!(b.rows.iter().all(|r| r[3] == expected));
    }

    #[test]
    fn saturation_reference_is_nondecreasing() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let env = WsEnvironment::default();
        for _ in 0..20 {
            let b =
                generate_block(&formation(), 80, &NoiseSpec::default(), &env, &mut rng).unwrap();
            assert!(b.reference.windows(2).all(|w| w[0][2] <= w[1][2]));
            let clean =
                generate_block(&formation(), 80, &NoiseSpec::none(), &env, &mut rng).unwrap();
            assert!(clean.rows.windows(2).all(|w| w[0][2] <= w[1][2]));
        }
    }

    #[test]
    fn logs_stay_in_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let env = WsEnvironment::default();
        let noisy = NoiseSpec {
            rel_error_min: 0.5,
            rel_error_max: 0.9,
            ..NoiseSpec::default()
        };
        let b = generate_block(&formation(), 500, &noisy, &env, &mut rng).unwrap();
        assert!(SeriesMatrix::ws(b.rows).is_ok());
    }

    #[test]
    fn unknown_label_rejected() {
        let mut spec = preset("WS-1").unwrap();
        spec.blocks[0].label = 99;
        assert!(matches!(generate_dataset(&spec), Err(SegError::Spec(_))));
    }

    #[test]
    fn sharp_two_blocks() {
        let f1 = FormationSpec {
            label: 1,
            m: 2.4,
            ..formation()
        };
        let spec = DatasetSpec {
            name: "pair".into(),
            formations: vec![formation(), f1],
            blocks: vec![
                BlockSpec {
                    label: 0,
                    length: 50,
                },
                BlockSpec {
                    label: 1,
                    length: 50,
                },
            ],
            transition: TransitionMode::Sharp,
            noise: NoiseSpec::default(),
            temperature: 25.0,
            seed: 4,
            min_block: None,
        };
        let d = generate_dataset(&spec).unwrap();
        assert_eq!(d.series.len(), 100);
        assert_eq!(d.truth.n_transitions(), 1);
        assert_eq!(d.truth.labels()[49], 0);
        assert_eq!(d.truth.labels()[50], 1);
        assert_eq!(d.manifest.boundaries, vec![50]);
        assert_eq!(generate_dataset(&spec).unwrap(), d);
    }

    #[test]
    fn smooth_window_is_monotone_ramp() {
        let f1 = FormationSpec {
            label: 1,
            m: 2.4,
            ..formation()
        };
        let mut spec = DatasetSpec {
            name: "pair".into(),
            formations: vec![formation(), f1],
            blocks: vec![
                BlockSpec {
                    label: 0,
                    length: 50,
                },
                BlockSpec {
                    label: 1,
                    length: 50,
                },
            ],
            transition: TransitionMode::Smooth { width: 6 },
            noise: NoiseSpec::default(),
            temperature: 25.0,
            seed: 4,
            min_block: None,
        };
        let smooth = generate_dataset(&spec).unwrap();
        spec.transition = TransitionMode::Sharp;
        let sharp = generate_dataset(&spec).unwrap();
        // rows 47..53 straddle the boundary; anchors 46 and 53 are untouched
        let col = |d: &SimulatedDataset, j: usize| d.series.column(j);
        for j in 0..3 {
            let s = col(&smooth, j);
            let a = col(&sharp, j);
            assert_eq!(s[46], a[46]);
            assert_eq!(s[53], a[53]);
            let ramp = &s[46..=53];
            let up = ramp.windows(2).all(|w| w[0] <= w[1]);
            let down = ramp.windows(2).all(|w| w[0] >= w[1]);
            assert!(up || down, "column {j}: {ramp:?}");
        }
        assert_eq!(smooth.truth, sharp.truth);
        spec.transition = TransitionMode::Smooth { width: 60 };
        assert!(generate_dataset(&spec).is_err());
    }

    #[test]
    fn noiseless_truth_has_zero_cost() {
        let mut spec = preset("WS-2").unwrap();
        spec.noise = NoiseSpec::none();
        let d = generate_dataset(&spec).unwrap();
        let env = spec.env();
        for (t, &label) in d.truth.labels().iter().enumerate() {
            let p = spec.formation(label).unwrap().params();
            assert_eq!(crate::models::ws_affiliate(d.series.row(t), &p, &env), 0.0);
        }
    }
}
