//! Shipped dataset layouts carrying published formation parameters.

use super::{BlockSpec, DatasetSpec, FormationSpec, NoiseSpec, TransitionMode};

pub const PRESET_NAMES: [&str; 5] = ["WS-1", "WS-2", "WS-2-smooth", "WS-3", "WS-3-smooth"];

const PHI_RANGE: (f64, f64) = (0.15, 0.35);
const SW_RANGE: (f64, f64) = (0.3, 1.0);
const FCLAY_RANGE: (f64, f64) = (0.0, 0.4);
const SMOOTH_WIDTH: usize = 6;
const MIN_BLOCK: usize = 40;

/// `(m, n, rho_w, cec)` per label.
const WS1: [(f64, f64, f64, f64); 6] = [
    (2.1, 2.3, 0.052, 0.0),
    (1.9, 1.8, 0.05, 0.0),
    (1.8, 1.75, 0.052, 0.0),
    (2.05, 1.9, 0.05, 0.0),
    (2.2, 2.0, 0.048, 20.0),
    (2.4, 2.1, 0.048, 60.0),
];

const WS2: [(f64, f64, f64, f64); 6] = [
    (1.85, 1.8, 0.052, 0.0),
    (2.1, 2.0, 0.052, 0.0),
    (2.4, 2.3, 0.049, 80.0),
    (1.9, 2.0, 0.051, 0.0),
    (2.0, 1.95, 0.051, 30.0),
    (2.0, 2.5, 0.05, 0.0),
];

const WS3: [(f64, f64, f64, f64); 8] = [
    (1.85, 1.7, 0.03, 0.0),
    (2.0, 2.0, 0.03, 0.0),
    (2.05, 2.0, 0.029, 30.0),
    (2.3, 2.1, 0.031, 0.0),
    (2.5, 2.2, 0.049, 80.0),
    (2.0, 2.5, 0.05, 0.0),
    (2.0, 1.9, 0.05, 0.0),
    (2.1, 2.1, 0.051, 45.0),
];

const LAYOUT_6: [(usize, usize); 10] = [
    (0, 110),
    (1, 90),
    (2, 100),
    (3, 120),
    (4, 80),
    (5, 100),
    (2, 90),
    (0, 110),
    (4, 100),
    (1, 100),
];

const LAYOUT_8: [(usize, usize); 11] = [
    (0, 90),
    (1, 80),
    (2, 100),
    (3, 90),
    (4, 90),
    (5, 100),
    (6, 80),
    (7, 90),
    (3, 100),
    (0, 90),
    (5, 90),
];

fn formations(table: &[(f64, f64, f64, f64)]) -> Vec<FormationSpec> {
    table
        .iter()
        .enumerate()
        .map(|(label, &(m, n, rho_w, cec))| FormationSpec {
            label,
            m,
            n,
            cec,
            rho_w,
            phi_range: PHI_RANGE,
            sw_range: SW_RANGE,
            fclay_range: FCLAY_RANGE,
        })
        .collect()
}

fn build(
    name: &str,
    table: &[(f64, f64, f64, f64)],
    layout: &[(usize, usize)],
    smooth: bool,
) -> DatasetSpec {
    DatasetSpec {
        name: name.to_string(),
        formations: formations(table),
        blocks: layout
            .iter()
            .map(|&(label, length)| BlockSpec { label, length })
            .collect(),
        transition: if smooth {
            TransitionMode::Smooth {
                width: SMOOTH_WIDTH,
            }
        } else {
            TransitionMode::Sharp
        },
        noise: NoiseSpec::default(),
        temperature: 25.0,
        seed: 0,
        min_block: Some(MIN_BLOCK),
    }
}

/// Looks up a shipped layout by name (seed 0; override `seed` for replicates).
pub fn preset(name: &str) -> Option<DatasetSpec> {
    Some(match name {
        "WS-1" => build(name, &WS1, &LAYOUT_6, false),
        "WS-2" => build(name, &WS2, &LAYOUT_6, false),
        "WS-2-smooth" => build(name, &WS2, &LAYOUT_6, true),
        "WS-3" => build(name, &WS3, &LAYOUT_8, false),
        "WS-3-smooth" => build(name, &WS3, &LAYOUT_8, true),
        _ => return None,
    })
}
