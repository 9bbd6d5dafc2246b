//! Downhill simplex minimization.
//!
//! Follows the classic fmin scheme: reflection 1, expansion 2, contraction 0.5,
//! shrink 0.5, an initial simplex made of 5% steps along each axis (0.00025 for
//! zero coordinates), and termination once both the spread of objective values
//! and the spread of vertices around the best one fall below tolerance.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SegError};

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;
const NONZERO_STEP: f64 = 0.05;
const ZERO_STEP: f64 = 0.00025;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimplexConfig {
    pub f_tol: f64,
    pub x_tol: f64,
    /// Iteration cap; `None` means `2000 * dim`.
    pub max_iters: Option<usize>,
}

impl Default for SimplexConfig {
    fn default() -> Self {
        SimplexConfig {
            f_tol: 1e-8,
            x_tol: 1e-8,
            max_iters: None,
        }
    }
}

impl SimplexConfig {
    pub fn iteration_cap(&self, dim: usize) -> usize {
        self.max_iters.unwrap_or(2000 * dim.max(1))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimplexResult {
    pub x: Vec<f64>,
    pub f: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
}

pub fn nelder_mead<F>(mut objective: F, x0: &[f64], config: &SimplexConfig) -> Result<SimplexResult>
where
    F: FnMut(&[f64]) -> f64,
{
    let dim = x0.len();
    if dim == 0 {
        return Err(SegError::Domain("nelder_mead: empty start point".into()));
    }
    let mut evaluations = 0usize;
    let mut eval = |x: &[f64]| {
        evaluations += 1;
        let v = objective(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    let f0 = eval(x0);
    if !f0.is_finite() {
        return Err(SegError::NonFiniteStart(f0));
    }

    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(dim + 1);
    let mut values: Vec<f64> = Vec::with_capacity(dim + 1);
    simplex.push(x0.to_vec());
    values.push(f0);
    for k in 0..dim {
        let mut v = x0.to_vec();
        v[k] = if v[k] != 0.0 {
            (1.0 + NONZERO_STEP) * v[k]
        } else {
            ZERO_STEP
        };
        values.push(eval(&v));
        simplex.push(v);
    }

    let cap = config.iteration_cap(dim);
    let mut iterations = 0;
    let mut converged = false;
    let mut order: Vec<usize> = (0..=dim).collect();
    loop {
        // stable sort keeps earlier vertices first on ties
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();
        order = (0..=dim).collect();

        let f_spread = values[1..]
            .iter()
            .map(|v| (v - values[0]).abs())
            .fold(0.0, f64::max);
        let x_spread = simplex[1..]
            .iter()
            .flat_map(|v| v.iter().zip(&simplex[0]).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        if f_spread < config.f_tol && x_spread < config.x_tol {
            converged = true;
            break;
        }
        if iterations >= cap {
            break;
        }
        iterations += 1;

        let mut centroid = vec![0.0; dim];
        for v in &simplex[..dim] {
            for (c, x) in centroid.iter_mut().zip(v) {
                *c += x;
            }
        }
        centroid.iter_mut().for_each(|c| *c /= dim as f64);
        let worst = simplex[dim].clone();
        let along = |scale: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&worst)
                .map(|(c, w)| c + scale * (c - w))
                .collect()
        };

        let xr = along(REFLECT);
        let fr = eval(&xr);
        let mut do_shrink = false;
        if fr < values[0] {
            let xe = along(REFLECT * EXPAND);
            let fe = eval(&xe);
            if fe < fr {
                simplex[dim] = xe;
                values[dim] = fe;
            } else {
                simplex[dim] = xr;
                values[dim] = fr;
            }
        } else if fr < values[dim - 1] {
            simplex[dim] = xr;
            values[dim] = fr;
        } else if fr < values[dim] {
            let xc = along(REFLECT * CONTRACT);
            let fc = eval(&xc);
            if fc <= fr {
                simplex[dim] = xc;
                values[dim] = fc;
            } else {
                do_shrink = true;
            }
        } else {
            let xcc = along(-CONTRACT);
            let fcc = eval(&xcc);
            if fcc < values[dim] {
                simplex[dim] = xcc;
                values[dim] = fcc;
            } else {
                do_shrink = true;
            }
        }
        if do_shrink {
            let best = simplex[0].clone();
            for j in 1..=dim {
                for (x, b) in simplex[j].iter_mut().zip(&best) {
                    *x = b + SHRINK * (*x - b);
                }
                values[j] = eval(&simplex[j]);
            }
        }
    }

    Ok(SimplexResult {
        x: simplex[0].clone(),
        f: values[0],
        iterations,
        evaluations,
        converged,
    })
}
