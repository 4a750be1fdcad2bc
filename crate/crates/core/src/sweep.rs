//! Angle sweep of the tight qubit-pair bound against a numerical minimum.

use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::Serialize;

use crate::constructions::{qubit_observable, BlochObservable};
use crate::error::{Error, Result};
use crate::measures::DistanceKind;
use crate::optimizer::{polished_bloch_scan, AverageDisturbance, OptimizerConfig};
use crate::tradeoffs::qubit_geometry;

/// One angle of the sweep.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub theta: f64,
    pub c: f64,
    pub bound: f64,
    pub grid_min: f64,
    pub abs_err: f64,
}

/// Pairs `σ_Z` with the axis `(sin θ, 0, cos θ)` for `θ_k = π k/(steps-1)` and
/// compares `(1 - c²)/2` with the polished Bloch-grid minimum of the average
/// fidelity disturbance.
pub fn qubit_theta_sweep(steps: usize, cfg: &OptimizerConfig) -> Result<Vec<SweepRow>> {
    if steps < 2 {
        return Err(Error::InvalidArgument(format!("sweep needs at least 2 steps, got {steps}")));
    }
    let a = BlochObservable::axis([0.0, 0.0, 1.0])?;
    (0..steps)
        .map(|k| {
            let theta = PI * k as f64 / (steps - 1) as f64;
            let b = BlochObservable::axis([theta.sin(), 0.0, theta.cos()])?;
            let geom = qubit_geometry(&a, &b);
            let instruments = [qubit_observable(&a).instrument(), qubit_observable(&b).instrument()];
            let objective = AverageDisturbance::new(DistanceKind::Fidelity, &instruments)?;
            let grid_min = polished_bloch_scan(&objective, cfg)?.value;
            let bound = geom.bound();
            Ok(SweepRow { theta, c: geom.c, bound, grid_min, abs_err: (grid_min - bound).abs() })
        })
        .collect()
}

/// CSV with header `theta,c,bound,grid_min,abs_err`, 17 significant digits.
pub fn to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("theta,c,bound,grid_min,abs_err\n");
    for r in rows {
        writeln!(out, "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}", r.theta, r.c, r.bound, r.grid_min, r.abs_err)
            .expect("writing to a String");
    }
    out
}
