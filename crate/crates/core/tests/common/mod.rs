#![allow(dead_code)]

use qtradeoff::optimizer::sampling::random_pure_state;
use qtradeoff::qcore::linalg::max_abs_diff;
use qtradeoff::{c64, ComplexMatrix, DensityOperator};
use rand::Rng;

/// Convex mixture of `k` Haar-random pure states with random weights.
pub fn random_density(rng: &mut impl Rng, d: usize, k: usize) -> DensityOperator {
    let weights: Vec<f64> = (0..k).map(|_| rng.random::<f64>() + 1e-3).collect();
    let total: f64 = weights.iter().sum();
    let mut m = ComplexMatrix::zeros(d, d);
    for w in weights {
        m += random_pure_state(rng, d).projector() * c64::from(w / total);
    }
    let m = (&m + m.adjoint()) * c64::from(0.5);
    DensityOperator::new(m).expect("mixture is a state")
}

pub fn close(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> bool {
    max_abs_diff(a, b) <= tol
}
