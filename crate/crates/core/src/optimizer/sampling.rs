//! Seeded random states, unitaries and measurements.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::constructions::BlochObservable;
use crate::error::{Error, Result};
use crate::qcore::linalg::{self, c64, ComplexMatrix};
use crate::qcore::{Povm, ProjectiveObservable, PureState};

/// Independent generator for task `index` under `seed`.
pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Rejects dimensions below 2, where every sampled object is trivial.
pub fn check_sampling_dim(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("dimension must be at least 2, got {d}")));
    }
    Ok(())
}

fn gaussian(rng: &mut impl Rng) -> c64 {
    c64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Standard complex Gaussian vector (not normalized).
pub fn gaussian_amplitudes(rng: &mut impl Rng, d: usize) -> Vec<c64> {
    (0..d).map(|_| gaussian(rng)).collect()
}

/// Haar-random pure state.
pub fn random_pure_state(rng: &mut impl Rng, d: usize) -> PureState {
    assert!(d >= 1, "dimension must be positive");
    loop {
        if let Ok(psi) = PureState::normalized(gaussian_amplitudes(rng, d)) {
            return psi;
        }
    }
}

/// Uniform point on the unit sphere in R³.
pub fn random_bloch_vector(rng: &mut impl Rng) -> [f64; 3] {
    loop {
        let v: [f64; 3] = [rng.sample(StandardNormal), rng.sample(StandardNormal), rng.sample(StandardNormal)];
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 1e-6 {
            return v.map(|x| x / n);
        }
    }
}

/// Qubit observable `α₁𝕀 + α₂ a·σ` with random axis and random eigenvalues.
pub fn random_bloch_observable(rng: &mut impl Rng) -> BlochObservable {
    let alpha1 = rng.random_range(-2.0..2.0);
    let magnitude = rng.random_range(0.1..2.0);
    let alpha2 = if rng.random::<bool>() { magnitude } else { -magnitude };
    BlochObservable::new(random_bloch_vector(rng), alpha1, alpha2).expect("nonzero axis and alpha2")
}

/// Haar-random unitary: QR of a Ginibre matrix with the phases of `R`'s
/// diagonal moved into `Q`.
pub fn random_unitary(rng: &mut impl Rng, d: usize) -> ComplexMatrix {
    let g = ComplexMatrix::from_fn(d, d, |_, _| gaussian(rng));
    let qr = g.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..d {
        let diag = r[(j, j)];
        let phase = if diag.norm() > 0.0 { diag / diag.norm() } else { c64::new(1.0, 0.0) };
        for i in 0..d {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Random GUE-like Hermitian matrix.
pub fn random_hermitian(rng: &mut impl Rng, d: usize) -> ComplexMatrix {
    let g = ComplexMatrix::from_fn(d, d, |_, _| gaussian(rng));
    linalg::hermitian_part(&g)
}

/// Projective observable with a Haar-random eigenbasis. Basis vectors are
/// grouped into between 2 and `d` eigenspaces, so degenerate spectra occur
/// but the observable is never a multiple of the identity.
pub fn random_projective_observable(rng: &mut impl Rng, d: usize) -> ProjectiveObservable {
    let u = random_unitary(rng, d);
    let blocks = rng.random_range(2..=d);
    // block index per basis vector; the first `blocks` vectors seed each block
    let labels: Vec<usize> = (0..d).map(|i| if i < blocks { i } else { rng.random_range(0..blocks) }).collect();
    let mut projectors = vec![ComplexMatrix::zeros(d, d); blocks];
    for (i, &b) in labels.iter().enumerate() {
        let v = u.column(i);
        projectors[b] += v * v.adjoint();
    }
    let eigenvalues = (0..blocks).map(|k| k as f64 - 0.5 * blocks as f64 + rng.random_range(0.0..0.5)).collect();
    ProjectiveObservable::new(eigenvalues, projectors).expect("unitary columns give a valid resolution")
}

/// Random full-rank `n`-outcome POVM: `A_i = S^{-1/2} G_i S^{-1/2}` with
/// Wishart `G_i` and `S = Σ G_i`.
pub fn random_povm(rng: &mut impl Rng, d: usize, n: usize) -> Povm {
    let raw: Vec<ComplexMatrix> = (0..n)
        .map(|_| {
            let x = ComplexMatrix::from_fn(d, d, |_, _| gaussian(rng));
            &x * x.adjoint()
        })
        .collect();
    let total = raw.iter().fold(ComplexMatrix::zeros(d, d), |acc, g| acc + g);
    let inv_sqrt =
        linalg::psd_function(&total, |x| if x > 0.0 { 1.0 / x.sqrt() } else { 0.0 }).expect("Wishart sum is PSD");
    let effects = raw.iter().map(|g| linalg::hermitian_part(&(&inv_sqrt * g * &inv_sqrt))).collect();
    Povm::new(effects).expect("normalized Wishart effects form a POVM")
}
