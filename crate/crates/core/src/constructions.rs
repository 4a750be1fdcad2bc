//! Builders for the observable and POVM families with known tradeoff bounds.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::qcore::linalg::{self, c64, ComplexMatrix};
use crate::qcore::{check_dim, Instrument, Povm, ProjectiveObservable, PureState};

pub fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|k| k * k <= n).all(|k| !n.is_multiple_of(k))
}

/// Projective measurement in an orthonormal basis, outcome `i` labelled `i`.
pub fn basis_observable(basis: &[PureState]) -> Result<ProjectiveObservable> {
    let eigenvalues = (0..basis.len()).map(|i| i as f64).collect();
    ProjectiveObservable::new(eigenvalues, basis.iter().map(PureState::projector).collect())
}

/// `N` mutually unbiased bases in prime dimension `d`.
#[derive(Clone, Debug)]
pub struct MubFamily {
    d: usize,
    bases: Vec<Vec<PureState>>,
}

impl MubFamily {
    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn bases(&self) -> &[Vec<PureState>] {
        &self.bases
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.bases.len() == self.d + 1
    }

    pub fn observables(&self) -> Vec<ProjectiveObservable> {
        self.bases.iter().map(|b| basis_observable(b).expect("MUB bases are orthonormal")).collect()
    }

    pub fn instruments(&self) -> Vec<Instrument> {
        self.observables().iter().map(ProjectiveObservable::instrument).collect()
    }
}

/// First `n` bases of the complete prime-dimension family: the computational
/// basis followed by the eigenbases of the generalized Pauli operators `X Z^k`.
///
/// For odd `d` basis `k` has vectors `ω^{k j² + m j}/√d`, `ω = e^{2πi/d}`. For
/// `d = 2` the phases are `i^{k j²}(-1)^{m j}`, giving the `σ_X` and `σ_Y`
/// eigenbases.
pub fn mub_set(d: usize, n: usize) -> Result<MubFamily> {
    if !is_prime(d) {
        return Err(Error::NotPrime(d));
    }
    if n < 2 || n > d + 1 {
        return Err(Error::InvalidArgument(format!("number of bases must be in 2..={}, got {n}", d + 1)));
    }
    let norm = 1.0 / (d as f64).sqrt();
    let mut bases = vec![(0..d).map(|i| PureState::basis(d, i)).collect::<Vec<_>>()];
    for k in 0..n - 1 {
        let basis = (0..d)
            .map(|m| {
                let amps = (0..d)
                    .map(|j| {
                        let phase = if d == 2 {
                            PI / 2.0 * (k * j * j) as f64 + PI * (m * j) as f64
                        } else {
                            2.0 * PI * ((k * j * j + m * j) % d) as f64 / d as f64
                        };
                        c64::from_polar(norm, phase)
                    })
                    .collect();
                PureState::normalized(amps).expect("nonzero amplitudes")
            })
            .collect();
        bases.push(basis);
    }
    Ok(MubFamily { d, bases })
}

/// Pairwise anticommuting `±1`-valued observables.
#[derive(Clone, Debug)]
pub struct AnticommutingSet {
    observables: Vec<ComplexMatrix>,
}

impl AnticommutingSet {
    pub fn dim(&self) -> usize {
        self.observables[0].nrows()
    }

    pub fn len(&self) -> usize {
        self.observables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.observables.is_empty()
    }

    pub fn observables(&self) -> &[ComplexMatrix] {
        &self.observables
    }

    pub fn projective(&self) -> Vec<ProjectiveObservable> {
        self.observables
            .iter()
            .map(|a| crate::qcore::spectral_decompose(a, crate::qcore::DEFAULT_CLUSTER_TOL).expect("Hermitian"))
            .collect()
    }
}

/// Jordan–Wigner generators on `m = ⌊n/2⌋` qubits.
///
/// The full list is `Z^{⊗k} X 𝕀…`, `Z^{⊗k} Y 𝕀…` for `k < m` followed by
/// `Z^{⊗m}`. Odd `n = 2m + 1` uses all of them; even `n = 2m` drops the last
/// `Y`-type generator. This gives `{σ_X, σ_Z}`, `{σ_X, σ_Y, σ_Z}`,
/// `{XI, YI, ZX, ZY, ZZ}` for `n = 2, 3, 5`.
pub fn anticommuting_set(n: usize) -> Result<AnticommutingSet> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 anticommuting observables, got {n}")));
    }
    let qubits = n / 2;
    let string = |ops: Vec<ComplexMatrix>| ops.iter().skip(1).fold(ops[0].clone(), |acc, op| linalg::kron(&acc, op));
    let site = |k: usize, middle: ComplexMatrix| {
        let mut ops: Vec<ComplexMatrix> = (0..k).map(|_| linalg::sigma_z()).collect();
        ops.push(middle);
        ops.extend((k + 1..qubits).map(|_| linalg::identity(2)));
        string(ops)
    };
    let mut observables = Vec::with_capacity(n);
    for k in 0..qubits {
        observables.push(site(k, linalg::sigma_x()));
        if !(n.is_multiple_of(2) && k + 1 == qubits) {
            observables.push(site(k, linalg::sigma_y()));
        }
    }
    observables.push(string((0..qubits).map(|_| linalg::sigma_z()).collect()));
    debug_assert_eq!(observables.len(), n);
    Ok(AnticommutingSet { observables })
}

/// Qubit observable `α₁𝕀 + α₂ a·σ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochObservable {
    a: [f64; 3],
    alpha1: f64,
    alpha2: f64,
}

impl BlochObservable {
    /// `a` is rescaled to unit length; it must be nonzero and `alpha2 != 0`.
    pub fn new(a: [f64; 3], alpha1: f64, alpha2: f64) -> Result<Self> {
        let len = (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt();
        if !len.is_finite() || len <= 1e-12 {
            return Err(Error::InvalidArgument("Bloch vector must be nonzero".into()));
        }
        if alpha2 == 0.0 || !alpha2.is_finite() || !alpha1.is_finite() {
            return Err(Error::InvalidArgument("observable must have two distinct eigenvalues".into()));
        }
        Ok(Self { a: a.map(|x| x / len), alpha1, alpha2 })
    }

    /// `a·σ`.
    pub fn axis(a: [f64; 3]) -> Result<Self> {
        Self::new(a, 0.0, 1.0)
    }

    pub fn direction(&self) -> [f64; 3] {
        self.a
    }

    pub fn matrix(&self) -> ComplexMatrix {
        linalg::identity(2) * c64::from(self.alpha1) + linalg::bloch_operator(self.a) * c64::from(self.alpha2)
    }
}

/// Eigenvalues `α₁ ± α₂` with projectors `(𝕀 ± a·σ)/2`.
pub fn qubit_observable(b: &BlochObservable) -> ProjectiveObservable {
    let n = linalg::bloch_operator(b.a);
    let id = linalg::identity(2);
    let half = c64::from(0.5);
    ProjectiveObservable::new(
        vec![b.alpha1 + b.alpha2, b.alpha1 - b.alpha2],
        vec![(&id + &n) * half, (&id - &n) * half],
    )
    .expect("Bloch projectors are valid")
}

fn check_orthonormal(basis: &[PureState], what: &str) -> Result<()> {
    for (i, u) in basis.iter().enumerate() {
        for (j, v) in basis.iter().enumerate().skip(i) {
            let target = if i == j { 1.0 } else { 0.0 };
            if (u.inner(v) - c64::from(target)).norm() > 1e-10 {
                return Err(Error::InvalidArgument(format!("{what} is not orthonormal (vectors {i}, {j})")));
            }
        }
    }
    Ok(())
}

fn weighted_effect(phi1: &PureState, w1: f64, rest: &[PureState], w_rest: f64) -> ComplexMatrix {
    let mut m = phi1.projector() * c64::from(w1);
    for v in rest {
        m += v.projector() * c64::from(w_rest);
    }
    m
}

/// POVM `{A₁, A₂, A₃}` built on a qutrit basis `{φ₁, φ₂, φ₃}`:
/// `A₁ = φ₁/6 + (φ₂ + φ₃)/2`, `A₂ = 2φ₁/3 + (φ₂ + φ₃)/2`, `A₃ = φ₁/6`.
fn split_povm(basis: &[PureState]) -> Povm {
    Povm::new(vec![
        weighted_effect(&basis[0], 1.0 / 6.0, &basis[1..], 0.5),
        weighted_effect(&basis[0], 2.0 / 3.0, &basis[1..], 0.5),
        weighted_effect(&basis[0], 1.0 / 6.0, &[], 0.0),
    ])
    .expect("effects sum to the identity")
}

/// Pair of qutrit POVMs sharing `φ₁` as a common eigenvector of all six
/// effects while no effect has eigenvalue 1: Lüders measurements of both leave
/// `φ₁` undisturbed, yet no state has zero outcome entropy for both.
pub fn appendix_c_pair(basis1: &[PureState], basis2: &[PureState]) -> Result<(Povm, Povm)> {
    for (basis, what) in [(basis1, "first basis"), (basis2, "second basis")] {
        if basis.len() != 3 {
            return Err(Error::InvalidArgument(format!("{what} must have 3 vectors, got {}", basis.len())));
        }
        for v in basis {
            check_dim(3, v.dim())?;
        }
        check_orthonormal(basis, what)?;
    }
    if (basis1[0].inner(&basis2[0]).norm() - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidArgument("second basis must start with the first basis vector".into()));
    }
    Ok((split_povm(basis1), split_povm(basis2)))
}

/// Computational basis and its `π/4` Givens rotation in `span{|1⟩, |2⟩}`.
pub fn appendix_c_default_bases() -> (Vec<PureState>, Vec<PureState>) {
    let first: Vec<PureState> = (0..3).map(|i| PureState::basis(3, i)).collect();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let rotated = vec![
        first[0].clone(),
        PureState::new(vec![c64::from(0.0), c64::from(s), c64::from(s)]).expect("unit"),
        PureState::new(vec![c64::from(0.0), c64::from(-s), c64::from(s)]).expect("unit"),
    ];
    (first, rotated)
}

/// [`appendix_c_pair`] on [`appendix_c_default_bases`]; also returns `φ₁`.
pub fn appendix_c_default() -> (Povm, Povm, PureState) {
    let (b1, b2) = appendix_c_default_bases();
    let (a, b) = appendix_c_pair(&b1, &b2).expect("default bases are valid");
    (a, b, b1[0].clone())
}

/// Instrument that measures `povm` and then prepares `prep[i]` on outcome `i`.
///
/// With `A_i = Σ_k |v_{i,k}⟩⟨v_{i,k}|` from the eigendecomposition of each
/// effect, the Kraus operators are `|ξ_i⟩⟨v_{i,k}|`, so the channel is
/// `ρ ↦ Σ_i tr[ρ A_i] |ξ_i⟩⟨ξ_i|`.
pub fn measure_and_prepare_instrument(povm: &Povm, prep: &[PureState]) -> Result<Instrument> {
    if prep.len() != povm.len() {
        return Err(Error::InvalidArgument(format!("{} preparation states for {} effects", prep.len(), povm.len())));
    }
    let d = povm.dim();
    let mut kraus = Vec::with_capacity(povm.len());
    for (effect, xi) in povm.effects().iter().zip(prep) {
        check_dim(d, xi.dim())?;
        let eig = linalg::eigh(effect);
        if eig.values[0] < -linalg::PSD_CLAMP {
            return Err(Error::NotPositive { min_eigenvalue: eig.values[0] });
        }
        let mut ops: Vec<ComplexMatrix> = eig
            .values
            .iter()
            .enumerate()
            .filter(|(_, &l)| l > linalg::PSD_CLAMP)
            .map(|(k, &l)| {
                let v: Vec<c64> = eig.vectors.column(k).iter().map(|z| z * l.sqrt()).collect();
                linalg::outer(xi.amplitudes(), &v)
            })
            .collect();
        if ops.is_empty() {
            ops.push(ComplexMatrix::zeros(d, d));
        }
        kraus.push(ops);
    }
    Instrument::new(kraus)
}
