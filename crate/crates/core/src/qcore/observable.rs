use serde::{Deserialize, Serialize};

use super::json::{InstrumentJson, PovmJson};
use super::linalg::{self, c64, ComplexMatrix, HERMITIAN_TOL};
use super::state::{DensityOperator, Distribution};
use crate::error::{Error, Result};

/// Tolerance for projector, completeness and effect-range checks.
pub const OPERATOR_TOL: f64 = 1e-10;
/// Default eigenvalue merge tolerance for [`spectral_decompose`].
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-8;

/// Observable `A = Σ a_i P_i` with orthogonal spectral projectors.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectiveObservable {
    eigenvalues: Vec<f64>,
    projectors: Vec<ComplexMatrix>,
}

impl ProjectiveObservable {
    pub fn new(eigenvalues: Vec<f64>, projectors: Vec<ComplexMatrix>) -> Result<Self> {
        if projectors.is_empty() {
            return Err(Error::Empty("spectral resolution"));
        }
        if eigenvalues.len() != projectors.len() {
            return Err(Error::InvalidArgument(format!(
                "{} eigenvalues for {} projectors",
                eigenvalues.len(),
                projectors.len()
            )));
        }
        for (i, a) in eigenvalues.iter().enumerate() {
            if !a.is_finite() {
                return Err(Error::NonFinite("eigenvalue"));
            }
            if eigenvalues[..i].contains(a) {
                return Err(Error::InvalidArgument(format!("repeated eigenvalue {a}")));
            }
        }
        let d = linalg::ensure_square(&projectors[0])?;
        let mut sum = ComplexMatrix::zeros(d, d);
        for (i, p) in projectors.iter().enumerate() {
            check_dim(d, linalg::ensure_square(p)?)?;
            let dev = linalg::hermitian_deviation(p);
            if dev > OPERATOR_TOL {
                return Err(Error::InvalidProjector { index: i, reason: format!("not Hermitian ({dev:.3e})") });
            }
            let idem = linalg::max_abs_diff(&(p * p), p);
            if idem > OPERATOR_TOL {
                return Err(Error::InvalidProjector { index: i, reason: format!("P^2 != P ({idem:.3e})") });
            }
            for (j, q) in projectors[..i].iter().enumerate() {
                let overlap = (p * q).iter().map(|z| z.norm()).fold(0.0, f64::max);
                if overlap > OPERATOR_TOL {
                    return Err(Error::InvalidProjector {
                        index: i,
                        reason: format!("not orthogonal to projector {j} ({overlap:.3e})"),
                    });
                }
            }
            sum += p;
        }
        let deviation = linalg::max_abs_diff(&sum, &linalg::identity(d));
        if deviation > OPERATOR_TOL {
            return Err(Error::Incomplete { what: "spectral projectors", deviation });
        }
        Ok(Self { eigenvalues, projectors })
    }

    pub fn dim(&self) -> usize {
        self.projectors[0].nrows()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn projectors(&self) -> &[ComplexMatrix] {
        &self.projectors
    }

    /// `Σ a_i P_i`.
    pub fn matrix(&self) -> ComplexMatrix {
        let d = self.dim();
        self.eigenvalues
            .iter()
            .zip(&self.projectors)
            .fold(ComplexMatrix::zeros(d, d), |acc, (&a, p)| acc + p * c64::from(a))
    }

    /// The von Neumann–Lüders instrument: one Kraus operator `P_i` per outcome.
    pub fn instrument(&self) -> Instrument {
        Instrument { kraus: self.projectors.iter().map(|p| vec![p.clone()]).collect() }
    }

    pub fn povm(&self) -> Povm {
        Povm { effects: self.projectors.clone() }
    }
}

/// Effects `{A_i}` with `0 ≤ A_i ≤ 𝕀` and `Σ A_i = 𝕀`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "PovmJson", try_from = "PovmJson")]
pub struct Povm {
    effects: Vec<ComplexMatrix>,
}

impl Povm {
    pub fn new(effects: Vec<ComplexMatrix>) -> Result<Self> {
        if effects.is_empty() {
            return Err(Error::Empty("POVM"));
        }
        let d = linalg::ensure_square(&effects[0])?;
        let mut sum = ComplexMatrix::zeros(d, d);
        for e in &effects {
            check_dim(d, linalg::ensure_hermitian(e, HERMITIAN_TOL)?)?;
            let spectrum = linalg::eigvalsh(e);
            let (lo, hi) = (spectrum[0], spectrum[d - 1]);
            if lo < -OPERATOR_TOL {
                return Err(Error::NotPositive { min_eigenvalue: lo });
            }
            if hi > 1.0 + OPERATOR_TOL {
                return Err(Error::InvalidArgument(format!("effect eigenvalue {hi} exceeds 1")));
            }
            sum += e;
        }
        let deviation = linalg::max_abs_diff(&sum, &linalg::identity(d));
        if deviation > OPERATOR_TOL {
            return Err(Error::Incomplete { what: "POVM effects", deviation });
        }
        Ok(Self { effects })
    }

    pub fn dim(&self) -> usize {
        self.effects[0].nrows()
    }

    pub fn len(&self) -> usize {
        self.effects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.effects.is_empty()
    }

    pub fn effects(&self) -> &[ComplexMatrix] {
        &self.effects
    }
}

/// Outcome-indexed Kraus operators `{K_{i,k}}` with `Σ K†K = 𝕀`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "InstrumentJson", try_from = "InstrumentJson")]
pub struct Instrument {
    kraus: Vec<Vec<ComplexMatrix>>,
}

impl Instrument {
    pub fn new(kraus: Vec<Vec<ComplexMatrix>>) -> Result<Self> {
        let first = kraus.first().and_then(|ops| ops.first()).ok_or(Error::Empty("instrument"))?;
        let d = linalg::ensure_square(first)?;
        let mut sum = ComplexMatrix::zeros(d, d);
        for ops in &kraus {
            if ops.is_empty() {
                return Err(Error::Empty("Kraus list for an outcome"));
            }
            for k in ops {
                check_dim(d, linalg::ensure_square(k)?)?;
                sum += k.adjoint() * k;
            }
        }
        let deviation = linalg::max_abs_diff(&sum, &linalg::identity(d));
        if deviation > OPERATOR_TOL {
            return Err(Error::Incomplete { what: "Kraus operators", deviation });
        }
        Ok(Self { kraus })
    }

    pub fn dim(&self) -> usize {
        self.kraus[0][0].nrows()
    }

    pub fn outcomes(&self) -> usize {
        self.kraus.len()
    }

    pub fn kraus(&self) -> &[Vec<ComplexMatrix>] {
        &self.kraus
    }

    /// All Kraus operators, outcome by outcome.
    pub fn kraus_ops(&self) -> impl Iterator<Item = &ComplexMatrix> {
        self.kraus.iter().flatten()
    }

    /// `A_i = Σ_k K†_{i,k} K_{i,k}`.
    pub fn induced_effects(&self) -> Vec<ComplexMatrix> {
        self.kraus
            .iter()
            .map(|ops| linalg::hermitian_part(&ops.iter().map(|k| k.adjoint() * k).sum::<ComplexMatrix>()))
            .collect()
    }

    /// The POVM this instrument implements.
    pub fn povm(&self) -> Povm {
        Povm { effects: self.induced_effects() }
    }

    /// `tr[Φ_i(ρ)]` for every outcome.
    pub fn outcome_probabilities(&self, rho: &DensityOperator) -> Result<Vec<f64>> {
        check_dim(self.dim(), rho.dim())?;
        Ok(self
            .kraus
            .iter()
            .map(|ops| ops.iter().map(|k| linalg::trace(&(k * rho.matrix() * k.adjoint())).re).sum())
            .collect())
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// Spectral resolution of a Hermitian matrix.
///
/// Eigenvalues closer than `cluster_tol` to their neighbour are merged into a
/// single projector carrying their mean.
pub fn spectral_decompose(h: &ComplexMatrix, cluster_tol: f64) -> Result<ProjectiveObservable> {
    let d = linalg::ensure_hermitian(h, HERMITIAN_TOL)?;
    let eig = linalg::eigh(h);
    let mut eigenvalues = Vec::new();
    let mut projectors = Vec::new();
    let mut start = 0;
    while start < d {
        let mut end = start + 1;
        while end < d && eig.values[end] - eig.values[end - 1] <= cluster_tol {
            end += 1;
        }
        let block = eig.vectors.columns(start, end - start);
        let mean = eig.values[start..end].iter().sum::<f64>() / (end - start) as f64;
        eigenvalues.push(mean);
        projectors.push(linalg::hermitian_part(&(block * block.adjoint())));
        start = end;
    }
    Ok(ProjectiveObservable { eigenvalues, projectors })
}

/// `Φ^A(ρ) = Σ P_i ρ P_i`.
pub fn projective_channel(a: &ProjectiveObservable, rho: &DensityOperator) -> Result<DensityOperator> {
    check_dim(a.dim(), rho.dim())?;
    let d = a.dim();
    let out = a.projectors().iter().fold(ComplexMatrix::zeros(d, d), |acc, p| acc + p * rho.matrix() * p);
    Ok(DensityOperator::from_channel_output(out))
}

/// Lüders instrument `K_i = A_i^{1/2}`.
pub fn luders_instrument(povm: &Povm) -> Result<Instrument> {
    let kraus = povm.effects().iter().map(|e| linalg::matrix_sqrt(e).map(|r| vec![r])).collect::<Result<Vec<_>>>()?;
    Ok(Instrument { kraus })
}

/// Measurement channel `Φ(ρ) = Σ_{i,k} K_{i,k} ρ K†_{i,k}`.
pub fn apply_channel(instrument: &Instrument, rho: &DensityOperator) -> Result<DensityOperator> {
    check_dim(instrument.dim(), rho.dim())?;
    let d = rho.dim();
    let out = instrument.kraus_ops().fold(ComplexMatrix::zeros(d, d), |acc, k| acc + k * rho.matrix() * k.adjoint());
    Ok(DensityOperator::from_channel_output(out))
}

/// `p(i) = tr[ρ A_i]`.
pub fn outcome_distribution(povm: &Povm, rho: &DensityOperator) -> Result<Distribution> {
    check_dim(povm.dim(), rho.dim())?;
    let probs = povm
        .effects()
        .iter()
        .map(|e| rho.matrix().iter().zip(e.transpose().iter()).map(|(r, a)| (r * a).re).sum())
        .collect();
    Distribution::new(probs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::linalg::{max_abs_diff, sigma_x, sigma_z};
    use crate::qcore::PureState;
    use approx::assert_abs_diff_eq;

    fn plus() -> PureState {
        PureState::normalized(vec![c64::from(1.0), c64::from(1.0)]).unwrap()
    }

    #[test]
    fn decompose_sigma_z() {
        let a = spectral_decompose(&sigma_z(), DEFAULT_CLUSTER_TOL).unwrap();
        assert_eq!(a.eigenvalues(), &[-1.0, 1.0]);
        assert!(max_abs_diff(&a.projectors()[1], &PureState::basis(2, 0).projector()) < 1e-14);
        assert!(max_abs_diff(&a.projectors()[0], &PureState::basis(2, 1).projector()) < 1e-14);
    }

    #[test]
    fn decompose_identity_merges() {
        let a = spectral_decompose(&linalg::identity(3), DEFAULT_CLUSTER_TOL).unwrap();
        assert_eq!(a.eigenvalues().len(), 1);
        assert_abs_diff_eq!(a.eigenvalues()[0], 1.0, epsilon = 1e-14);
        assert!(max_abs_diff(&a.projectors()[0], &linalg::identity(3)) < 1e-13);
    }

    #[test]
    fn decompose_sigma_x_matches_hand_eigensolve() {
        // eigenvectors (|0⟩ ± |1⟩)/√2 for ±1
        let a = spectral_decompose(&sigma_x(), DEFAULT_CLUSTER_TOL).unwrap();
        let minus = PureState::normalized(vec![c64::from(1.0), c64::from(-1.0)]).unwrap();
        assert!(max_abs_diff(&a.projectors()[1], &plus().projector()) < 1e-14);
        assert!(max_abs_diff(&a.projectors()[0], &minus.projector()) < 1e-14);
    }

    #[test]
    fn decompose_rejects_non_hermitian() {
        let m = ComplexMatrix::from_row_slice(2, 2, &[c64::from(0.0), c64::from(1.0), c64::from(0.0), c64::from(0.0)]);
        assert!(matches!(spectral_decompose(&m, 1e-8), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn projective_channel_examples() {
        let z = spectral_decompose(&sigma_z(), DEFAULT_CLUSTER_TOL).unwrap();
        let zero = PureState::basis(2, 0).density();
        assert!(max_abs_diff(projective_channel(&z, &zero).unwrap().matrix(), zero.matrix()) < 1e-15);
        let out = projective_channel(&z, &plus().density()).unwrap();
        assert!(max_abs_diff(out.matrix(), DensityOperator::maximally_mixed(2).matrix()) < 1e-15);
        let mixed = DensityOperator::maximally_mixed(2);
        let x = spectral_decompose(&sigma_x(), DEFAULT_CLUSTER_TOL).unwrap();
        assert!(max_abs_diff(projective_channel(&x, &mixed).unwrap().matrix(), mixed.matrix()) < 1e-15);
        assert!(matches!(
            projective_channel(&z, &DensityOperator::maximally_mixed(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn luders_examples() {
        let proj = Povm::new(vec![PureState::basis(2, 0).projector(), PureState::basis(2, 1).projector()]).unwrap();
        let inst = luders_instrument(&proj).unwrap();
        for (ops, e) in inst.kraus().iter().zip(proj.effects()) {
            assert!(max_abs_diff(&ops[0], e) < 1e-14);
        }
        let half = linalg::identity(2) * c64::from(0.5);
        let trivial = Povm::new(vec![half.clone(), half]).unwrap();
        let inst = luders_instrument(&trivial).unwrap();
        for ops in inst.kraus() {
            assert!(max_abs_diff(&ops[0], &(linalg::identity(2) * c64::from(0.5f64.sqrt()))) < 1e-14);
        }
        let out = apply_channel(&luders_instrument(&proj).unwrap(), &plus().density()).unwrap();
        assert!(max_abs_diff(out.matrix(), DensityOperator::maximally_mixed(2).matrix()) < 1e-14);
    }

    #[test]
    fn outcome_distribution_examples() {
        let proj = Povm::new(vec![PureState::basis(2, 0).projector(), PureState::basis(2, 1).projector()]).unwrap();
        let p = outcome_distribution(&proj, &PureState::basis(2, 0).density()).unwrap();
        assert_eq!(p.probs(), &[1.0, 0.0]);
        let half = linalg::identity(2) * c64::from(0.5);
        let trivial = Povm::new(vec![half.clone(), half]).unwrap();
        let p = outcome_distribution(&trivial, &plus().density()).unwrap();
        assert_abs_diff_eq!(p.probs()[0], 0.5, epsilon = 1e-15);
    }

    #[test]
    fn validation_failures() {
        let p0 = PureState::basis(2, 0).projector();
        assert!(matches!(Povm::new(vec![p0.clone()]), Err(Error::Incomplete { .. })));
        assert!(matches!(Instrument::new(vec![vec![p0.clone()]]), Err(Error::Incomplete { .. })));
        assert!(matches!(Instrument::new(vec![vec![]]), Err(Error::Empty(_))));
        assert!(
            ProjectiveObservable::new(vec![1.0, 1.0], vec![p0.clone(), PureState::basis(2, 1).projector()]).is_err()
        );
        assert!(matches!(
            ProjectiveObservable::new(vec![1.0, 2.0], vec![p0.clone(), p0]),
            Err(Error::InvalidProjector { .. })
        ));
        let over = linalg::identity(2) * c64::from(1.5);
        let under = linalg::identity(2) * c64::from(-0.5);
        assert!(Povm::new(vec![over, under]).is_err());
    }
}
