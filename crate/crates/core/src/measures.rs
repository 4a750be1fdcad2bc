//! Distances between states, measurement disturbance and outcome entropies.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::linalg::{self, c64, ComplexMatrix};
use crate::qcore::{
    apply_channel, check_dim, DensityOperator, Distribution, Instrument, Povm, ProjectiveObservable, PureState,
};

/// Distance used to quantify disturbance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DistanceKind {
    /// Trace distance `½ tr|Φ(ρ) - ρ|`.
    #[serde(rename = "1")]
    Trace,
    /// `1 - F²(Φ(ρ), ρ)`.
    #[serde(rename = "F")]
    Fidelity,
    /// Operator norm `‖Φ(ρ) - ρ‖`.
    #[serde(rename = "inf")]
    OpNorm,
}

impl DistanceKind {
    pub const ALL: [DistanceKind; 3] = [DistanceKind::Trace, DistanceKind::Fidelity, DistanceKind::OpNorm];

    pub fn label(self) -> &'static str {
        match self {
            DistanceKind::Trace => "1",
            DistanceKind::Fidelity => "F",
            DistanceKind::OpNorm => "inf",
        }
    }
}

impl fmt::Display for DistanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for DistanceKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "1" | "trace" => Ok(DistanceKind::Trace),
            "f" | "fidelity" => Ok(DistanceKind::Fidelity),
            "inf" | "opnorm" | "operator" => Ok(DistanceKind::OpNorm),
            _ => Err(Error::InvalidArgument(format!("unknown distance `{s}` (expected 1, F or inf)"))),
        }
    }
}

/// Entropy used to quantify the spread of an outcome distribution.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EntropyKind {
    /// Natural-log Shannon entropy.
    Shannon,
    /// `T_β = (Σ p^β - 1) / (1 - β)`.
    Tsallis(f64),
}

impl EntropyKind {
    pub fn tsallis(beta: f64) -> Result<Self> {
        if !beta.is_finite() || beta <= 0.0 || beta == 1.0 {
            return Err(Error::InvalidArgument(format!("Tsallis index must be positive, finite and != 1, got {beta}")));
        }
        Ok(EntropyKind::Tsallis(beta))
    }

    /// Largest value over distributions with `n` outcomes (attained by the uniform one).
    pub fn max_value(self, n: usize) -> f64 {
        let n = n as f64;
        match self {
            EntropyKind::Shannon => n.ln(),
            EntropyKind::Tsallis(b) => (n.powf(1.0 - b) - 1.0) / (1.0 - b),
        }
    }
}

impl fmt::Display for EntropyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EntropyKind::Shannon => f.write_str("shannon"),
            EntropyKind::Tsallis(b) => write!(f, "tsallis:{b}"),
        }
    }
}

impl FromStr for EntropyKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        if lower == "shannon" {
            return Ok(EntropyKind::Shannon);
        }
        if let Some(beta) = lower.strip_prefix("tsallis:") {
            let beta: f64 = beta.parse().map_err(|_| Error::InvalidArgument(format!("bad Tsallis index in `{s}`")))?;
            return EntropyKind::tsallis(beta);
        }
        Err(Error::InvalidArgument(format!("unknown entropy `{s}` (expected shannon or tsallis:<beta>)")))
    }
}

impl Serialize for EntropyKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for EntropyKind {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `½ tr|ρ - σ|`.
pub fn trace_distance(rho: &DensityOperator, sigma: &DensityOperator) -> Result<f64> {
    check_dim(rho.dim(), sigma.dim())?;
    Ok((0.5 * linalg::trace_norm(&(rho.matrix() - sigma.matrix()))).clamp(0.0, 1.0))
}

/// `F²(ρ, |ψ⟩⟨ψ|) = ⟨ψ|ρ|ψ⟩`.
pub fn fidelity_sq(rho: &DensityOperator, psi: &PureState) -> Result<f64> {
    check_dim(rho.dim(), psi.dim())?;
    Ok(linalg::expectation(rho.matrix(), psi.amplitudes()).re.clamp(0.0, 1.0))
}

/// Uhlmann fidelity `tr √(√ρ σ √ρ)` between two mixed states.
pub fn fidelity(rho: &DensityOperator, sigma: &DensityOperator) -> Result<f64> {
    check_dim(rho.dim(), sigma.dim())?;
    let root = linalg::matrix_sqrt(rho.matrix())?;
    let inner = linalg::hermitian_part(&(&root * sigma.matrix() * &root));
    let spectrum = linalg::eigvalsh(&inner);
    Ok(spectrum.iter().map(|x| x.max(0.0).sqrt()).sum::<f64>().clamp(0.0, 1.0))
}

/// `‖ρ - σ‖`, the largest singular value of the difference.
pub fn opnorm_distance(rho: &DensityOperator, sigma: &DensityOperator) -> Result<f64> {
    check_dim(rho.dim(), sigma.dim())?;
    Ok(linalg::spectral_norm(&(rho.matrix() - sigma.matrix())).clamp(0.0, 1.0))
}

/// Disturbance of the pure state `ψ` under the measurement channel of `instrument`.
pub fn disturbance(kind: DistanceKind, instrument: &Instrument, psi: &PureState) -> Result<f64> {
    check_dim(instrument.dim(), psi.dim())?;
    Ok(disturbance_of_amplitudes(kind, instrument, psi.amplitudes()))
}

/// [`disturbance`] on raw unit-norm amplitudes; dimensions are not checked.
///
/// Uses `Φ(|ψ⟩⟨ψ|) = Σ (Kψ)(Kψ)†`, so the fidelity route needs only the
/// overlaps `⟨ψ|K|ψ⟩`.
pub fn disturbance_of_amplitudes(kind: DistanceKind, instrument: &Instrument, psi: &[c64]) -> f64 {
    match kind {
        DistanceKind::Fidelity => (1.0 - kraus_overlap_sum(instrument, psi)).clamp(0.0, 1.0),
        DistanceKind::Trace | DistanceKind::OpNorm => {
            let d = psi.len();
            let mut diff = ComplexMatrix::zeros(d, d);
            let mut image = vec![c64::new(0.0, 0.0); d];
            for k in instrument.kraus_ops() {
                linalg::apply(k, psi, &mut image);
                add_outer(&mut diff, &image, 1.0);
            }
            add_outer(&mut diff, psi, -1.0);
            let spectrum = linalg::eigvalsh(&diff);
            let value = match kind {
                DistanceKind::Trace => 0.5 * spectrum.iter().map(|x| x.abs()).sum::<f64>(),
                _ => spectrum.iter().fold(0.0_f64, |m, x| m.max(x.abs())),
            };
            value.clamp(0.0, 1.0)
        }
    }
}

fn add_outer(m: &mut ComplexMatrix, v: &[c64], weight: f64) {
    let d = v.len();
    for j in 0..d {
        let vj = v[j].conj() * weight;
        for i in 0..d {
            m[(i, j)] += v[i] * vj;
        }
    }
}

/// `Σ_{i,k} |⟨ψ|K_{i,k}|ψ⟩|²`.
fn kraus_overlap_sum(instrument: &Instrument, psi: &[c64]) -> f64 {
    instrument.kraus_ops().map(|k| linalg::expectation(k, psi).norm_sqr()).sum()
}

/// Disturbance of an arbitrary density operator, computed through the full
/// channel output. Fidelity uses the general Uhlmann formula.
pub fn disturbance_mixed(kind: DistanceKind, instrument: &Instrument, rho: &DensityOperator) -> Result<f64> {
    let out = apply_channel(instrument, rho)?;
    match kind {
        DistanceKind::Trace => trace_distance(&out, rho),
        DistanceKind::Fidelity => {
            let f = fidelity(&out, rho)?;
            Ok((1.0 - f * f).clamp(0.0, 1.0))
        }
        DistanceKind::OpNorm => opnorm_distance(&out, rho),
    }
}

/// `1 - Σ_{i,k} |⟨ψ|K_{i,k}|ψ⟩|²`; zero exactly when `ψ` is left undisturbed.
pub fn zero_disturbance_residual(instrument: &Instrument, psi: &PureState) -> Result<f64> {
    check_dim(instrument.dim(), psi.dim())?;
    Ok((1.0 - kraus_overlap_sum(instrument, psi.amplitudes())).clamp(0.0, 1.0))
}

/// Entropy of a validated distribution.
pub fn entropy(kind: EntropyKind, p: &Distribution) -> Result<f64> {
    if let Some(bad) = p.probs().iter().find(|&&x| x < -1e-12) {
        return Err(Error::InvalidDistribution(format!("negative probability {bad}")));
    }
    Ok(entropy_of(kind, p.probs()))
}

/// Entropy of raw probabilities; tiny negatives are clamped to zero and
/// `0·log 0 = 0^β = 0`.
pub fn entropy_of(kind: EntropyKind, probs: &[f64]) -> f64 {
    let clean = probs.iter().map(|&p| p.max(0.0)).filter(|&p| p > 0.0);
    let value = match kind {
        EntropyKind::Shannon => -clean.map(|p| p * p.ln()).sum::<f64>(),
        EntropyKind::Tsallis(2.0) => 1.0 - clean.map(|p| p * p).sum::<f64>(),
        EntropyKind::Tsallis(b) => (clean.map(|p| p.powf(b)).sum::<f64>() - 1.0) / (1.0 - b),
    };
    value.max(0.0)
}

/// Entropy of the outcome distribution of `povm` in state `ψ`.
pub fn uncertainty(kind: EntropyKind, povm: &Povm, psi: &PureState) -> Result<f64> {
    check_dim(povm.dim(), psi.dim())?;
    Ok(uncertainty_of_amplitudes(kind, povm, psi.amplitudes()))
}

pub fn uncertainty_of_amplitudes(kind: EntropyKind, povm: &Povm, psi: &[c64]) -> f64 {
    let probs: Vec<f64> = povm.effects().iter().map(|e| linalg::expectation(e, psi).re).collect();
    entropy_of(kind, &probs)
}

/// `T₂` of the outcome distribution of a projective measurement:
/// `1 - Σ ⟨ψ|P_i|ψ⟩²`.
pub fn t2_of_measurement(a: &ProjectiveObservable, psi: &PureState) -> Result<f64> {
    check_dim(a.dim(), psi.dim())?;
    let sum: f64 = a.projectors().iter().map(|p| linalg::expectation(p, psi.amplitudes()).re.powi(2)).sum();
    Ok((1.0 - sum).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::linalg::{sigma_x, sigma_z};
    use crate::qcore::{luders_instrument, projective_channel, spectral_decompose, DEFAULT_CLUSTER_TOL};
    use approx::assert_abs_diff_eq;

    fn plus() -> PureState {
        PureState::normalized(vec![c64::from(1.0), c64::from(1.0)]).unwrap()
    }

    fn z_instrument() -> Instrument {
        spectral_decompose(&sigma_z(), DEFAULT_CLUSTER_TOL).unwrap().instrument()
    }

    /// Eigenvalues of a real symmetric 2x2 matrix by the quadratic formula.
    fn sym2_eigs(a: f64, b: f64, c: f64) -> [f64; 2] {
        let disc = ((a - c) * (a - c) + 4.0 * b * b).sqrt();
        [(a + c - disc) / 2.0, (a + c + disc) / 2.0]
    }

    #[test]
    fn trace_distance_examples() {
        let zero = PureState::basis(2, 0).density();
        let one = PureState::basis(2, 1).density();
        assert_abs_diff_eq!(trace_distance(&zero, &zero).unwrap(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(trace_distance(&zero, &one).unwrap(), 1.0, epsilon = 1e-15);
        // |0⟩⟨0| - |+⟩⟨+| = [[1/2, -1/2], [-1/2, -1/2]]
        let [l0, l1] = sym2_eigs(0.5, -0.5, -0.5);
        let oracle = 0.5 * (l0.abs() + l1.abs());
        assert_abs_diff_eq!(oracle, std::f64::consts::FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_abs_diff_eq!(trace_distance(&zero, &plus().density()).unwrap(), oracle, epsilon = 1e-14);
    }

    #[test]
    fn fidelity_examples() {
        let psi = PureState::from_bloch([0.0, 0.6, 0.8]).unwrap();
        assert_abs_diff_eq!(fidelity_sq(&psi.density(), &psi).unwrap(), 1.0, epsilon = 1e-14);
        let mixed = DensityOperator::maximally_mixed(2);
        assert_abs_diff_eq!(fidelity_sq(&mixed, &psi).unwrap(), 0.5, epsilon = 1e-15);
        let z = spectral_decompose(&sigma_z(), DEFAULT_CLUSTER_TOL).unwrap();
        let after = projective_channel(&z, &plus().density()).unwrap();
        assert_abs_diff_eq!(fidelity_sq(&after, &plus()).unwrap(), 0.5, epsilon = 1e-15);
        // Uhlmann fidelity agrees with the pure-state shortcut
        let f = fidelity(&after, &plus().density()).unwrap();
        assert_abs_diff_eq!(f * f, 0.5, epsilon = 1e-7);
    }

    #[test]
    fn opnorm_examples() {
        let zero = PureState::basis(2, 0).density();
        let one = PureState::basis(2, 1).density();
        assert_abs_diff_eq!(opnorm_distance(&zero, &zero).unwrap(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(opnorm_distance(&zero, &one).unwrap(), 1.0, epsilon = 1e-15);
        let mixed = DensityOperator::maximally_mixed(2);
        assert_abs_diff_eq!(opnorm_distance(&mixed, &plus().density()).unwrap(), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn disturbance_examples() {
        let z = z_instrument();
        assert_abs_diff_eq!(disturbance(DistanceKind::Fidelity, &z, &PureState::basis(2, 0)).unwrap(), 0.0);
        assert_abs_diff_eq!(disturbance(DistanceKind::Fidelity, &z, &plus()).unwrap(), 0.5, epsilon = 1e-15);
        let oracle = trace_distance(&DensityOperator::maximally_mixed(2), &plus().density()).unwrap();
        assert_abs_diff_eq!(disturbance(DistanceKind::Trace, &z, &plus()).unwrap(), oracle, epsilon = 1e-15);
        assert_abs_diff_eq!(oracle, 0.5, epsilon = 1e-15);
        assert!(matches!(
            disturbance(DistanceKind::Trace, &z, &PureState::basis(3, 0)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn mixed_route_matches_pure_route() {
        let x = spectral_decompose(&sigma_x(), DEFAULT_CLUSTER_TOL).unwrap().instrument();
        let psi = PureState::from_bloch([0.6, 0.0, 0.8]).unwrap();
        for kind in DistanceKind::ALL {
            let pure = disturbance(kind, &x, &psi).unwrap();
            let mixed = disturbance_mixed(kind, &x, &psi.density()).unwrap();
            assert_abs_diff_eq!(pure, mixed, epsilon = 1e-7);
        }
    }

    #[test]
    fn residual_examples() {
        let z = z_instrument();
        assert_abs_diff_eq!(zero_disturbance_residual(&z, &PureState::basis(2, 1)).unwrap(), 0.0);
        assert_abs_diff_eq!(zero_disturbance_residual(&z, &plus()).unwrap(), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn entropy_examples() {
        let t2 = EntropyKind::tsallis(2.0).unwrap();
        assert_eq!(entropy(t2, &Distribution::new(vec![1.0, 0.0]).unwrap()).unwrap(), 0.0);
        assert_abs_diff_eq!(entropy(t2, &Distribution::uniform(2)).unwrap(), 0.5, epsilon = 1e-15);
        let p = Distribution::new(vec![1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0]).unwrap();
        assert_abs_diff_eq!(entropy(t2, &p).unwrap(), 1.0 - 18.0 / 36.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            entropy(EntropyKind::Shannon, &Distribution::uniform(4)).unwrap(),
            4f64.ln(),
            epsilon = 1e-15
        );
        assert_eq!(entropy(EntropyKind::Shannon, &Distribution::new(vec![0.0, 1.0]).unwrap()).unwrap(), 0.0);
    }

    #[test]
    fn tsallis_extremes() {
        for beta in [0.5, 2.0, 3.0, 0.25] {
            let kind = EntropyKind::tsallis(beta).unwrap();
            for n in 2..6 {
                let mut point = vec![0.0; n];
                point[n - 1] = 1.0;
                assert_eq!(entropy_of(kind, &point), 0.0);
                let uniform = entropy(kind, &Distribution::uniform(n)).unwrap();
                let n = n as f64;
                assert_abs_diff_eq!(uniform, (n.powf(1.0 - beta) - 1.0) / (1.0 - beta), epsilon = 1e-12);
            }
        }
        assert!(EntropyKind::tsallis(1.0).is_err());
        assert!(EntropyKind::tsallis(-2.0).is_err());
        assert!(EntropyKind::tsallis(f64::INFINITY).is_err());
    }

    #[test]
    fn kinds_parse_and_print() {
        assert_eq!("F".parse::<DistanceKind>().unwrap(), DistanceKind::Fidelity);
        assert_eq!("inf".parse::<DistanceKind>().unwrap(), DistanceKind::OpNorm);
        assert_eq!("1".parse::<DistanceKind>().unwrap(), DistanceKind::Trace);
        assert!("2".parse::<DistanceKind>().is_err());
        assert_eq!("tsallis:2".parse::<EntropyKind>().unwrap(), EntropyKind::Tsallis(2.0));
        assert_eq!(EntropyKind::Tsallis(2.0).to_string(), "tsallis:2");
        assert!("tsallis:1".parse::<EntropyKind>().is_err());
        assert_eq!(serde_json::to_string(&DistanceKind::OpNorm).unwrap(), "\"inf\"");
    }

    #[test]
    fn t2_examples() {
        let z = spectral_decompose(&sigma_z(), DEFAULT_CLUSTER_TOL).unwrap();
        let x = spectral_decompose(&sigma_x(), DEFAULT_CLUSTER_TOL).unwrap();
        assert_eq!(t2_of_measurement(&z, &PureState::basis(2, 0)).unwrap(), 0.0);
        assert_abs_diff_eq!(t2_of_measurement(&x, &PureState::basis(2, 0)).unwrap(), 0.5, epsilon = 1e-15);
        let diag = ComplexMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            c64::from(1.0),
            c64::from(2.0),
            c64::from(3.0),
        ]));
        let a = spectral_decompose(&diag, DEFAULT_CLUSTER_TOL).unwrap();
        let unbiased = PureState::normalized(vec![c64::from(1.0), c64::new(0.0, 1.0), c64::from(-1.0)]).unwrap();
        assert_abs_diff_eq!(t2_of_measurement(&a, &unbiased).unwrap(), 2.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn luders_matches_projective_for_projectors() {
        let x = spectral_decompose(&sigma_x(), DEFAULT_CLUSTER_TOL).unwrap();
        let lud = luders_instrument(&x.povm()).unwrap();
        let psi = PureState::from_bloch([0.0, 0.6, -0.8]).unwrap();
        for kind in DistanceKind::ALL {
            assert_abs_diff_eq!(
                disturbance(kind, &lud, &psi).unwrap(),
                disturbance(kind, &x.instrument(), &psi).unwrap(),
                epsilon = 1e-14
            );
        }
    }
}
