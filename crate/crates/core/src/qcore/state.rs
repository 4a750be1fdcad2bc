use serde::{Deserialize, Serialize};

use super::json::StateJson;
use super::linalg::{self, c64, ComplexMatrix};
use crate::error::{Error, Result};

const NORM_TOL: f64 = 1e-12;
/// Amplitudes below this magnitude are skipped when fixing the global phase.
const PHASE_ANCHOR_TOL: f64 = 1e-9;

/// Unit vector in `C^d`, stored with a canonical global phase.
///
/// The first amplitude whose magnitude exceeds `1e-9` is made real and
/// nonnegative, so two states that differ only by a phase compare equal.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "StateJson", try_from = "StateJson")]
pub struct PureState {
    amps: Vec<c64>,
}

impl PureState {
    /// Wraps already-normalized amplitudes (`|Σ|c_i|² - 1| ≤ 1e-12`).
    pub fn new(amps: Vec<c64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::Empty("state"));
        }
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("state"));
        }
        let norm_sq: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(Self::canonical(amps))
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(amps: Vec<c64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::Empty("state"));
        }
        let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !norm.is_finite() {
            return Err(Error::NonFinite("state"));
        }
        if norm == 0.0 {
            return Err(Error::NotNormalized { norm_sq: 0.0 });
        }
        Ok(Self::canonical(amps.into_iter().map(|z| z / norm).collect()))
    }

    /// Computational basis vector `|index⟩` in dimension `d`.
    pub fn basis(d: usize, index: usize) -> Self {
        assert!(index < d, "basis index {index} out of range for d = {d}");
        let mut amps = vec![c64::new(0.0, 0.0); d];
        amps[index] = c64::new(1.0, 0.0);
        Self { amps }
    }

    /// Qubit state `(𝕀 + r·σ)/2` for a unit Bloch vector `r`.
    pub fn from_bloch(r: [f64; 3]) -> Result<Self> {
        let len = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
        if (len - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidArgument(format!("Bloch vector has length {len}, expected 1")));
        }
        let [x, y, z] = r.map(|v| v / len);
        let theta = z.clamp(-1.0, 1.0).acos();
        let phi = y.atan2(x);
        Ok(Self::from_angles(theta, phi))
    }

    /// `cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩`.
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        let (s, c) = (0.5 * theta).sin_cos();
        Self::canonical(vec![c64::new(c, 0.0), c64::from_polar(s, phi)])
    }

    /// Bloch vector of a qubit state; `None` for `d != 2`.
    pub fn bloch_vector(&self) -> Option<[f64; 3]> {
        if self.dim() != 2 {
            return None;
        }
        let (a, b) = (self.amps[0], self.amps[1]);
        let off = a.conj() * b;
        Some([2.0 * off.re, 2.0 * off.im, a.norm_sqr() - b.norm_sqr()])
    }

    fn canonical(mut amps: Vec<c64>) -> Self {
        if let Some(anchor) = amps.iter().find(|z| z.norm() > PHASE_ANCHOR_TOL).copied() {
            let phase = anchor.conj() / anchor.norm();
            for z in &mut amps {
                *z *= phase;
            }
        }
        Self { amps }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[c64] {
        &self.amps
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &PureState) -> c64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn projector(&self) -> ComplexMatrix {
        linalg::outer(&self.amps, &self.amps)
    }

    pub fn density(&self) -> DensityOperator {
        DensityOperator { matrix: self.projector() }
    }
}

/// Hermitian, positive semidefinite, unit-trace matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityOperator {
    matrix: ComplexMatrix,
}

impl DensityOperator {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        linalg::ensure_hermitian(&matrix, 1e-12)?;
        let trace = linalg::trace(&matrix).re;
        if (trace - 1.0).abs() > 1e-12 {
            return Err(Error::BadTrace { trace });
        }
        let min = linalg::eigvalsh(&matrix).first().copied().unwrap_or(0.0);
        if min < -1e-10 {
            return Err(Error::NotPositive { min_eigenvalue: min });
        }
        Ok(Self { matrix })
    }

    /// Channel outputs are valid by construction; only the Hermitian part is kept.
    pub(crate) fn from_channel_output(matrix: ComplexMatrix) -> Self {
        Self { matrix: linalg::hermitian_part(&matrix) }
    }

    /// `𝕀/d`.
    pub fn maximally_mixed(d: usize) -> Self {
        Self { matrix: linalg::identity(d) * c64::from(1.0 / d as f64) }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }
}

impl From<&PureState> for DensityOperator {
    fn from(psi: &PureState) -> Self {
        psi.density()
    }
}

/// Outcome probabilities of a measurement.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Distribution {
    probs: Vec<f64>,
}

impl Distribution {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::Empty("distribution"));
        }
        if let Some(p) = probs.iter().find(|p| !p.is_finite() || **p < -1e-12 || **p > 1.0 + 1e-12) {
            return Err(Error::InvalidDistribution(format!("probability {p} outside [0, 1]")));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidDistribution(format!("probabilities sum to {sum}")));
        }
        Ok(Self { probs })
    }

    pub fn uniform(n: usize) -> Self {
        Self { probs: vec![1.0 / n as f64; n] }
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }
}
