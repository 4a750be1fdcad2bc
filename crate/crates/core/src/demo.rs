//! Worked examples separating disturbance from uncertainty.

use serde::Serialize;

use crate::constructions::{appendix_c_default, measure_and_prepare_instrument};
use crate::error::Result;
use crate::measures::{disturbance, disturbance_mixed, uncertainty, DistanceKind, EntropyKind};
use crate::optimizer::sampling::random_projective_observable;
use crate::optimizer::{minimize_average_entropy, stream, Estimate, OptimizerConfig};
use crate::qcore::linalg::{self, c64};
use crate::qcore::{luders_instrument, DensityOperator, Instrument, Povm, ProjectiveObservable, PureState};
use crate::tradeoffs::{uncertainty_zero_state, DEFAULT_EIGEN_TOL};

/// Disturbance under each distance, keyed by its label.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DisturbanceTriple {
    #[serde(rename = "1")]
    pub trace: f64,
    #[serde(rename = "F")]
    pub fidelity: f64,
    #[serde(rename = "inf")]
    pub opnorm: f64,
}

impl DisturbanceTriple {
    pub fn of(instrument: &Instrument, psi: &PureState) -> Result<Self> {
        Ok(Self {
            trace: disturbance(DistanceKind::Trace, instrument, psi)?,
            fidelity: disturbance(DistanceKind::Fidelity, instrument, psi)?,
            opnorm: disturbance(DistanceKind::OpNorm, instrument, psi)?,
        })
    }

    pub fn max(&self) -> f64 {
        self.trace.max(self.fidelity).max(self.opnorm)
    }

    pub fn min(&self) -> f64 {
        self.trace.min(self.fidelity).min(self.opnorm)
    }
}

fn probabilities(povm: &Povm, psi: &PureState) -> Vec<f64> {
    povm.effects().iter().map(|e| linalg::expectation(e, psi.amplitudes()).re).collect()
}

/// Two qutrit POVMs whose Lüders instruments leave `φ₁` undisturbed although
/// no state has zero outcome entropy for both.
#[derive(Clone, Debug, Serialize)]
pub struct AppendixCDemo {
    pub state: PureState,
    pub distribution_a: Vec<f64>,
    pub distribution_b: Vec<f64>,
    pub disturbance_a: DisturbanceTriple,
    pub disturbance_b: DisturbanceTriple,
    pub zero_uncertainty_state: Option<PureState>,
    /// Numerical minimum of the average `T₂` entropy over pure states.
    pub entropy_minimum: Estimate,
    pub conclusion: String,
}

pub fn appendix_c(cfg: &OptimizerConfig) -> Result<AppendixCDemo> {
    let (a, b, phi1) = appendix_c_default();
    let disturbance_a = DisturbanceTriple::of(&luders_instrument(&a)?, &phi1)?;
    let disturbance_b = DisturbanceTriple::of(&luders_instrument(&b)?, &phi1)?;
    let povms = [a.clone(), b.clone()];
    let zero_uncertainty_state = uncertainty_zero_state(&povms, DEFAULT_EIGEN_TOL)?;
    let entropy_minimum = minimize_average_entropy(EntropyKind::Tsallis(2.0), &povms, cfg)?;
    let separated = disturbance_a.max() < 1e-12
        && disturbance_b.max() < 1e-12
        && zero_uncertainty_state.is_none()
        && entropy_minimum.value > 0.0;
    Ok(AppendixCDemo {
        distribution_a: probabilities(&a, &phi1),
        distribution_b: probabilities(&b, &phi1),
        state: phi1,
        disturbance_a,
        disturbance_b,
        zero_uncertainty_state,
        entropy_minimum,
        conclusion: if separated { "d=0, c_S>0" } else { "separation not observed" }.to_string(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct InstrumentCase {
    pub preparations: Vec<PureState>,
    pub disturbance: DisturbanceTriple,
}

/// A `σ_Z`-basis measurement implemented by measure-and-prepare instruments:
/// `|0⟩` has zero outcome entropy, yet it is disturbed.
#[derive(Clone, Debug, Serialize)]
pub struct GeneralInstrumentDemo {
    pub state: PureState,
    pub distribution: Vec<f64>,
    pub shannon: f64,
    pub tsallis2: f64,
    /// Outcome `i` reprepares the other basis state.
    pub swapped: InstrumentCase,
    /// Outcomes reprepare `|+⟩` and `|-⟩`.
    pub rotated: InstrumentCase,
}

pub fn general_instrument() -> Result<GeneralInstrumentDemo> {
    let z = ProjectiveObservable::new(
        vec![1.0, -1.0],
        vec![PureState::basis(2, 0).projector(), PureState::basis(2, 1).projector()],
    )?;
    let povm = z.povm();
    let psi = PureState::basis(2, 0);
    let case = |prep: Vec<PureState>| -> Result<InstrumentCase> {
        let instrument = measure_and_prepare_instrument(&povm, &prep)?;
        Ok(InstrumentCase { disturbance: DisturbanceTriple::of(&instrument, &psi)?, preparations: prep })
    };
    let swapped = case(vec![PureState::basis(2, 1), PureState::basis(2, 0)])?;
    let plus = PureState::normalized(vec![c64::from(1.0), c64::from(1.0)])?;
    let minus = PureState::normalized(vec![c64::from(1.0), c64::from(-1.0)])?;
    let rotated = case(vec![plus, minus])?;
    Ok(GeneralInstrumentDemo {
        distribution: probabilities(&povm, &psi),
        shannon: uncertainty(EntropyKind::Shannon, &povm, &psi)?,
        tsallis2: uncertainty(EntropyKind::Tsallis(2.0), &povm, &psi)?,
        state: psi,
        swapped,
        rotated,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct MixedStateCase {
    pub eigenvalues: Vec<f64>,
    pub disturbance: DisturbanceTriple,
}

/// The maximally mixed state is left unchanged by every projective measurement.
#[derive(Clone, Debug, Serialize)]
pub struct MixedStateDemo {
    pub d: usize,
    pub seed: u64,
    pub cases: Vec<MixedStateCase>,
    pub max_disturbance: f64,
}

pub fn mixed_state(d: usize, observables: usize, seed: u64) -> Result<MixedStateDemo> {
    crate::optimizer::sampling::check_sampling_dim(d)?;
    let rho = DensityOperator::maximally_mixed(d);
    let mut rng = stream(seed, 0);
    let cases = (0..observables)
        .map(|_| {
            let a = random_projective_observable(&mut rng, d);
            let inst = a.instrument();
            let disturbance = DisturbanceTriple {
                trace: disturbance_mixed(DistanceKind::Trace, &inst, &rho)?,
                fidelity: disturbance_mixed(DistanceKind::Fidelity, &inst, &rho)?,
                opnorm: disturbance_mixed(DistanceKind::OpNorm, &inst, &rho)?,
            };
            Ok(MixedStateCase { eigenvalues: a.eigenvalues().to_vec(), disturbance })
        })
        .collect::<Result<Vec<_>>>()?;
    let max_disturbance = cases.iter().map(|c| c.disturbance.max()).fold(0.0, f64::max);
    Ok(MixedStateDemo { d, seed, cases, max_disturbance })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn appendix_c_separation() {
        let cfg = OptimizerConfig { restarts: Some(16), ..OptimizerConfig::default() };
        let demo = appendix_c(&cfg).unwrap();
        for (p, want) in demo.distribution_a.iter().zip([1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0]) {
            assert!((p - want).abs() < 1e-12);
        }
        assert!(demo.disturbance_a.max() < 1e-12 && demo.disturbance_b.max() < 1e-12);
        assert!(demo.entropy_minimum.value > 0.1);
        assert_eq!(demo.conclusion, "d=0, c_S>0");
    }

    #[test]
    fn swapped_repreparation() {
        let demo = general_instrument().unwrap();
        assert_eq!(demo.shannon, 0.0);
        assert_eq!(demo.tsallis2, 0.0);
        assert!((demo.swapped.disturbance.min() - 1.0).abs() < 1e-10);
        assert!((demo.rotated.disturbance.fidelity - 0.5).abs() < 1e-12);
        assert!(demo.rotated.disturbance.min() > 0.0);
    }

    #[test]
    fn maximally_mixed_is_undisturbed() {
        let demo = mixed_state(3, 5, 1).unwrap();
        assert!(demo.max_disturbance < 1e-10);
        assert!(mixed_state(1, 1, 1).is_err());
    }
}
