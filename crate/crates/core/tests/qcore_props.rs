mod common;

use common::{close, random_density};
use proptest::prelude::*;
use qtradeoff::optimizer::sampling::{random_hermitian, random_povm, random_projective_observable, random_pure_state};
use qtradeoff::optimizer::stream;
use qtradeoff::qcore::linalg::{hermitian_deviation, identity, trace};
use qtradeoff::qcore::{
    apply_channel, luders_instrument, outcome_distribution, spectral_decompose, DEFAULT_CLUSTER_TOL,
};
use qtradeoff::{c64, ComplexMatrix, Instrument, Povm, PureState};

fn completeness(inst: &Instrument) -> f64 {
    let d = inst.dim();
    let sum: ComplexMatrix = inst.kraus_ops().map(|k| k.adjoint() * k).sum();
    qtradeoff::qcore::linalg::max_abs_diff(&sum, &identity(d))
}

proptest! {
    #[test]
    fn luders_instrument_is_complete_and_round_trips(seed in any::<u64>(), d in 2usize..=5, n in 2usize..=5) {
        let mut rng = stream(seed, 0);
        let povm = random_povm(&mut rng, d, n);
        let inst = luders_instrument(&povm).unwrap();
        prop_assert!(completeness(&inst) < 1e-10);
        for (got, want) in inst.induced_effects().iter().zip(povm.effects()) {
            prop_assert!(close(got, want, 1e-10));
        }
    }

    #[test]
    fn channel_preserves_trace_and_hermiticity(seed in any::<u64>(), d in 2usize..=5, n in 2usize..=4, k in 1usize..=4) {
        let mut rng = stream(seed, 1);
        let inst = luders_instrument(&random_povm(&mut rng, d, n)).unwrap();
        let rho = random_density(&mut rng, d, k);
        let out = apply_channel(&inst, &rho).unwrap();
        prop_assert!((trace(out.matrix()).re - 1.0).abs() < 1e-12);
        prop_assert!(trace(out.matrix()).im.abs() < 1e-12);
        prop_assert!(hermitian_deviation(out.matrix()) < 1e-12);
    }

    #[test]
    fn spectral_decomposition_reconstructs(seed in any::<u64>(), d in 2usize..=6) {
        let mut rng = stream(seed, 2);
        let h = random_hermitian(&mut rng, d);
        let obs = spectral_decompose(&h, DEFAULT_CLUSTER_TOL).unwrap();
        let ps = obs.projectors();
        let sum: ComplexMatrix = ps.iter().sum();
        prop_assert!(close(&sum, &identity(d), 1e-10));
        for (i, p) in ps.iter().enumerate() {
            for (j, q) in ps.iter().enumerate() {
                let want = if i == j { p.clone() } else { ComplexMatrix::zeros(d, d) };
                prop_assert!(close(&(p * q), &want, 1e-10));
            }
        }
        prop_assert!(close(&obs.matrix(), &h, 1e-10));
    }

    #[test]
    fn spectral_decomposition_merges_degenerate_eigenvalues(seed in any::<u64>(), d in 2usize..=6) {
        let mut rng = stream(seed, 3);
        let obs = random_projective_observable(&mut rng, d);
        let again = spectral_decompose(&obs.matrix(), DEFAULT_CLUSTER_TOL).unwrap();
        prop_assert_eq!(again.eigenvalues().len(), obs.eigenvalues().len());
        for (a, b) in again.eigenvalues().iter().zip(obs.eigenvalues()) {
            prop_assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn outcome_distribution_is_a_distribution(seed in any::<u64>(), d in 2usize..=5, n in 1usize..=6) {
        let mut rng = stream(seed, 4);
        let povm = random_povm(&mut rng, d, n);
        let rho = random_density(&mut rng, d, 2);
        let p = outcome_distribution(&povm, &rho).unwrap();
        prop_assert_eq!(p.len(), n);
        prop_assert!(p.probs().iter().all(|&x| (-1e-12..=1.0 + 1e-12).contains(&x)));
        prop_assert!((p.probs().iter().sum::<f64>() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn states_are_phase_canonical(seed in any::<u64>(), d in 2usize..=5, phase in 0.0..std::f64::consts::TAU) {
        let mut rng = stream(seed, 5);
        let psi = random_pure_state(&mut rng, d);
        let shifted: Vec<c64> = psi.amplitudes().iter().map(|z| z * c64::from_polar(1.0, phase)).collect();
        let again = PureState::new(shifted).unwrap();
        for (a, b) in again.amplitudes().iter().zip(psi.amplitudes()) {
            prop_assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn json_round_trip(seed in any::<u64>(), d in 2usize..=4, n in 1usize..=4) {
        let mut rng = stream(seed, 6);
        let psi = random_pure_state(&mut rng, d);
        let back: PureState = serde_json::from_str(&serde_json::to_string(&psi).unwrap()).unwrap();
        for (a, b) in back.amplitudes().iter().zip(psi.amplitudes()) {
            prop_assert!((a - b).norm() < 1e-15);
        }
        let povm = random_povm(&mut rng, d, n);
        let back: Povm = serde_json::from_str(&serde_json::to_string(&povm).unwrap()).unwrap();
        for (a, b) in back.effects().iter().zip(povm.effects()) {
            prop_assert!(close(a, b, 1e-15));
        }
        let inst = luders_instrument(&povm).unwrap();
        let back: Instrument = serde_json::from_str(&serde_json::to_string(&inst).unwrap()).unwrap();
        for (a, b) in back.kraus_ops().zip(inst.kraus_ops()) {
            prop_assert!(close(a, b, 1e-15));
        }
    }
}

#[test]
fn incomplete_povm_is_rejected() {
    let half = identity(2) * c64::from(0.4);
    assert!(Povm::new(vec![half.clone(), half]).is_err());
}

#[test]
fn non_normalized_state_is_rejected() {
    assert!(PureState::new(vec![c64::from(1.0), c64::from(1.0)]).is_err());
    assert!(PureState::normalized(vec![c64::from(1.0), c64::from(1.0)]).is_ok());
}
