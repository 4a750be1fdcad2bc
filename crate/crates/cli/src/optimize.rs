use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, ValueEnum};

use qtradeoff::constructions::BlochObservable;
use qtradeoff::optimizer::{minimize_average_disturbance, minimize_average_entropy};
use qtradeoff::qcore::json::{MeasurementSpec, Measurements};
use qtradeoff::qcore::linalg::{sigma_x, sigma_y, sigma_z, trace};
use qtradeoff::qcore::{luders_instrument, spectral_decompose, DEFAULT_CLUSTER_TOL};
use qtradeoff::tradeoffs::qubit_geometry;
use qtradeoff::{ComplexMatrix, DistanceKind, EntropyKind, Estimate, Instrument, OptimizerConfig, Povm};

use crate::{emit, parse_distance, parse_entropy, to_json, CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InstrumentMode {
    /// Square-root Kraus operators of each POVM; projectors for observables.
    Luders,
    /// Spectral projectors of Hermitian observables.
    Projective,
    /// Kraus operators given in the file.
    File,
}

#[derive(Args, Debug)]
pub struct OptimizeArgs {
    /// JSON file with exactly one of `observables`, `povms`, `instruments`.
    spec: PathBuf,
    /// Disturbance distance: 1, F or inf (default F).
    #[arg(long, value_parser = parse_distance, conflicts_with = "entropy")]
    measure: Option<DistanceKind>,
    /// Minimize average outcome entropy instead: shannon or tsallis:<beta>.
    #[arg(long, value_parser = parse_entropy)]
    entropy: Option<EntropyKind>,
    /// How measurements are implemented (default: file for instrument specs, luders otherwise).
    #[arg(long, value_enum)]
    instrument: Option<InstrumentMode>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long)]
    restarts: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn observables_to_instruments(mats: &[ComplexMatrix]) -> CliResult<Vec<Instrument>> {
    mats.iter().map(|m| Ok(spectral_decompose(m, DEFAULT_CLUSTER_TOL)?.instrument())).collect()
}

fn instruments(measurements: &Measurements, mode: InstrumentMode) -> CliResult<Vec<Instrument>> {
    match (measurements, mode) {
        (Measurements::Observables(m), InstrumentMode::Luders | InstrumentMode::Projective) => {
            observables_to_instruments(m)
        }
        (Measurements::Povms(p), InstrumentMode::Luders) => p.iter().map(|p| Ok(luders_instrument(p)?)).collect(),
        (Measurements::Instruments(i), InstrumentMode::File) => Ok(i.clone()),
        (Measurements::Povms(_), InstrumentMode::Projective) => {
            Err(CliError::Usage("--instrument projective needs `observables` in the spec file".into()))
        }
        (Measurements::Instruments(_), _) => {
            Err(CliError::Usage("spec file gives `instruments`; use --instrument file".into()))
        }
        (_, InstrumentMode::File) => {
            Err(CliError::Usage("--instrument file needs `instruments` in the spec file".into()))
        }
    }
}

fn povms(measurements: &Measurements) -> CliResult<Vec<Povm>> {
    Ok(match measurements {
        Measurements::Observables(m) => {
            m.iter().map(|m| Ok(spectral_decompose(m, DEFAULT_CLUSTER_TOL)?.povm())).collect::<CliResult<_>>()?
        }
        Measurements::Povms(p) => p.clone(),
        Measurements::Instruments(i) => i.iter().map(Instrument::povm).collect(),
    })
}

/// `α₁𝕀 + α₂ a·σ` from a 2x2 Hermitian matrix, `None` for multiples of the identity.
fn bloch_form(m: &ComplexMatrix) -> Option<BlochObservable> {
    let comp = |p: ComplexMatrix| 0.5 * trace(&(m * p)).re;
    let v = [comp(sigma_x()), comp(sigma_y()), comp(sigma_z())];
    let len = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    BlochObservable::new(v, 0.5 * trace(m).re, len).ok()
}

/// Analytic minimum for one or two qubit observables measured projectively,
/// where it is known: `(1 - c²)/2` for fidelity and `T₂`, inherited for trace distance.
fn known_bound(measurements: &Measurements, objective: Objective) -> Option<f64> {
    let Measurements::Observables(mats) = measurements else { return None };
    let applies = matches!(
        objective,
        Objective::Disturbance(DistanceKind::Fidelity | DistanceKind::Trace)
            | Objective::Entropy(EntropyKind::Tsallis(2.0))
    );
    if !applies || mats.iter().any(|m| m.nrows() != 2) {
        return None;
    }
    match mats.as_slice() {
        [_] => Some(0.0),
        [a, b] => Some(qubit_geometry(&bloch_form(a)?, &bloch_form(b)?).bound()),
        _ => None,
    }
}

#[derive(Clone, Copy, Debug)]
enum Objective {
    Disturbance(DistanceKind),
    Entropy(EntropyKind),
}

pub fn run(args: OptimizeArgs) -> CliResult<ExitCode> {
    let text = fs::read_to_string(&args.spec).map_err(|e| CliError::Io(args.spec.clone(), e))?;
    let measurements = MeasurementSpec::parse(&text)?;
    let cfg = OptimizerConfig { seed: args.seed, restarts: args.restarts, ..OptimizerConfig::default() };
    let objective = match args.entropy {
        Some(e) => Objective::Entropy(e),
        None => Objective::Disturbance(args.measure.unwrap_or(DistanceKind::Fidelity)),
    };
    let estimate: Estimate = match objective {
        Objective::Entropy(kind) => {
            if args.instrument.is_some() {
                return Err(CliError::Usage("--instrument has no effect with --entropy".into()));
            }
            minimize_average_entropy(kind, &povms(&measurements)?, &cfg)?
        }
        Objective::Disturbance(kind) => {
            let mode = args.instrument.unwrap_or(match measurements {
                Measurements::Instruments(_) => InstrumentMode::File,
                _ => InstrumentMode::Luders,
            });
            minimize_average_disturbance(kind, &instruments(&measurements, mode)?, &cfg)?
        }
    };
    let estimate = match known_bound(&measurements, objective) {
        Some(bound) => estimate.certify(bound),
        None => estimate,
    };
    match estimate.certified_gap {
        Some(gap) => eprintln!("minimum {:.12} (gap to analytic bound {gap:e})", estimate.value),
        None => eprintln!("minimum {:.12} (no analytic bound)", estimate.value),
    }
    emit(&to_json(&estimate), args.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}
