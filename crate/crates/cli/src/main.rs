//! `qtradeoff`: verification suites, sweeps, demos and optimization runs.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 usage or input error.

mod optimize;

use std::fs;
use std::io::{ErrorKind, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qtradeoff::constructions::{anticommuting_set, appendix_c_default, mub_set, qubit_observable, BlochObservable};
use qtradeoff::qcore::json::MeasurementSpec;
use qtradeoff::qcore::linalg::{sigma_x, sigma_y, sigma_z};
use qtradeoff::verify::run_suite;
use qtradeoff::{demo, sweep, DistanceKind, EntropyKind, OptimizerConfig, Suite, VerifyOptions};

#[derive(Parser, Debug)]
#[command(name = "qtradeoff", version, about = "Disturbance and uncertainty tradeoffs for quantum measurements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a verification suite and print a JSON report.
    Verify(VerifyArgs),
    /// Emit a CSV sweep.
    Sweep(SweepArgs),
    /// Run a worked example and print it as JSON.
    Demo(DemoArgs),
    /// Minimize the average disturbance or entropy of measurements read from a JSON file.
    Optimize(optimize::OptimizeArgs),
    /// Emit a measurement family as JSON accepted by `optimize`.
    Gen(GenArgs),
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// pauli, mub, anticommute, qubit, povm-luders, ordering, or all
    suite: String,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 100)]
    pairs: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Tolerance for every default-tolerance record (1e-9 equalities, 1e-8 inequalities otherwise).
    #[arg(long)]
    tol: Option<f64>,
    /// Optimizer restarts per search (default 32·d).
    #[arg(long)]
    restarts: Option<usize>,
    /// Add wall-clock `runtime_ms` to each record; the report is then no longer reproducible.
    #[arg(long)]
    timings: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SweepFamily {
    QubitTheta,
}

#[derive(Args, Debug)]
struct SweepArgs {
    family: SweepFamily,
    #[arg(long, default_value_t = 181)]
    steps: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DemoName {
    AppendixC,
    GeneralInstrument,
    MixedState,
}

#[derive(Args, Debug)]
struct DemoArgs {
    name: DemoName,
    /// Dimension for mixed-state.
    #[arg(long, default_value_t = 3)]
    d: usize,
    /// Number of random observables for mixed-state.
    #[arg(long, default_value_t = 5)]
    n: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long)]
    restarts: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    Pauli,
    Mub,
    Anticommute,
    AppendixC,
    QubitPair,
}

#[derive(Args, Debug)]
struct GenArgs {
    family: Family,
    #[arg(long, default_value_t = 2)]
    d: usize,
    #[arg(long)]
    n: Option<usize>,
    /// Angle between the Bloch axes for qubit-pair, in radians.
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_2)]
    theta: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Failure that maps to exit code 2.
#[derive(Debug)]
pub(crate) enum CliError {
    Usage(String),
    Input(qtradeoff::Error),
    Io(PathBuf, std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Input(e) => write!(f, "{e}"),
            CliError::Io(path, e) => write!(f, "{}: {e}", path.display()),
        }
    }
}

impl From<qtradeoff::Error> for CliError {
    fn from(e: qtradeoff::Error) -> Self {
        CliError::Input(e)
    }
}

pub(crate) type CliResult<T> = Result<T, CliError>;

pub(crate) fn emit(text: &str, out: Option<&Path>) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Io(path.to_path_buf(), e)),
        None => match writeln!(std::io::stdout().lock(), "{text}") {
            Err(e) if e.kind() == ErrorKind::BrokenPipe => Ok(()),
            r => r.map_err(|e| CliError::Io(PathBuf::from("<stdout>"), e)),
        },
    }
}

pub(crate) fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize")
}

fn optimizer_config(seed: u64, restarts: Option<usize>) -> OptimizerConfig {
    OptimizerConfig { seed, restarts, ..OptimizerConfig::default() }
}

fn verify(args: VerifyArgs) -> CliResult<ExitCode> {
    let suites = if args.suite == "all" { Suite::ALL.to_vec() } else { vec![args.suite.parse::<Suite>()?] };
    let opts = VerifyOptions {
        d: args.d,
        n: args.n,
        samples: args.samples,
        pairs: args.pairs,
        seed: args.seed,
        tol: args.tol,
        timings: args.timings,
        optimizer: optimizer_config(args.seed, args.restarts),
    };
    let reports = suites.iter().map(|&s| run_suite(s, &opts)).collect::<Result<Vec<_>, _>>()?;
    for r in &reports {
        eprintln!("{}: {}/{} records passed", r.suite, r.records.len() - r.failures(), r.records.len());
        for f in r.records.iter().filter(|rec| !rec.passed()) {
            eprintln!("  FAIL {}: achieved {:e}, bound {:e}, tolerance {:e}", f.name, f.achieved, f.bound, f.tolerance);
        }
    }
    let text = if reports.len() == 1 { to_json(&reports[0]) } else { to_json(&reports) };
    emit(&text, args.out.as_deref())?;
    Ok(if reports.iter().all(|r| r.passed) { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn sweep_cmd(args: SweepArgs) -> CliResult<ExitCode> {
    let SweepFamily::QubitTheta = args.family;
    let rows = sweep::qubit_theta_sweep(args.steps, &optimizer_config(args.seed, None))?;
    let worst = rows.iter().map(|r| r.abs_err).fold(0.0, f64::max);
    eprintln!("qubit-theta: {} rows, max abs_err {worst:e}", rows.len());
    emit(sweep::to_csv(&rows).trim_end(), args.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn demo_cmd(args: DemoArgs) -> CliResult<ExitCode> {
    let text = match args.name {
        DemoName::AppendixC => {
            let d = demo::appendix_c(&optimizer_config(args.seed, args.restarts))?;
            eprintln!("appendix-c: {} (min average T2 {:.6})", d.conclusion, d.entropy_minimum.value);
            to_json(&d)
        }
        DemoName::GeneralInstrument => {
            let d = demo::general_instrument()?;
            let t = d.swapped.disturbance;
            eprintln!(
                "general-instrument: entropy {} with disturbances ({}, {}, {})",
                d.shannon, t.trace, t.fidelity, t.opnorm
            );
            to_json(&d)
        }
        DemoName::MixedState => {
            let d = demo::mixed_state(args.d, args.n, args.seed)?;
            eprintln!("mixed-state: max disturbance {:e} over {} observables", d.max_disturbance, d.cases.len());
            to_json(&d)
        }
    };
    emit(&text, args.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn gen(args: GenArgs) -> CliResult<ExitCode> {
    let spec = match args.family {
        Family::Pauli => MeasurementSpec::observables(&[sigma_x(), sigma_y(), sigma_z()]),
        Family::Mub => {
            let family = mub_set(args.d, args.n.unwrap_or(args.d + 1))?;
            let mats: Vec<_> = family.observables().iter().map(|o| o.matrix()).collect();
            MeasurementSpec::observables(&mats)
        }
        Family::Anticommute => MeasurementSpec::observables(anticommuting_set(args.n.unwrap_or(3))?.observables()),
        Family::AppendixC => {
            let (a, b, _) = appendix_c_default();
            MeasurementSpec::povms(&[a, b])
        }
        Family::QubitPair => {
            let a = BlochObservable::axis([0.0, 0.0, 1.0])?;
            let b = BlochObservable::axis([args.theta.sin(), 0.0, args.theta.cos()])?;
            MeasurementSpec::observables(&[qubit_observable(&a).matrix(), qubit_observable(&b).matrix()])
        }
    };
    emit(&to_json(&spec), args.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

pub(crate) fn parse_distance(s: &str) -> Result<DistanceKind, String> {
    s.parse().map_err(|e: qtradeoff::Error| e.to_string())
}

pub(crate) fn parse_entropy(s: &str) -> Result<EntropyKind, String> {
    s.parse().map_err(|e: qtradeoff::Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Verify(a) => verify(a),
        Command::Sweep(a) => sweep_cmd(a),
        Command::Demo(a) => demo_cmd(a),
        Command::Optimize(a) => optimize::run(a),
        Command::Gen(a) => gen(a),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        ExitCode::from(2)
    })
}
