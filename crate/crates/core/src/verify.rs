//! Named verification suites that check each tradeoff relation numerically.
//!
//! Every record aggregates a family of samples into its worst case, so a single
//! `achieved` value decides pass or fail against `bound` and `tolerance`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::Rng;
use serde::Serialize;

use crate::constructions::{
    anticommuting_set, appendix_c_default, is_prime, mub_set, qubit_observable, BlochObservable,
};
use crate::error::{Error, Result};
use crate::measures::{disturbance, t2_of_measurement, uncertainty, DistanceKind, EntropyKind};
use crate::optimizer::sampling::{random_bloch_observable, random_povm, random_projective_observable};
use crate::optimizer::{
    bloch_scan, minimize_average_disturbance, minimize_average_entropy, random_pure_state, stream, AverageDisturbance,
    OptimizerConfig,
};
use crate::qcore::linalg::{sigma_x, sigma_y, sigma_z};
use crate::qcore::{luders_instrument, spectral_decompose, Instrument, DEFAULT_CLUSTER_TOL};
use crate::sweep::qubit_theta_sweep;
use crate::tradeoffs::{
    anticommuting_bound, average_disturbance, metaur_sum, mub_bound, mub_probability_bound, mub_probability_sum,
    qubit_bound, qubit_objective,
};

/// Default tolerance for equality records.
pub const EQUALITY_TOL: f64 = 1e-9;
/// Default tolerance for inequality records.
pub const INEQUALITY_TOL: f64 = 1e-8;
/// Agreement required between a numerical minimum and an analytic value.
pub const OPTIMIZER_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    /// `achieved ≥ bound - tolerance`.
    Lower,
    /// `achieved ≤ bound + tolerance`.
    Upper,
    /// `|achieved - bound| ≤ tolerance`.
    Equal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationRecord {
    pub name: String,
    /// The relation being checked, in words.
    pub relation: String,
    pub check: Check,
    pub status: Status,
    pub achieved: f64,
    pub bound: f64,
    pub tolerance: f64,
    pub samples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

impl VerificationRecord {
    pub fn new(
        name: impl Into<String>,
        relation: impl Into<String>,
        check: Check,
        achieved: f64,
        bound: f64,
        tolerance: f64,
        samples: usize,
    ) -> Self {
        let ok = match check {
            Check::Lower => achieved >= bound - tolerance,
            Check::Upper => achieved <= bound + tolerance,
            Check::Equal => (achieved - bound).abs() <= tolerance,
        };
        Self {
            name: name.into(),
            relation: relation.into(),
            check,
            status: if ok { Status::Pass } else { Status::Fail },
            achieved,
            bound,
            tolerance,
            samples,
            runtime_ms: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Pauli,
    Mub,
    Anticommute,
    Qubit,
    PovmLuders,
    Ordering,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Pauli, Suite::Mub, Suite::Anticommute, Suite::Qubit, Suite::PovmLuders, Suite::Ordering];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Pauli => "pauli",
            Suite::Mub => "mub",
            Suite::Anticommute => "anticommute",
            Suite::Qubit => "qubit",
            Suite::PovmLuders => "povm-luders",
            Suite::Ordering => "ordering",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyOptions {
    pub d: Option<usize>,
    pub n: Option<usize>,
    pub samples: usize,
    pub pairs: usize,
    pub seed: u64,
    /// Overrides both default tolerances when set.
    pub tol: Option<f64>,
    pub timings: bool,
    pub optimizer: OptimizerConfig,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            d: None,
            n: None,
            samples: 1000,
            pairs: 100,
            seed: 42,
            tol: None,
            timings: false,
            optimizer: OptimizerConfig::default(),
        }
    }
}

impl VerifyOptions {
    fn eq_tol(&self) -> f64 {
        self.tol.unwrap_or(EQUALITY_TOL)
    }

    fn ineq_tol(&self) -> f64 {
        self.tol.unwrap_or(INEQUALITY_TOL)
    }

    fn optimizer(&self) -> OptimizerConfig {
        OptimizerConfig { seed: self.seed, ..self.optimizer.clone() }
    }

    fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::InvalidArgument("samples must be positive".into()));
        }
        if self.pairs == 0 {
            return Err(Error::InvalidArgument("pairs must be positive".into()));
        }
        if let Some(t) = self.tol {
            if !t.is_finite() || t <= 0.0 {
                return Err(Error::InvalidArgument(format!("tolerance must be positive, got {t}")));
            }
        }
        self.optimizer.validate()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub passed: bool,
    pub records: Vec<VerificationRecord>,
}

impl SuiteReport {
    pub fn failures(&self) -> usize {
        self.records.iter().filter(|r| !r.passed()).count()
    }
}

/// Runs one suite. Invalid options are reported as errors before any work.
pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<SuiteReport> {
    opts.validate()?;
    let mut out = Recorder { timings: opts.timings, records: Vec::new() };
    match suite {
        Suite::Pauli => pauli(opts, &mut out)?,
        Suite::Mub => mub(opts, &mut out)?,
        Suite::Anticommute => anticommute(opts, &mut out)?,
        Suite::Qubit => qubit(opts, &mut out)?,
        Suite::PovmLuders => povm_luders(opts, &mut out)?,
        Suite::Ordering => ordering(opts, &mut out)?,
    }
    let passed = out.records.iter().all(VerificationRecord::passed);
    Ok(SuiteReport { suite: suite.name().to_string(), seed: opts.seed, passed, records: out.records })
}

struct Recorder {
    timings: bool,
    records: Vec<VerificationRecord>,
}

impl Recorder {
    /// Runs `f` and stores the records it produces, stamping elapsed time on
    /// each when timings are enabled.
    fn timed(&mut self, f: impl FnOnce() -> Result<Vec<VerificationRecord>>) -> Result<()> {
        let start = Instant::now();
        let mut records = f()?;
        if self.timings {
            let ms = start.elapsed().as_millis() as u64;
            records.iter_mut().for_each(|r| r.runtime_ms = Some(ms));
        }
        self.records.extend(records);
        Ok(())
    }
}

/// The value farthest from `target`; `target` itself when there are none.
fn worst_deviation(values: impl IntoIterator<Item = f64>, target: f64) -> f64 {
    values.into_iter().fold(target, |worst, x| if (x - target).abs() > (worst - target).abs() { x } else { worst })
}

fn min_of(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(f64::INFINITY, f64::min)
}

fn max_of(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(f64::NEG_INFINITY, f64::max)
}

fn projective(h: &crate::qcore::ComplexMatrix) -> crate::qcore::ProjectiveObservable {
    spectral_decompose(h, DEFAULT_CLUSTER_TOL).expect("Hermitian input")
}

fn pauli_instruments() -> Vec<Instrument> {
    [sigma_x(), sigma_y(), sigma_z()].iter().map(|h| projective(h).instrument()).collect()
}

fn pauli(opts: &VerifyOptions, out: &mut Recorder) -> Result<()> {
    let inst = pauli_instruments();
    out.timed(|| {
        let mut rng = stream(opts.seed, 0);
        let sums: Vec<f64> = (0..opts.samples)
            .map(|_| {
                let psi = random_pure_state(&mut rng, 2);
                inst.iter().map(|i| disturbance(DistanceKind::Fidelity, i, &psi)).sum::<Result<f64>>()
            })
            .collect::<Result<_>>()?;
        Ok(vec![
            VerificationRecord::new(
                "pauli-sum",
                "sum of fidelity disturbances of sigma_X, sigma_Y, sigma_Z equals 1 on every pure qubit state",
                Check::Equal,
                worst_deviation(sums.iter().copied(), 1.0),
                1.0,
                opts.eq_tol(),
                opts.samples,
            ),
            VerificationRecord::new(
                "pauli-average",
                "average fidelity disturbance of the three Pauli observables equals the MUB bound (1-1/3)(1-1/2) = 1/3",
                Check::Equal,
                worst_deviation(sums.iter().map(|s| s / 3.0), mub_bound(3, 2)),
                mub_bound(3, 2),
                opts.eq_tol(),
                opts.samples,
            ),
        ])
    })
}

fn mub(opts: &VerifyOptions, out: &mut Recorder) -> Result<()> {
    let dims = match opts.d {
        Some(d) if !is_prime(d) => return Err(Error::NotPrime(d)),
        Some(d) => vec![d],
        None => vec![2, 3, 5],
    };
    for d in dims {
        let counts = match opts.n {
            Some(n) if n < 2 || n > d + 1 => {
                return Err(Error::InvalidArgument(format!("number of bases must be in 2..={}, got {n}", d + 1)))
            }
            Some(n) => vec![n],
            None => (2..=d + 1).collect(),
        };
        for n in counts {
            let family = mub_set(d, n)?;
            let instruments = family.instruments();
            out.timed(|| {
                let mut rng = stream(opts.seed, (d * 100 + n) as u64);
                let mut sums = Vec::with_capacity(opts.samples);
                let mut averages = Vec::with_capacity(opts.samples);
                for _ in 0..opts.samples {
                    let psi = random_pure_state(&mut rng, d);
                    sums.push(mub_probability_sum(&family, &psi)?);
                    averages.push(average_disturbance(DistanceKind::Fidelity, &instruments, &psi)?);
                }
                let (prob_bound, dist_bound) = (mub_probability_bound(n, d), mub_bound(n, d));
                let tag = format!("d={d} N={n}");
                Ok(if family.is_complete() {
                    vec![
                        VerificationRecord::new(
                            format!("mub-probability-sum {tag}"),
                            "sum of squared outcome probabilities over a complete set of MUBs equals 1 + (N-1)/d",
                            Check::Equal,
                            worst_deviation(sums, prob_bound),
                            prob_bound,
                            opts.eq_tol(),
                            opts.samples,
                        ),
                        VerificationRecord::new(
                            format!("mub-disturbance {tag}"),
                            "average fidelity disturbance over a complete set of MUBs equals (1-1/N)(1-1/d)",
                            Check::Equal,
                            worst_deviation(averages, dist_bound),
                            dist_bound,
                            opts.eq_tol(),
                            opts.samples,
                        ),
                    ]
                } else {
                    vec![
                        VerificationRecord::new(
                            format!("mub-probability-sum {tag}"),
                            "sum of squared outcome probabilities over N MUBs is at most 1 + (N-1)/d",
                            Check::Upper,
                            max_of(sums),
                            prob_bound,
                            opts.eq_tol(),
                            opts.samples,
                        ),
                        VerificationRecord::new(
                            format!("mub-disturbance {tag}"),
                            "average fidelity disturbance over N MUBs is at least (1-1/N)(1-1/d)",
                            Check::Lower,
                            min_of(averages),
                            dist_bound,
                            opts.eq_tol(),
                            opts.samples,
                        ),
                    ]
                })
            })?;
        }
    }
    Ok(())
}

fn anticommute(opts: &VerifyOptions, out: &mut Recorder) -> Result<()> {
    let counts = match opts.n {
        Some(n) => vec![n],
        None => vec![2, 3, 4, 5],
    };
    for n in counts {
        let set = anticommuting_set(n)?;
        if let Some(d) = opts.d {
            if d != set.dim() {
                return Err(Error::InvalidArgument(format!(
                    "{n} anticommuting observables live in d={}, not {d}",
                    set.dim()
                )));
            }
        }
        let instruments: Vec<Instrument> = set.projective().iter().map(|a| a.instrument()).collect();
        out.timed(|| {
            let mut rng = stream(opts.seed, n as u64);
            let mut sums = Vec::with_capacity(opts.samples);
            let mut averages = Vec::with_capacity(opts.samples);
            for _ in 0..opts.samples {
                let psi = random_pure_state(&mut rng, set.dim());
                sums.push(metaur_sum(&set, &psi)?);
                averages.push(average_disturbance(DistanceKind::Fidelity, &instruments, &psi)?);
            }
            let bound = anticommuting_bound(n);
            let tag = format!("N={n} d={}", set.dim());
            let mut records = vec![VerificationRecord::new(
                format!("anticommute-expectations {tag}"),
                "squared expectation values of pairwise anticommuting +-1 observables sum to at most 1",
                Check::Upper,
                max_of(sums),
                1.0,
                opts.eq_tol(),
                opts.samples,
            )];
            records.push(if n == 3 && set.dim() == 2 {
                VerificationRecord::new(
                    format!("anticommute-disturbance {tag}"),
                    "average fidelity disturbance of three anticommuting qubit observables equals (1/2)(1-1/3)",
                    Check::Equal,
                    worst_deviation(averages, bound),
                    bound,
                    opts.eq_tol(),
                    opts.samples,
                )
            } else {
                VerificationRecord::new(
                    format!("anticommute-disturbance {tag}"),
                    "average fidelity disturbance of N anticommuting +-1 observables is at least (1/2)(1-1/N)",
                    Check::Lower,
                    min_of(averages),
                    bound,
                    opts.eq_tol(),
                    opts.samples,
                )
            });
            Ok(records)
        })?;
    }
    Ok(())
}

fn qubit(opts: &VerifyOptions, out: &mut Recorder) -> Result<()> {
    let cfg = opts.optimizer();
    let mut rng = stream(opts.seed, 0);
    let pairs: Vec<(BlochObservable, BlochObservable)> =
        (0..opts.pairs).map(|_| (random_bloch_observable(&mut rng), random_bloch_observable(&mut rng))).collect();

    out.timed(|| {
        let mut tight = Vec::with_capacity(pairs.len());
        let mut agree = Vec::with_capacity(pairs.len());
        for (k, (a, b)) in pairs.iter().enumerate() {
            let report = qubit_bound(a, b);
            tight.push(report.gap);
            let inst = [qubit_observable(a).instrument(), qubit_observable(b).instrument()];
            let pair_cfg = OptimizerConfig { seed: opts.seed.wrapping_add(k as u64), ..cfg.clone() };
            let est = minimize_average_disturbance(DistanceKind::Fidelity, &inst, &pair_cfg)?;
            agree.push(est.value - report.bound);
        }
        Ok(vec![
            VerificationRecord::new(
                "qubit-tightness",
                "average fidelity disturbance at the bisector state r+ or r- equals (1-c^2)/2",
                Check::Equal,
                worst_deviation(tight, 0.0),
                0.0,
                opts.eq_tol(),
                pairs.len(),
            ),
            VerificationRecord::new(
                "qubit-optimizer-soundness",
                "numerical minimum of the average fidelity disturbance is at least (1-c^2)/2",
                Check::Lower,
                min_of(agree.iter().copied()),
                0.0,
                opts.ineq_tol(),
                pairs.len(),
            ),
            VerificationRecord::new(
                "qubit-optimizer-agreement",
                "numerical minimum of the average fidelity disturbance equals (1-c^2)/2",
                Check::Equal,
                worst_deviation(agree, 0.0),
                0.0,
                OPTIMIZER_TOL,
                pairs.len(),
            ),
        ])
    })?;

    out.timed(|| {
        let rows = qubit_theta_sweep(181, &cfg)?;
        let piecewise = |t: f64| {
            if t <= PI / 2.0 {
                0.5 * (1.0 - (t / 2.0).cos().powi(2))
            } else {
                0.5 * (1.0 - (t / 2.0).sin().powi(2))
            }
        };
        let curve_err = max_of(rows.iter().map(|r| (r.bound - piecewise(r.theta)).abs()));
        let grid_err = max_of(rows.iter().map(|r| r.abs_err));
        let objective_err = max_of(rows.iter().map(|r| {
            let alpha = if r.theta <= PI / 2.0 { r.theta / 2.0 } else { r.theta / 2.0 + PI / 2.0 };
            (0.5 * qubit_objective(r.theta, alpha) - r.bound).abs()
        }));
        Ok(vec![
            VerificationRecord::new(
                "qubit-theta-curve",
                "(1-c^2)/2 follows (1/2)(1-cos^2(theta/2)) for theta <= pi/2 and (1/2)(1-sin^2(theta/2)) above",
                Check::Equal,
                curve_err,
                0.0,
                opts.eq_tol(),
                rows.len(),
            ),
            VerificationRecord::new(
                "qubit-theta-objective",
                "half the single-angle objective at alpha = theta/2 + k pi/2 equals the bound",
                Check::Equal,
                objective_err,
                0.0,
                opts.eq_tol(),
                rows.len(),
            ),
            VerificationRecord::new(
                "qubit-theta-sweep",
                "Bloch-grid minimum matches (1-c^2)/2 across theta in [0, pi]",
                Check::Equal,
                grid_err,
                0.0,
                OPTIMIZER_TOL,
                rows.len(),
            ),
        ])
    })?;

    out.timed(|| {
        let xz = [projective(&sigma_x()).instrument(), projective(&sigma_z()).instrument()];
        let bound =
            qubit_bound(&BlochObservable::axis([1.0, 0.0, 0.0])?, &BlochObservable::axis([0.0, 0.0, 1.0])?).bound;
        let mut rng = stream(opts.seed, 1);
        let mut fid = Vec::with_capacity(opts.samples);
        let mut trace = Vec::with_capacity(opts.samples);
        for _ in 0..opts.samples {
            let psi = random_pure_state(&mut rng, 2);
            fid.push(average_disturbance(DistanceKind::Fidelity, &xz, &psi)?);
            trace.push(average_disturbance(DistanceKind::Trace, &xz, &psi)?);
        }
        let grid = bloch_scan(&AverageDisturbance::new(DistanceKind::Fidelity, &xz)?, cfg.bloch_grid)?;

        let axis = crate::optimizer::sampling::random_bloch_vector(&mut rng);
        let a = BlochObservable::new(axis, 0.3, 1.0)?;
        let b = BlochObservable::new(axis, -1.0, 2.5)?;
        let commuting = [qubit_observable(&a).instrument(), qubit_observable(&b).instrument()];
        let zero = minimize_average_disturbance(DistanceKind::Fidelity, &commuting, &cfg)?;
        Ok(vec![
            VerificationRecord::new(
                "qubit-positivity-F",
                "average fidelity disturbance of sigma_X and sigma_Z is at least 1/4 on random states",
                Check::Lower,
                min_of(fid),
                bound,
                opts.ineq_tol(),
                opts.samples,
            ),
            VerificationRecord::new(
                "qubit-positivity-1",
                "average trace-distance disturbance of sigma_X and sigma_Z is at least 1/4 (bound inherited from F)",
                Check::Lower,
                min_of(trace),
                bound,
                opts.ineq_tol(),
                opts.samples,
            ),
            VerificationRecord::new(
                "qubit-no-common-eigenvector",
                "without a common eigenvector the grid minimum of the average disturbance stays above 0.24",
                Check::Lower,
                grid.value,
                0.24,
                0.0,
                grid.probes as usize,
            ),
            VerificationRecord::new(
                "qubit-common-eigenvector",
                "observables sharing an eigenbasis have zero minimal average disturbance",
                Check::Equal,
                zero.value,
                0.0,
                opts.eq_tol(),
                1,
            ),
        ])
    })
}

fn povm_luders(opts: &VerifyOptions, out: &mut Recorder) -> Result<()> {
    let dims = match opts.d {
        Some(d) => {
            crate::optimizer::sampling::check_sampling_dim(d)?;
            vec![d]
        }
        None => vec![2, 3],
    };
    let t2 = EntropyKind::Tsallis(2.0);
    for d in dims {
        out.timed(|| {
            let mut rng = stream(opts.seed, d as u64);
            let mut excess = Vec::with_capacity(opts.samples);
            for s in 0..opts.samples {
                let n = opts.n.unwrap_or(2 + s % 3);
                let povm = random_povm(&mut rng, d, n);
                let psi = random_pure_state(&mut rng, d);
                let df = disturbance(DistanceKind::Fidelity, &luders_instrument(&povm)?, &psi)?;
                excess.push(df - uncertainty(t2, &povm, &psi)?);
            }
            Ok(vec![VerificationRecord::new(
                format!("luders-fidelity-below-t2 d={d}"),
                "fidelity disturbance of a Lueders instrument is at most the T2 entropy of its outcomes",
                Check::Upper,
                max_of(excess),
                0.0,
                opts.ineq_tol(),
                opts.samples,
            )])
        })?;
    }

    let (a, b, phi1) = appendix_c_default();
    out.timed(|| {
        let instruments = [luders_instrument(&a)?, luders_instrument(&b)?];
        let worst = max_of(
            instruments
                .iter()
                .flat_map(|i| DistanceKind::ALL.map(|k| disturbance(k, i, &phi1)))
                .collect::<Result<Vec<f64>>>()?,
        );
        let povms = [a.clone(), b.clone()];
        let est = minimize_average_entropy(t2, &povms, &opts.optimizer())?;
        Ok(vec![
            VerificationRecord::new(
                "appendix-c-zero-disturbance",
                "Lueders instruments of both qutrit POVMs leave the common eigenvector undisturbed in all three distances",
                Check::Equal,
                worst,
                0.0,
                1e-12,
                6,
            ),
            VerificationRecord::new(
                "appendix-c-positive-uncertainty",
                "minimal average T2 entropy of the qutrit POVM pair stays above 0.1",
                Check::Lower,
                est.value,
                0.1,
                0.0,
                est.probes as usize,
            ),
        ])
    })
}

fn ordering(opts: &VerifyOptions, out: &mut Recorder) -> Result<()> {
    let dims = match opts.d {
        Some(d) => {
            crate::optimizer::sampling::check_sampling_dim(d)?;
            vec![d]
        }
        None => vec![2, 3, 4],
    };
    out.timed(|| {
        let mut rng = stream(opts.seed, 0);
        let mut t2_dev = Vec::new();
        let mut order = Vec::new();
        for s in 0..opts.samples {
            let d = dims[s % dims.len()];
            let a = random_projective_observable(&mut rng, d);
            let psi = random_pure_state(&mut rng, d);
            let inst = a.instrument();
            let df = disturbance(DistanceKind::Fidelity, &inst, &psi)?;
            t2_dev.push(df - t2_of_measurement(&a, &psi)?);
            order.push(disturbance(DistanceKind::Trace, &inst, &psi)? - df);

            let effects = rng.random_range(2..=4);
            let povm = random_povm(&mut rng, d, effects);
            let luders = luders_instrument(&povm)?;
            order.push(
                disturbance(DistanceKind::Trace, &luders, &psi)? - disturbance(DistanceKind::Fidelity, &luders, &psi)?,
            );
        }
        Ok(vec![
            VerificationRecord::new(
                "fidelity-equals-t2",
                "fidelity disturbance of a projective measurement equals the T2 entropy of its outcomes",
                Check::Equal,
                worst_deviation(t2_dev, 0.0),
                0.0,
                opts.eq_tol(),
                opts.samples,
            ),
            VerificationRecord::new(
                "trace-above-fidelity",
                "trace-distance disturbance is at least the fidelity disturbance on pure states",
                Check::Lower,
                min_of(order),
                0.0,
                opts.ineq_tol(),
                2 * opts.samples,
            ),
        ])
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_status_rules() {
        assert!(VerificationRecord::new("a", "", Check::Lower, 0.5, 0.5 + 1e-9, 1e-8, 1).passed());
        assert!(!VerificationRecord::new("a", "", Check::Lower, 0.4, 0.5, 1e-8, 1).passed());
        assert!(VerificationRecord::new("a", "", Check::Upper, 1.0 + 1e-10, 1.0, 1e-9, 1).passed());
        assert!(!VerificationRecord::new("a", "", Check::Equal, 1.0 + 1e-8, 1.0, 1e-9, 1).passed());
        let json = serde_json::to_string(&VerificationRecord::new("a", "r", Check::Equal, 1.0, 1.0, 1e-9, 3)).unwrap();
        assert!(!json.contains("runtime_ms"));
        assert!(json.contains("\"status\":\"pass\""));
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn worst_deviation_keeps_sign() {
        assert_eq!(worst_deviation([1.0, 0.5, 1.2], 1.0), 0.5);
        assert_eq!(worst_deviation(Vec::<f64>::new(), 2.0), 2.0);
    }

    #[test]
    fn small_suites_pass() {
        let opts = VerifyOptions { samples: 50, ..VerifyOptions::default() };
        for suite in [Suite::Pauli, Suite::Mub, Suite::Anticommute, Suite::Ordering] {
            let report = run_suite(suite, &opts).unwrap();
            assert!(report.passed, "{report:#?}");
        }
    }

    #[test]
    fn rejects_bad_options() {
        let bad = VerifyOptions { d: Some(4), ..VerifyOptions::default() };
        assert!(matches!(run_suite(Suite::Mub, &bad), Err(Error::NotPrime(4))));
        let bad = VerifyOptions { samples: 0, ..VerifyOptions::default() };
        assert!(run_suite(Suite::Pauli, &bad).is_err());
        let bad = VerifyOptions { n: Some(3), d: Some(4), ..VerifyOptions::default() };
        assert!(run_suite(Suite::Anticommute, &bad).is_err());
    }
}
