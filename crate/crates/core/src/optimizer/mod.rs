//! Numerical infimum of average disturbance and average entropy over pure states.
//!
//! States are searched as `2d` real coordinates, normalized before every
//! evaluation; the objectives are phase invariant so the global phase is left
//! free. Each search combines
//!
//! * for `d = 2`, an exhaustive `(θ, φ)` grid over the Bloch sphere whose best
//!   point is then polished by simplex descent, and
//! * `restarts` simplex descents from Haar-random starting states, each with its
//!   own RNG stream derived from `(seed, restart index)`.
//!
//! The objective is continuous on the compact set of pure states, so the
//! infimum is attained and reported as a minimum. Restarts run in parallel;
//! ties are broken by the lowest task index, so results do not depend on
//! scheduling.

pub mod sampling;
pub mod simplex;

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::measures::{disturbance_of_amplitudes, uncertainty_of_amplitudes, DistanceKind, EntropyKind};
use crate::qcore::linalg::c64;
use crate::qcore::{check_dim, Instrument, Povm, PureState};

pub use sampling::{random_pure_state, stream};
pub use simplex::{nelder_mead, SimplexResult};

/// Search settings.
#[derive(Clone, Debug, PartialEq)]
pub struct OptimizerConfig {
    /// Number of random-start local searches; `None` uses `32·d`.
    pub restarts: Option<usize>,
    pub max_iters: usize,
    /// Stall tolerance on the spread of simplex values.
    pub tol: f64,
    pub seed: u64,
    /// `(θ, φ)` resolution of the qubit grid.
    pub bloch_grid: (usize, usize),
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self { restarts: None, max_iters: 2000, tol: 1e-9, seed: 42, bloch_grid: (721, 1441) }
    }
}

impl OptimizerConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self { seed, ..Self::default() }
    }

    pub fn restarts_for(&self, d: usize) -> usize {
        self.restarts.unwrap_or(32 * d)
    }

    pub fn validate(&self) -> Result<()> {
        if self.restarts == Some(0) {
            return Err(Error::InvalidArgument("restarts must be at least 1".into()));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::InvalidArgument(format!("tolerance must be positive, got {}", self.tol)));
        }
        if self.bloch_grid.0 < 2 || self.bloch_grid.1 < 2 {
            return Err(Error::InvalidArgument("Bloch grid needs at least 2 points per angle".into()));
        }
        Ok(())
    }
}

/// Best value found, the state attaining it, and bookkeeping.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub state: PureState,
    /// `value - bound` when an analytic bound is known.
    pub certified_gap: Option<f64>,
    /// Number of objective evaluations.
    pub probes: u64,
    pub seed: u64,
}

impl Estimate {
    pub fn certify(mut self, bound: f64) -> Self {
        self.certified_gap = Some(self.value - bound);
        self
    }
}

/// A real function of unit-norm amplitudes in a fixed dimension.
pub trait Objective: Sync {
    fn dim(&self) -> usize;
    fn eval(&self, psi: &[c64]) -> f64;
}

/// `(1/N) Σ D_kind(I_i; ψ)`.
pub struct AverageDisturbance<'a> {
    kind: DistanceKind,
    instruments: &'a [Instrument],
}

impl<'a> AverageDisturbance<'a> {
    pub fn new(kind: DistanceKind, instruments: &'a [Instrument]) -> Result<Self> {
        let first = instruments.first().ok_or(Error::Empty("instrument list"))?;
        for i in instruments {
            check_dim(first.dim(), i.dim())?;
        }
        Ok(Self { kind, instruments })
    }
}

impl Objective for AverageDisturbance<'_> {
    fn dim(&self) -> usize {
        self.instruments[0].dim()
    }

    fn eval(&self, psi: &[c64]) -> f64 {
        let total: f64 = self.instruments.iter().map(|i| disturbance_of_amplitudes(self.kind, i, psi)).sum();
        total / self.instruments.len() as f64
    }
}

/// `(1/N) Σ S(A_i; ψ)`.
pub struct AverageEntropy<'a> {
    kind: EntropyKind,
    povms: &'a [Povm],
}

impl<'a> AverageEntropy<'a> {
    pub fn new(kind: EntropyKind, povms: &'a [Povm]) -> Result<Self> {
        let first = povms.first().ok_or(Error::Empty("POVM list"))?;
        for p in povms {
            check_dim(first.dim(), p.dim())?;
        }
        Ok(Self { kind, povms })
    }
}

impl Objective for AverageEntropy<'_> {
    fn dim(&self) -> usize {
        self.povms[0].dim()
    }

    fn eval(&self, psi: &[c64]) -> f64 {
        let total: f64 = self.povms.iter().map(|p| uncertainty_of_amplitudes(self.kind, p, psi)).sum();
        total / self.povms.len() as f64
    }
}

/// Wraps a closure as an [`Objective`].
pub struct FnObjective<F> {
    d: usize,
    f: F,
}

impl<F: Fn(&[c64]) -> f64 + Sync> FnObjective<F> {
    pub fn new(d: usize, f: F) -> Self {
        Self { d, f }
    }
}

impl<F: Fn(&[c64]) -> f64 + Sync> Objective for FnObjective<F> {
    fn dim(&self) -> usize {
        self.d
    }

    fn eval(&self, psi: &[c64]) -> f64 {
        (self.f)(psi)
    }
}

/// Best point of an exhaustive qubit grid.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GridResult {
    pub value: f64,
    pub theta: f64,
    pub phi: f64,
    pub state: PureState,
    pub probes: u64,
    /// Largest angular step; the distance from any state to the grid is at
    /// most this, so the grid minimum exceeds the true one by at most the
    /// objective's Lipschitz constant times `spacing`.
    pub spacing: f64,
}

/// Evaluates a qubit objective on the grid `θ_i = π i/(n_θ-1)`,
/// `φ_j = 2π j/(n_φ-1)` with states `cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩`.
pub fn bloch_scan(objective: &dyn Objective, resolution: (usize, usize)) -> Result<GridResult> {
    check_dim(2, objective.dim())?;
    let (nt, np) = resolution;
    if nt < 2 || np < 2 {
        return Err(Error::InvalidArgument("Bloch grid needs at least 2 points per angle".into()));
    }
    let dt = PI / (nt - 1) as f64;
    let dp = 2.0 * PI / (np - 1) as f64;
    let phases: Vec<c64> = (0..np).map(|j| c64::from_polar(1.0, dp * j as f64)).collect();
    let rows: Vec<(f64, usize)> = (0..nt)
        .into_par_iter()
        .map(|i| {
            let half = 0.5 * dt * i as f64;
            let (s, c) = half.sin_cos();
            let mut best = (f64::INFINITY, 0);
            for (j, e) in phases.iter().enumerate() {
                let v = objective.eval(&[c64::from(c), e * s]);
                if v < best.0 {
                    best = (v, j);
                }
            }
            best
        })
        .collect();
    let (mut value, mut bi, mut bj) = (f64::INFINITY, 0, 0);
    for (i, &(v, j)) in rows.iter().enumerate() {
        if v < value {
            (value, bi, bj) = (v, i, j);
        }
    }
    let (theta, phi) = (dt * bi as f64, dp * bj as f64);
    let state = PureState::from_angles(theta, phi);
    Ok(GridResult { value, theta, phi, state, probes: (nt * np) as u64, spacing: dt.max(dp) })
}

fn amps_from_coords(x: &[f64]) -> Option<Vec<c64>> {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    (norm > 1e-150 && norm.is_finite()).then(|| x.chunks(2).map(|p| c64::new(p[0] / norm, p[1] / norm)).collect())
}

fn coords_from_amps(a: &[c64]) -> Vec<f64> {
    a.iter().flat_map(|z| [z.re, z.im]).collect()
}

struct Candidate {
    value: f64,
    state: PureState,
    probes: u64,
}

fn local_search(objective: &dyn Objective, start: &[c64], cfg: &OptimizerConfig) -> Candidate {
    let f = |x: &[f64]| amps_from_coords(x).map_or(f64::INFINITY, |a| objective.eval(&a));
    let r = nelder_mead(f, &coords_from_amps(start), 0.25, cfg.max_iters, cfg.tol);
    let state = PureState::normalized(amps_from_coords(&r.x).expect("finite simplex vertex")).expect("nonzero");
    Candidate { value: objective.eval(state.amplitudes()), state, probes: r.evals + 1 }
}

fn grid_candidate(objective: &dyn Objective, cfg: &OptimizerConfig) -> Result<Candidate> {
    let grid = bloch_scan(objective, cfg.bloch_grid)?;
    let polished = local_search(objective, grid.state.amplitudes(), cfg);
    let grid_value = objective.eval(grid.state.amplitudes());
    let probes = grid.probes + polished.probes + 1;
    Ok(if polished.value < grid_value {
        Candidate { probes, ..polished }
    } else {
        Candidate { value: grid_value, state: grid.state, probes }
    })
}

/// Qubit grid scan followed by one simplex descent from the best grid point,
/// without random restarts.
pub fn polished_bloch_scan(objective: &dyn Objective, cfg: &OptimizerConfig) -> Result<Estimate> {
    cfg.validate()?;
    let c = grid_candidate(objective, cfg)?;
    Ok(Estimate { value: c.value, state: c.state, certified_gap: None, probes: c.probes, seed: cfg.seed })
}

/// Minimizes `objective` over pure states; see the module docs for the search.
pub fn minimize(objective: &dyn Objective, cfg: &OptimizerConfig) -> Result<Estimate> {
    cfg.validate()?;
    let d = objective.dim();
    if d < 2 {
        return Err(Error::InvalidArgument(format!("dimension must be at least 2, got {d}")));
    }
    let mut candidates = Vec::new();
    if d == 2 {
        candidates.push(grid_candidate(objective, cfg)?);
    }
    let restarts = cfg.restarts_for(d);
    let local: Vec<Candidate> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let start = random_pure_state(&mut stream(cfg.seed, r as u64), d);
            local_search(objective, start.amplitudes(), cfg)
        })
        .collect();
    candidates.extend(local);

    let probes = candidates.iter().map(|c| c.probes).sum();
    let best = candidates
        .into_iter()
        .reduce(|best, c| if c.value < best.value { c } else { best })
        .expect("at least one restart");
    Ok(Estimate { value: best.value, state: best.state, certified_gap: None, probes, seed: cfg.seed })
}

/// `min_ψ (1/N) Σ D_kind(I_i; ψ)`.
pub fn minimize_average_disturbance(
    kind: DistanceKind,
    instruments: &[Instrument],
    cfg: &OptimizerConfig,
) -> Result<Estimate> {
    minimize(&AverageDisturbance::new(kind, instruments)?, cfg)
}

/// `min_ψ (1/N) Σ S(A_i; ψ)`.
pub fn minimize_average_entropy(kind: EntropyKind, povms: &[Povm], cfg: &OptimizerConfig) -> Result<Estimate> {
    minimize(&AverageEntropy::new(kind, povms)?, cfg)
}
