//! Analytic tradeoff bounds, their equality cases, and zero-tradeoff detection.
//!
//! Lower bounds on the average fidelity disturbance `(1/N) Σ D_F(A_i; ψ)`:
//!
//! | family                          | bound                     |
//! |---------------------------------|---------------------------|
//! | `N` MUBs in dimension `d`       | `(1 - 1/N)(1 - 1/d)`      |
//! | `N` anticommuting `±1` operators| `(1 - 1/N)/2`             |
//! | two qubit observables           | `(1 - c²)/2`, tight       |
//!
//! where `c` is the largest overlap between eigenvectors of the two qubit
//! observables. Since `D_1 ≥ D_F` on pure states, each bound also holds for
//! the trace-distance disturbance.

use std::f64::consts::FRAC_PI_2;

use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::constructions::{qubit_observable, AnticommutingSet, BlochObservable, MubFamily};
use crate::error::{Error, Result};
use crate::measures::{disturbance, DistanceKind, EntropyKind};
use crate::qcore::linalg::{self, c64, ComplexMatrix};
use crate::qcore::{check_dim, Instrument, Povm, PureState};

/// Default tolerance for [`common_eigenvector`] and [`uncertainty_zero_state`].
pub const DEFAULT_EIGEN_TOL: f64 = 1e-8;

/// Which functional a [`TradeoffReport`] describes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ReportKind {
    Distance(DistanceKind),
    /// Trace-distance disturbance checked against a fidelity bound, which
    /// carries over because `D_1 ≥ D_F` on pure states.
    InheritedTrace,
    Entropy(EntropyKind),
}

impl ReportKind {
    pub fn label(&self) -> String {
        match self {
            ReportKind::Distance(k) => format!("disturbance:{k}"),
            ReportKind::InheritedTrace => "disturbance:1 (bound inherited from F)".to_string(),
            ReportKind::Entropy(e) => format!("entropy:{e}"),
        }
    }
}

/// Achieved value of a tradeoff functional next to its analytic bound.
#[derive(Clone, Debug, PartialEq)]
pub struct TradeoffReport {
    pub kind: ReportKind,
    pub achieved: f64,
    pub bound: f64,
    pub argmin: Option<PureState>,
    /// `achieved - bound`; nonnegative up to rounding for proven lower bounds.
    pub gap: f64,
}

impl TradeoffReport {
    pub fn new(kind: ReportKind, achieved: f64, bound: f64, argmin: Option<PureState>) -> Self {
        Self { kind, achieved, bound, argmin, gap: achieved - bound }
    }
}

impl Serialize for TradeoffReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("TradeoffReport", 5)?;
        st.serialize_field("kind", &self.kind.label())?;
        st.serialize_field("achieved", &self.achieved)?;
        st.serialize_field("bound", &self.bound)?;
        st.serialize_field("gap", &self.gap)?;
        st.serialize_field("argmin", &self.argmin)?;
        st.end()
    }
}

fn check_same_dims(instruments: &[Instrument], d: usize) -> Result<()> {
    instruments.iter().try_for_each(|i| check_dim(d, i.dim()))
}

/// `(1/N) Σ_i D_kind(I_i; ψ)`.
pub fn average_disturbance(kind: DistanceKind, instruments: &[Instrument], psi: &PureState) -> Result<f64> {
    if instruments.is_empty() {
        return Err(Error::Empty("instrument list"));
    }
    check_same_dims(instruments, psi.dim())?;
    let total = instruments.iter().map(|i| disturbance(kind, i, psi)).sum::<Result<f64>>()?;
    Ok(total / instruments.len() as f64)
}

/// `Σ_m Σ_i |⟨i_m|ψ⟩|⁴`, bounded above by [`mub_probability_bound`].
pub fn mub_probability_sum(family: &MubFamily, psi: &PureState) -> Result<f64> {
    check_dim(family.dim(), psi.dim())?;
    Ok(family.bases().iter().flatten().map(|v| v.inner(psi).norm_sqr().powi(2)).sum())
}

/// `1 + (N - 1)/d`; attained for every state when `N = d + 1`.
pub fn mub_probability_bound(n: usize, d: usize) -> f64 {
    1.0 + (n as f64 - 1.0) / d as f64
}

/// `(1 - 1/N)(1 - 1/d)`.
pub fn mub_bound(n: usize, d: usize) -> f64 {
    (1.0 - 1.0 / n as f64) * (1.0 - 1.0 / d as f64)
}

/// `Σ_i ⟨ψ|A_i|ψ⟩²`, at most 1 for anticommuting `±1` observables.
pub fn metaur_sum(set: &AnticommutingSet, psi: &PureState) -> Result<f64> {
    check_dim(set.dim(), psi.dim())?;
    Ok(set.observables().iter().map(|a| linalg::expectation(a, psi.amplitudes()).re.powi(2)).sum())
}

/// `(1 - 1/N)/2`.
///
/// With `p(±) = (1 ± ⟨A_i⟩)/2` each term is `D_F(A_i) = (1 - ⟨A_i⟩²)/2`, and
/// the expectation values satisfy `Σ ⟨A_i⟩² ≤ 1`.
pub fn anticommuting_bound(n: usize) -> f64 {
    0.5 * (1.0 - 1.0 / n as f64)
}

/// Relative geometry of two qubit observables.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QubitPairGeometry {
    /// Angle between the Bloch axes, in `[0, π]`.
    pub theta: f64,
    /// Largest eigenvector overlap `max |⟨a_i|b_j⟩|`.
    pub c: f64,
    /// Interior bisector of the axes.
    pub r_plus: [f64; 3],
    /// Exterior bisector, perpendicular to `r_plus`.
    pub r_minus: [f64; 3],
}

impl QubitPairGeometry {
    /// Bloch vector of a minimizing state: `r_plus` for `θ ≤ π/2`, else `r_minus`.
    ///
    /// At `θ = π/2` every eigenstate of either observable is optimal; `r_plus`
    /// is returned.
    pub fn minimizer(&self) -> [f64; 3] {
        if self.theta <= FRAC_PI_2 {
            self.r_plus
        } else {
            self.r_minus
        }
    }

    /// `(1 - c²)/2`.
    pub fn bound(&self) -> f64 {
        0.5 * (1.0 - self.c * self.c)
    }
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn unit(v: [f64; 3]) -> Option<[f64; 3]> {
    let n = dot(v, v).sqrt();
    (n > 1e-12).then(|| v.map(|x| x / n))
}

/// Some unit vector orthogonal to `a`.
fn orthogonal_to(a: [f64; 3]) -> [f64; 3] {
    let axis = if a[0].abs() <= a[1].abs() && a[0].abs() <= a[2].abs() {
        [1.0, 0.0, 0.0]
    } else if a[1].abs() <= a[2].abs() {
        [0.0, 1.0, 0.0]
    } else {
        [0.0, 0.0, 1.0]
    };
    let cross = [a[1] * axis[2] - a[2] * axis[1], a[2] * axis[0] - a[0] * axis[2], a[0] * axis[1] - a[1] * axis[0]];
    unit(cross).expect("axis chosen non-parallel")
}

/// Eigenvector overlap and optimal Bloch directions for a pair of qubit observables.
pub fn qubit_geometry(a: &BlochObservable, b: &BlochObservable) -> QubitPairGeometry {
    let (u, v) = (a.direction(), b.direction());
    let theta = dot(u, v).clamp(-1.0, 1.0).acos();
    let ea = linalg::eigh(&linalg::bloch_operator(u)).vectors;
    let eb = linalg::eigh(&linalg::bloch_operator(v)).vectors;
    let overlaps = ea.adjoint() * eb;
    let c = overlaps.iter().map(|z| z.norm()).fold(0.0_f64, f64::max).min(1.0);
    let sum = [u[0] + v[0], u[1] + v[1], u[2] + v[2]];
    let diff = [v[0] - u[0], v[1] - u[1], v[2] - u[2]];
    let (r_plus, r_minus) = match (unit(sum), unit(diff)) {
        (Some(p), Some(m)) => (p, m),
        // parallel axes: r_plus = a, exterior bisector is any perpendicular
        (Some(p), None) => (p, orthogonal_to(u)),
        // antiparallel axes: r_minus = b
        (None, Some(m)) => (orthogonal_to(u), m),
        (None, None) => unreachable!("unit vectors cannot both sum and differ to zero"),
    };
    QubitPairGeometry { theta, c, r_plus, r_minus }
}

/// Tight bound on the average fidelity disturbance of two qubit observables,
/// evaluated at its analytic minimizer.
pub fn qubit_bound(a: &BlochObservable, b: &BlochObservable) -> TradeoffReport {
    let geom = qubit_geometry(a, b);
    let psi = PureState::from_bloch(geom.minimizer()).expect("unit Bloch vector");
    let instruments = [qubit_observable(a).instrument(), qubit_observable(b).instrument()];
    let achieved = average_disturbance(DistanceKind::Fidelity, &instruments, &psi).expect("qubit dimensions");
    TradeoffReport::new(ReportKind::Distance(DistanceKind::Fidelity), achieved, geom.bound(), Some(psi))
}

/// `F_θ(α) = 1 - (cos²α + cos²(θ - α))/2`: twice the average disturbance of a
/// state whose Bloch vector lies in the plane of the axes at angle `α` from `a`.
/// Minimized at `α = θ/2 + kπ/2`.
pub fn qubit_objective(theta: f64, alpha: f64) -> f64 {
    1.0 - 0.5 * (alpha.cos().powi(2) + (theta - alpha).cos().powi(2))
}

fn ensure_all_hermitian(ops: &[ComplexMatrix]) -> Result<usize> {
    let first = ops.first().ok_or(Error::Empty("operator list"))?;
    let d = linalg::ensure_hermitian(first, linalg::HERMITIAN_TOL)?;
    for m in ops {
        check_dim(d, linalg::ensure_hermitian(m, linalg::HERMITIAN_TOL)?)?;
    }
    Ok(d)
}

/// Residual `‖Mψ - ⟨ψ|M|ψ⟩ψ‖`.
pub fn eigen_residual(m: &ComplexMatrix, psi: &[c64]) -> f64 {
    let mut image = vec![c64::new(0.0, 0.0); psi.len()];
    linalg::apply(m, psi, &mut image);
    let lambda = linalg::expectation(m, psi);
    image.iter().zip(psi).map(|(x, p)| (x - lambda * p).norm_sqr()).sum::<f64>().sqrt()
}

/// Groups ascending values into runs whose neighbours differ by at most `tol`.
fn clusters(values: &[f64], tol: f64) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut start = 0;
    while start < values.len() {
        let mut end = start + 1;
        while end < values.len() && values[end] - values[end - 1] <= tol {
            end += 1;
        }
        out.push((start, end));
        start = end;
    }
    out
}

/// A state that is an eigenvector of every operator in `ops`, if one exists.
///
/// Refines the eigenspaces of the first operator by each following operator:
/// the operator is compressed onto the current subspace, diagonalized, and
/// every compressed eigenspace is cut down to the vectors that are genuine
/// eigenvectors of the full operator (the null space of `(M - λ)U`). The search
/// ends when no subspace survives. Candidates are taken from the
/// lowest-eigenvalue subspaces first.
pub fn common_eigenvector(ops: &[ComplexMatrix], tol: f64) -> Result<Option<PureState>> {
    let d = ensure_all_hermitian(ops)?;
    let mut spaces = vec![linalg::identity(d)];
    for m in ops {
        let mut next = Vec::new();
        for v in &spaces {
            let compressed = v.adjoint() * m * v;
            let eig = linalg::eigh(&compressed);
            for (start, end) in clusters(&eig.values, tol) {
                let u = v * eig.vectors.columns(start, end - start);
                let lambda = eig.values[start..end].iter().sum::<f64>() / (end - start) as f64;
                let shifted = m - linalg::identity(d) * c64::from(lambda);
                let kernel = linalg::null_space(&(shifted * &u), tol);
                if kernel.ncols() > 0 {
                    next.push(u * kernel);
                }
            }
        }
        if next.is_empty() {
            return Ok(None);
        }
        spaces = next;
    }
    for space in &spaces {
        for col in space.column_iter() {
            let psi = PureState::normalized(col.iter().copied().collect())?;
            if ops.iter().all(|m| eigen_residual(m, psi.amplitudes()) < tol) {
                return Ok(Some(psi));
            }
        }
    }
    Ok(None)
}

/// Orthonormal basis of the `+1` eigenspace (within `tol`) of a POVM effect.
fn unit_eigenspace(effect: &ComplexMatrix, tol: f64) -> ComplexMatrix {
    let eig = linalg::eigh(effect);
    let keep: Vec<usize> = (0..eig.values.len()).filter(|&k| eig.values[k] >= 1.0 - tol).collect();
    ComplexMatrix::from_fn(effect.nrows(), keep.len(), |i, j| eig.vectors[(i, keep[j])])
}

/// Orthonormal basis of `span(u) ∩ span(s)` for orthonormal column sets.
fn intersect(u: &ComplexMatrix, s: &ComplexMatrix, tol: f64) -> ComplexMatrix {
    let d = u.nrows();
    let outside = linalg::identity(d) - s * s.adjoint();
    let kernel = linalg::null_space(&(outside * u), tol);
    u * kernel
}

/// A state with zero outcome entropy for every POVM: each POVM has an effect
/// `E` with `E ψ = ψ`. `None` means the average uncertainty of the family is
/// strictly positive for every entropy that vanishes only on point masses.
pub fn uncertainty_zero_state(povms: &[Povm], tol: f64) -> Result<Option<PureState>> {
    let first = povms.first().ok_or(Error::Empty("POVM list"))?;
    let d = first.dim();
    for p in povms {
        check_dim(d, p.dim())?;
    }
    let candidates: Vec<Vec<ComplexMatrix>> = povms
        .iter()
        .map(|p| p.effects().iter().map(|e| unit_eigenspace(e, tol)).filter(|s| s.ncols() > 0).collect())
        .collect();

    fn search(space: &ComplexMatrix, rest: &[Vec<ComplexMatrix>], tol: f64) -> Option<ComplexMatrix> {
        let Some((options, tail)) = rest.split_first() else {
            return Some(space.clone());
        };
        options.iter().find_map(|s| {
            let next = intersect(space, s, tol);
            (next.ncols() > 0).then(|| search(&next, tail, tol)).flatten()
        })
    }

    let Some(space) = search(&linalg::identity(d), &candidates, tol) else {
        return Ok(None);
    };
    let psi = PureState::normalized(space.column(0).iter().copied().collect())?;
    let fixed = povms.iter().all(|p| {
        p.effects().iter().any(|e| {
            let mut image = vec![c64::new(0.0, 0.0); d];
            linalg::apply(e, psi.amplitudes(), &mut image);
            image.iter().zip(psi.amplitudes()).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt() < tol.sqrt()
        })
    });
    Ok(fixed.then_some(psi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{anticommuting_set, appendix_c_default, mub_set};
    use crate::qcore::linalg::{sigma_x, sigma_y, sigma_z};
    use crate::qcore::{spectral_decompose, DEFAULT_CLUSTER_TOL};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn instrument_of(h: &ComplexMatrix) -> Instrument {
        spectral_decompose(h, DEFAULT_CLUSTER_TOL).unwrap().instrument()
    }

    #[test]
    fn average_disturbance_examples() {
        let pauli: Vec<Instrument> = [sigma_x(), sigma_y(), sigma_z()].iter().map(instrument_of).collect();
        let psi = PureState::from_bloch([0.36, 0.48, 0.8]).unwrap();
        assert_abs_diff_eq!(
            average_disturbance(DistanceKind::Fidelity, &pauli, &psi).unwrap(),
            1.0 / 3.0,
            epsilon = 1e-14
        );
        let zero = PureState::basis(2, 0);
        assert_eq!(average_disturbance(DistanceKind::Fidelity, &pauli[2..], &zero).unwrap(), 0.0);
        let xz = [pauli[0].clone(), pauli[2].clone()];
        assert_abs_diff_eq!(average_disturbance(DistanceKind::Fidelity, &xz, &zero).unwrap(), 0.25, epsilon = 1e-15);
        assert!(matches!(average_disturbance(DistanceKind::Fidelity, &[], &zero), Err(Error::Empty(_))));
    }

    #[test]
    fn mub_probability_examples() {
        let zero = PureState::basis(2, 0);
        let full = mub_set(2, 3).unwrap();
        assert_abs_diff_eq!(mub_probability_sum(&full, &zero).unwrap(), 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(mub_probability_bound(3, 2), 2.0);
        let pair = mub_set(2, 2).unwrap();
        assert_abs_diff_eq!(mub_probability_sum(&pair, &zero).unwrap(), 1.5, epsilon = 1e-14);
        let qutrit = mub_set(3, 4).unwrap();
        for basis in qutrit.bases() {
            for v in basis {
                assert_abs_diff_eq!(mub_probability_sum(&qutrit, v).unwrap(), 2.0, epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn closed_form_bounds() {
        assert_abs_diff_eq!(mub_bound(3, 2), 1.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(mub_bound(2, 2), 0.25, epsilon = 1e-15);
        assert_eq!(mub_bound(1, 5), 0.0);
        assert_abs_diff_eq!(anticommuting_bound(3), 1.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(anticommuting_bound(2), 0.25, epsilon = 1e-15);
        assert_eq!(anticommuting_bound(1), 0.0);
    }

    #[test]
    fn metaur_examples() {
        let three = anticommuting_set(3).unwrap();
        assert_abs_diff_eq!(metaur_sum(&three, &PureState::basis(2, 0)).unwrap(), 1.0, epsilon = 1e-15);
        let two = anticommuting_set(2).unwrap();
        let plus = PureState::normalized(vec![c64::from(1.0), c64::from(1.0)]).unwrap();
        assert_abs_diff_eq!(metaur_sum(&two, &plus).unwrap(), 1.0, epsilon = 1e-15);
        let five = anticommuting_set(5).unwrap();
        let psi = PureState::normalized(vec![
            c64::new(0.3, 0.1),
            c64::new(-0.2, 0.5),
            c64::new(0.7, 0.0),
            c64::new(0.1, -0.4),
        ])
        .unwrap();
        let direct: f64 = five
            .observables()
            .iter()
            .map(|a| {
                let v = nalgebra::DVector::from_row_slice(psi.amplitudes());
                (v.adjoint() * a * &v)[(0, 0)].re.powi(2)
            })
            .sum();
        let value = metaur_sum(&five, &psi).unwrap();
        assert_abs_diff_eq!(value, direct, epsilon = 1e-14);
        assert!((0.0..=1.0 + 1e-12).contains(&value), "{value}");
    }

    #[test]
    fn geometry_examples() {
        let x = BlochObservable::axis([1.0, 0.0, 0.0]).unwrap();
        let z = BlochObservable::axis([0.0, 0.0, 1.0]).unwrap();
        let g = qubit_geometry(&x, &z);
        assert_abs_diff_eq!(g.c, FRAC_1_SQRT_2, epsilon = 1e-14);
        let same = qubit_geometry(&z, &z);
        assert_abs_diff_eq!(same.theta, 0.0, epsilon = 1e-7);
        assert_abs_diff_eq!(same.c, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(same.bound(), 0.0, epsilon = 1e-14);
        let t = PI / 3.0;
        let b = BlochObservable::axis([t.sin(), 0.0, t.cos()]).unwrap();
        let g = qubit_geometry(&z, &b);
        assert_abs_diff_eq!(g.c, (PI / 6.0).cos(), epsilon = 1e-14);
        assert_abs_diff_eq!(g.theta, t, epsilon = 1e-14);
        for r in [g.r_plus, g.r_minus] {
            assert_abs_diff_eq!(dot(r, r), 1.0, epsilon = 1e-14);
        }
        assert_abs_diff_eq!(dot(g.r_plus, g.r_minus), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn geometry_at_antiparallel_axes() {
        let z = BlochObservable::axis([0.0, 0.0, 1.0]).unwrap();
        let mz = BlochObservable::axis([0.0, 0.0, -1.0]).unwrap();
        let g = qubit_geometry(&z, &mz);
        assert_abs_diff_eq!(g.c, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(g.minimizer()[2], -1.0, epsilon = 1e-14);
        let report = qubit_bound(&z, &mz);
        assert_abs_diff_eq!(report.achieved, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn qubit_bound_examples() {
        let x = BlochObservable::axis([1.0, 0.0, 0.0]).unwrap();
        let z = BlochObservable::axis([0.0, 0.0, 1.0]).unwrap();
        let r = qubit_bound(&x, &z);
        assert_abs_diff_eq!(r.bound, 0.25, epsilon = 1e-14);
        assert_abs_diff_eq!(r.gap, 0.0, epsilon = 1e-12);
        let r = qubit_bound(&z, &BlochObservable::new([0.0, 0.0, 1.0], 3.0, -2.0).unwrap());
        assert_abs_diff_eq!(r.bound, 0.0, epsilon = 1e-14);
        let t = PI / 3.0;
        let b = BlochObservable::axis([t.sin(), 0.0, t.cos()]).unwrap();
        let r = qubit_bound(&z, &b);
        assert_abs_diff_eq!(r.bound, 0.125, epsilon = 1e-14);
        assert_abs_diff_eq!(r.achieved, 0.125, epsilon = 1e-12);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["kind"], "disturbance:F");
        assert!(json["argmin"]["re"].is_array());
    }

    #[test]
    fn qubit_bound_matches_dense_bloch_grid() {
        // θ = π/3: exhaustive grid over the sphere should bottom out near 1/8
        let t = PI / 3.0;
        let a = BlochObservable::axis([0.0, 0.0, 1.0]).unwrap();
        let b = BlochObservable::axis([t.sin(), 0.0, t.cos()]).unwrap();
        let (ua, ub) = (a.direction(), b.direction());
        let mut best = f64::INFINITY;
        for i in 0..=360 {
            let th = PI * i as f64 / 360.0;
            for j in 0..720 {
                let ph = 2.0 * PI * j as f64 / 720.0;
                let r = [th.sin() * ph.cos(), th.sin() * ph.sin(), th.cos()];
                // average D_F = (1 - ((a·r)² + (b·r)²)/2)/2 for qubit projective pairs
                let v = 0.5 * (1.0 - 0.5 * (dot(ua, r).powi(2) + dot(ub, r).powi(2)));
                best = best.min(v);
            }
        }
        assert_abs_diff_eq!(best, qubit_bound(&a, &b).bound, epsilon = 1e-4);
    }

    #[test]
    fn qubit_objective_examples() {
        assert_abs_diff_eq!(qubit_objective(FRAC_PI_2, PI / 4.0), 0.5, epsilon = 1e-15);
        assert_eq!(qubit_objective(0.0, 0.0), 0.0);
        for k in 0..=90 {
            let t = FRAC_PI_2 * k as f64 / 90.0;
            assert_abs_diff_eq!(qubit_objective(t, t / 2.0), 1.0 - (t / 2.0).cos().powi(2), epsilon = 1e-15);
        }
    }

    #[test]
    fn common_eigenvector_examples() {
        let v = common_eigenvector(&[sigma_z(), sigma_z()], DEFAULT_EIGEN_TOL).unwrap().unwrap();
        assert!(v.amplitudes()[0].norm() < 1e-12 || v.amplitudes()[1].norm() < 1e-12);
        assert!(common_eigenvector(&[sigma_x(), sigma_z()], DEFAULT_EIGEN_TOL).unwrap().is_none());
        let (a, b, phi1) = appendix_c_default();
        let effects: Vec<ComplexMatrix> = a.effects().iter().chain(b.effects()).cloned().collect();
        let found = common_eigenvector(&effects, DEFAULT_EIGEN_TOL).unwrap().unwrap();
        assert_abs_diff_eq!(found.inner(&phi1).norm(), 1.0, epsilon = 1e-12);
        let non_herm =
            ComplexMatrix::from_row_slice(2, 2, &[c64::from(0.0), c64::from(1.0), c64::from(0.0), c64::from(0.0)]);
        assert!(common_eigenvector(&[non_herm], DEFAULT_EIGEN_TOL).is_err());
    }

    #[test]
    fn common_eigenvector_inside_degenerate_eigenspace() {
        // A = diag(1, 1, 2) leaves a 2-dim eigenspace; B mixes |0⟩,|2⟩ only,
        // so |1⟩ is the unique common eigenvector inside it.
        let a = ComplexMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            c64::from(1.0),
            c64::from(1.0),
            c64::from(2.0),
        ]));
        let mut b = ComplexMatrix::zeros(3, 3);
        b[(0, 2)] = c64::from(1.0);
        b[(2, 0)] = c64::from(1.0);
        b[(1, 1)] = c64::from(0.3);
        let v = common_eigenvector(&[a, b], DEFAULT_EIGEN_TOL).unwrap().unwrap();
        assert_abs_diff_eq!(v.amplitudes()[1].norm(), 1.0, epsilon = 1e-12);
    }

    fn proj_povm(h: &ComplexMatrix) -> Povm {
        spectral_decompose(h, DEFAULT_CLUSTER_TOL).unwrap().povm()
    }

    #[test]
    fn uncertainty_zero_examples() {
        let z = proj_povm(&sigma_z());
        let zz = proj_povm(&(sigma_z() * c64::from(2.0) + linalg::identity(2)));
        let v = uncertainty_zero_state(&[z.clone(), zz], DEFAULT_EIGEN_TOL).unwrap().unwrap();
        assert!(v.amplitudes().iter().filter(|a| a.norm() > 1e-12).count() == 1);
        let (a, b, _) = appendix_c_default();
        assert!(uncertainty_zero_state(&[a, b], DEFAULT_EIGEN_TOL).unwrap().is_none());
        assert!(uncertainty_zero_state(&[proj_povm(&sigma_x()), z], DEFAULT_EIGEN_TOL).unwrap().is_none());
    }

    #[test]
    fn report_gap() {
        let r = TradeoffReport::new(ReportKind::InheritedTrace, 0.5, 0.25, None);
        assert_eq!(r.gap, 0.25);
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"argmin\":null"), "{json}");
        assert!(json.contains("inherited"), "{json}");
    }
}
