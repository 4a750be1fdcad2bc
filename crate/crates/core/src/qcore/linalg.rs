//! Dense complex linear algebra for small Hilbert spaces.
//!
//! Everything here works on column-major `nalgebra` matrices of `c64`. The
//! eigensolver and SVD come from `nalgebra`; the helpers below add the
//! Hermitian-specific conveniences (sorted spectra, PSD roots, null spaces)
//! the rest of the crate needs.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

#[allow(non_camel_case_types)]
pub type c64 = Complex64;

/// Dense square complex matrix.
pub type ComplexMatrix = DMatrix<c64>;

/// Tolerance for Hermiticity and PSD checks on validated inputs.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Eigenvalues in `[-PSD_CLAMP, 0)` are treated as zero.
pub const PSD_CLAMP: f64 = 1e-10;

pub fn identity(d: usize) -> ComplexMatrix {
    ComplexMatrix::identity(d, d)
}

pub fn sigma_x() -> ComplexMatrix {
    ComplexMatrix::from_row_slice(
        2,
        2,
        &[c64::new(0.0, 0.0), c64::new(1.0, 0.0), c64::new(1.0, 0.0), c64::new(0.0, 0.0)],
    )
}

pub fn sigma_y() -> ComplexMatrix {
    ComplexMatrix::from_row_slice(
        2,
        2,
        &[c64::new(0.0, 0.0), c64::new(0.0, -1.0), c64::new(0.0, 1.0), c64::new(0.0, 0.0)],
    )
}

pub fn sigma_z() -> ComplexMatrix {
    ComplexMatrix::from_row_slice(
        2,
        2,
        &[c64::new(1.0, 0.0), c64::new(0.0, 0.0), c64::new(0.0, 0.0), c64::new(-1.0, 0.0)],
    )
}

/// `n · σ` for a real 3-vector `n`.
pub fn bloch_operator(n: [f64; 3]) -> ComplexMatrix {
    sigma_x() * c64::from(n[0]) + sigma_y() * c64::from(n[1]) + sigma_z() * c64::from(n[2])
}

pub fn ensure_square(m: &ComplexMatrix) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return Err(Error::NotSquare { rows: m.nrows(), cols: m.ncols() });
    }
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite("matrix"));
    }
    Ok(m.nrows())
}

/// Largest entrywise deviation `|M_ij - conj(M_ji)|`.
pub fn hermitian_deviation(m: &ComplexMatrix) -> f64 {
    let d = m.nrows();
    let mut worst = 0.0_f64;
    for j in 0..d {
        for i in 0..=j {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

pub fn ensure_hermitian(m: &ComplexMatrix, tol: f64) -> Result<usize> {
    let d = ensure_square(m)?;
    let deviation = hermitian_deviation(m);
    if deviation > tol {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(d)
}

/// `(M + M†) / 2`.
pub fn hermitian_part(m: &ComplexMatrix) -> ComplexMatrix {
    (m + m.adjoint()) * c64::from(0.5)
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct Eigh {
    pub values: Vec<f64>,
    /// Column `k` is the unit eigenvector for `values[k]`.
    pub vectors: ComplexMatrix,
}

/// Diagonalizes the Hermitian part of `m`. Callers validate Hermiticity.
pub fn eigh(m: &ComplexMatrix) -> Eigh {
    let d = m.nrows();
    let eig = hermitian_part(m).symmetric_eigen();
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = ComplexMatrix::from_fn(d, d, |i, j| eig.eigenvectors[(i, order[j])]);
    Eigh { values, vectors }
}

/// Eigenvalues of a Hermitian matrix, ascending. 2x2 inputs use the closed form.
pub fn eigvalsh(m: &ComplexMatrix) -> Vec<f64> {
    if m.nrows() == 2 {
        let a = m[(0, 0)].re;
        let c = m[(1, 1)].re;
        let b = 0.5 * (m[(0, 1)] + m[(1, 0)].conj());
        let mean = 0.5 * (a + c);
        let half = 0.5 * (a - c);
        let r = (half * half + b.norm_sqr()).sqrt();
        return vec![mean - r, mean + r];
    }
    let mut values: Vec<f64> = hermitian_part(m).symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(f64::total_cmp);
    values
}

/// Principal square root of a PSD matrix.
pub fn matrix_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    psd_function(m, f64::sqrt)
}

/// Applies `f` to the (clamped) spectrum of a PSD matrix.
pub(crate) fn psd_function(m: &ComplexMatrix, f: impl Fn(f64) -> f64) -> Result<ComplexMatrix> {
    ensure_hermitian(m, HERMITIAN_TOL)?;
    let Eigh { values, vectors } = eigh(m);
    if let Some(&min) = values.first() {
        if min < -PSD_CLAMP {
            return Err(Error::NotPositive { min_eigenvalue: min });
        }
    }
    let d = m.nrows();
    let mut out = ComplexMatrix::zeros(d, d);
    for (k, &lambda) in values.iter().enumerate() {
        let w = f(lambda.max(0.0));
        if w == 0.0 {
            continue;
        }
        let v = vectors.column(k);
        out += (v * v.adjoint()) * c64::from(w);
    }
    Ok(hermitian_part(&out))
}

/// Orthonormal basis (as columns) of `{x : ‖M x‖ ≤ tol ‖x‖}`.
pub fn null_space(m: &ComplexMatrix, tol: f64) -> ComplexMatrix {
    let cols = m.ncols();
    if cols == 0 {
        return ComplexMatrix::zeros(0, 0);
    }
    // Pad to at least `cols` rows so the SVD returns a full right basis.
    let rows = m.nrows().max(cols);
    let mut padded = ComplexMatrix::zeros(rows, cols);
    padded.view_mut((0, 0), (m.nrows(), cols)).copy_from(m);
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested v_t");
    let keep: Vec<usize> = (0..cols).filter(|&k| svd.singular_values[k] <= tol).collect();
    ComplexMatrix::from_fn(cols, keep.len(), |i, j| v_t[(keep[j], i)].conj())
}

/// `⟨ψ|M|ψ⟩` over raw amplitudes.
#[inline]
pub fn expectation(m: &ComplexMatrix, psi: &[c64]) -> c64 {
    let d = psi.len();
    let data = m.as_slice();
    let mut acc = c64::new(0.0, 0.0);
    for j in 0..d {
        let col = &data[j * d..(j + 1) * d];
        let mut row_sum = c64::new(0.0, 0.0);
        for i in 0..d {
            row_sum += psi[i].conj() * col[i];
        }
        acc += row_sum * psi[j];
    }
    acc
}

/// `M ψ` written into `out`.
#[inline]
pub fn apply(m: &ComplexMatrix, psi: &[c64], out: &mut [c64]) {
    let d = psi.len();
    let data = m.as_slice();
    out.iter_mut().for_each(|z| *z = c64::new(0.0, 0.0));
    for j in 0..d {
        let col = &data[j * d..(j + 1) * d];
        let x = psi[j];
        for i in 0..d {
            out[i] += col[i] * x;
        }
    }
}

/// `|u⟩⟨v|`.
pub fn outer(u: &[c64], v: &[c64]) -> ComplexMatrix {
    ComplexMatrix::from_fn(u.len(), v.len(), |i, j| u[i] * v[j].conj())
}

/// Largest absolute entry of `a - b`.
pub fn max_abs_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Sum of absolute eigenvalues of a Hermitian matrix.
pub fn trace_norm(h: &ComplexMatrix) -> f64 {
    eigvalsh(h).iter().map(|x| x.abs()).sum()
}

/// Largest absolute eigenvalue of a Hermitian matrix (its largest singular value).
pub fn spectral_norm(h: &ComplexMatrix) -> f64 {
    eigvalsh(h).iter().fold(0.0_f64, |acc, x| acc.max(x.abs()))
}

pub fn trace(m: &ComplexMatrix) -> c64 {
    m.diagonal().iter().sum()
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kronecker(b)
}
