//! Small dense complex linear algebra shared by the simulator and synthesis code.
//!
//! Everything here works on `DMatrix<Complex64>` of dimension at most 16
//! (four qubits), so dense eigendecompositions are always affordable.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_chacha::rand_core::SeedableRng;

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

pub const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const C_ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const C_I: Complex64 = Complex64::new(0.0, 1.0);

pub fn cmat(rows: usize, cols: usize, entries: &[Complex64]) -> CMat {
    CMat::from_row_slice(rows, cols, entries)
}

/// Kronecker product, `a` on the most significant qubits.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// Kronecker product of a list, first factor most significant.
pub fn kron_all(factors: &[CMat]) -> CMat {
    let mut out = CMat::identity(1, 1);
    for f in factors {
        out = out.kronecker(f);
    }
    out
}

pub fn dagger(m: &CMat) -> CMat {
    m.adjoint()
}

pub fn is_unitary(m: &CMat, tol: f64) -> bool {
    let n = m.nrows();
    if n != m.ncols() {
        return false;
    }
    let delta = m.adjoint() * m - CMat::identity(n, n);
    delta.norm() <= tol
}

/// Frobenius distance between `a` and `b` minimized over a global phase on `b`.
pub fn dist_up_to_phase(a: &CMat, b: &CMat) -> f64 {
    let tr: Complex64 = (b.adjoint() * a).trace();
    if tr.norm() < 1e-14 {
        let d1 = (a - b).norm();
        let d2 = (a + b).norm();
        return d1.min(d2);
    }
    let phase = tr / tr.norm();
    (a - b.map(|x| phase * x)).norm()
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
///
/// Returns `(eigenvalues, eigenvectors)` with eigenvectors as columns.
pub fn eigh(m: &CMat) -> (Vec<f64>, CMat) {
    let se = m.clone().symmetric_eigen();
    let n = m.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| se.eigenvalues[i].partial_cmp(&se.eigenvalues[j]).unwrap());
    let vals: Vec<f64> = order.iter().map(|&i| se.eigenvalues[i]).collect();
    let mut vecs = CMat::zeros(n, n);
    for (k, &i) in order.iter().enumerate() {
        vecs.set_column(k, &se.eigenvectors.column(i));
    }
    (vals, vecs)
}

/// `exp(i s H)` for Hermitian `H`.
pub fn expm_hermitian(h: &CMat, s: f64) -> CMat {
    let (vals, vecs) = eigh(h);
    let n = h.nrows();
    let mut d = CMat::zeros(n, n);
    for (k, &v) in vals.iter().enumerate() {
        d[(k, k)] = Complex64::new(0.0, s * v).exp();
    }
    &vecs * d * vecs.adjoint()
}

/// Spectral (operator 2-) norm.
pub fn op_norm(m: &CMat) -> f64 {
    let g = m.adjoint() * m;
    let (vals, _) = eigh(&g);
    vals.last().copied().unwrap_or(0.0).max(0.0).sqrt()
}

/// Eigendecomposition of a unitary matrix `U = V diag(e^{i phases}) V†`.
///
/// Uses the fact that the Hermitian and anti-Hermitian parts of a normal
/// matrix commute: a random real mix of the two is diagonalized instead, and
/// the result is checked against `U` itself, retrying with a fresh mix on the
/// rare degenerate draw.
pub fn unitary_eigen(u: &CMat) -> Result<(Vec<f64>, CMat), String> {
    let n = u.nrows();
    let re = (u + u.adjoint()).map(|x| x * Complex64::new(0.5, 0.0));
    let im = (u - u.adjoint()).map(|x| x * Complex64::new(0.0, -0.5));
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..100 {
        let (a, b): (f64, f64) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let mix = re.map(|x| x * Complex64::new(a, 0.0)) + im.map(|x| x * Complex64::new(b, 0.0));
        let (_, vecs) = eigh(&mix);
        let d = vecs.adjoint() * u * &vecs;
        let mut diag = CMat::zeros(n, n);
        for k in 0..n {
            diag[(k, k)] = d[(k, k)];
        }
        if (&vecs * &diag * vecs.adjoint() - u).norm() < 1e-11 {
            let phases: Vec<f64> = (0..n).map(|k| diag[(k, k)].arg()).collect();
            return Ok((phases, vecs));
        }
    }
    Err("unitary eigendecomposition did not converge".into())
}

/// Principal-branch Hermitian generator `G` with `U = exp(-i G)`.
pub fn unitary_log(u: &CMat) -> Result<CMat, String> {
    let (phases, vecs) = unitary_eigen(u)?;
    let n = u.nrows();
    let mut d = CMat::zeros(n, n);
    for (k, &p) in phases.iter().enumerate() {
        d[(k, k)] = Complex64::new(-p, 0.0);
    }
    let g = &vecs * d * vecs.adjoint();
    // enforce exact Hermiticity against roundoff
    Ok((&g + g.adjoint()).map(|x| x * Complex64::new(0.5, 0.0)))
}

/// Solve `(A + ridge I) x = b` for a symmetric positive semi-definite `A`.
pub fn solve_ridge(a: &DMatrix<f64>, b: &DVector<f64>, ridge: f64) -> Option<DVector<f64>> {
    let n = a.nrows();
    let reg = a + DMatrix::identity(n, n) * ridge;
    reg.lu().solve(b)
}
