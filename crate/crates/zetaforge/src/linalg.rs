//! Small shared linear-algebra helpers over complex matrices.
//!
//! Everything in scope is dense and small (transfer matrices are a few
//! hundred rows, representation images are at most 8x8), so nalgebra's
//! generic implementations are used directly: LU for determinants, SVD
//! for rank decisions, complex Schur for eigenvalues.

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

pub type Cx = Complex64;
pub type CMat = DMatrix<Cx>;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("Schur iteration did not converge")]
    SchurFailed,
    #[error("SVD did not converge")]
    SvdFailed,
    #[error("rank decision ambiguous at tolerance {tol:e}: singular value {sv:e}")]
    AmbiguousRank { sv: f64, tol: f64 },
    #[error("matrix is singular")]
    Singular,
}

pub fn cx(re: f64, im: f64) -> Cx {
    Cx::new(re, im)
}

/// Eigenvalues of a square complex matrix via the complex Schur form.
pub fn eigenvalues(m: &CMat) -> Result<Vec<Cx>, LinalgError> {
    debug_assert_eq!(m.nrows(), m.ncols());
    let n = m.nrows();
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        return Ok(vec![m[(0, 0)]]);
    }
    let schur = m
        .clone()
        .try_schur(1e-14, 100_000)
        .ok_or(LinalgError::SchurFailed)?;
    let (_, t) = schur.unpack();
    Ok((0..n).map(|k| t[(k, k)]).collect())
}

/// Singular values, largest first.
pub fn singular_values(m: &CMat) -> Result<Vec<f64>, LinalgError> {
    let svd = m
        .clone()
        .try_svd(false, false, 1e-14, 100_000)
        .ok_or(LinalgError::SvdFailed)?;
    let mut sv: Vec<f64> = svd.singular_values.iter().cloned().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok(sv)
}

/// Operator 2-norm (largest singular value).
pub fn op_norm(m: &CMat) -> f64 {
    singular_values(m)
        .map(|sv| sv.first().copied().unwrap_or(0.0))
        .unwrap_or(f64::NAN)
}

/// Numerical rank at tolerance `tol`, refusing to decide when a singular
/// value falls within a factor 10 of the threshold.
pub fn rank_at_tol(m: &CMat, tol: f64) -> Result<usize, LinalgError> {
    let sv = singular_values(m)?;
    let mut rank = 0;
    for &s in &sv {
        if s > 10.0 * tol {
            rank += 1;
        } else if s > tol / 10.0 {
            return Err(LinalgError::AmbiguousRank { sv: s, tol });
        }
    }
    Ok(rank)
}

/// det(I - M) by pivoted LU.
pub fn det_one_minus(m: &CMat) -> Cx {
    let n = m.nrows();
    let a = CMat::identity(n, n) - m;
    a.lu().determinant()
}

pub fn inverse(m: &CMat) -> Result<CMat, LinalgError> {
    m.clone().try_inverse().ok_or(LinalgError::Singular)
}

/// Leading eigenvalue modulus by power iteration (deterministic start).
pub fn leading_eigenvalue_modulus(m: &CMat, iters: usize) -> f64 {
    let n = m.nrows();
    if n == 0 {
        return 0.0;
    }
    let mut v = nalgebra::DVector::<Cx>::from_fn(n, |k, _| cx(1.0 + (k as f64) * 1e-3, 0.0));
    v /= cx(v.norm(), 0.0);
    let mut lambda = 0.0;
    for _ in 0..iters {
        let w = m * &v;
        let norm = w.norm();
        if norm == 0.0 {
            return 0.0;
        }
        lambda = norm;
        v = w / cx(norm, 0.0);
    }
    lambda
}

/// M^n by binary exponentiation, n >= 0.
pub fn mat_pow(m: &CMat, n: u64) -> CMat {
    let d = m.nrows();
    let mut result = CMat::identity(d, d);
    let mut base = m.clone();
    let mut k = n;
    while k > 0 {
        if k & 1 == 1 {
            result = &result * &base;
        }
        base = &base * &base;
        k >>= 1;
    }
    result
}
