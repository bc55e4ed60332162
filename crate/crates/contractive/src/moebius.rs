//! Möbius transforms of the disk, scalar and matrix-valued: the involutive
//! automorphism (omega - z)/(1 - conj(omega) z) extended to matrices through
//! the rational functional calculus. Used to move a chosen eigenvalue of a
//! model matrix to the origin without leaving the contractions.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::solve_resolvent;
use crate::matrix::{ComplexMatrix, Tolerances};
use crate::model::DISK_MARGIN;

const POLE_EPS: f64 = 1e-15;

/// A disk point parametrizing the transform.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MoebiusParam {
    omega: Complex64,
}

impl MoebiusParam {
    pub fn new(omega: Complex64) -> Result<Self> {
        let modulus = omega.norm();
        if !modulus.is_finite() || modulus >= 1.0 - DISK_MARGIN {
            return Err(Error::OutsideDisk { index: 1, modulus });
        }
        Ok(Self { omega })
    }

    pub fn omega(&self) -> Complex64 {
        self.omega
    }
}

/// (omega - z) / (1 - conj(omega) z). Maps the closed disk into itself, with
/// modulus 1 exactly on the circle; swaps 0 and omega.
pub fn moebius_scalar(m: &MoebiusParam, z: Complex64) -> Result<Complex64> {
    let den = Complex64::new(1.0, 0.0) - m.omega.conj() * z;
    if den.norm() < POLE_EPS {
        return Err(Error::Pole { z });
    }
    Ok((m.omega - z) / den)
}

/// (omega Id - T)(Id - conj(omega) T)^{-1}, realized as one resolvent solve
/// with the numerator applied first, never by explicit inverse.
///
/// Upper-triangular input comes back exactly upper triangular, and its
/// diagonal is the scalar transform of the input diagonal bit for bit.
pub fn moebius_matrix(
    m: &MoebiusParam,
    t: &ComplexMatrix,
    tol: &Tolerances,
) -> Result<ComplexMatrix> {
    if !t.is_square() {
        return Err(Error::dim(format!(
            "Moebius transform needs a square matrix, got {}x{}",
            t.rows(),
            t.cols()
        )));
    }
    let n = t.rows();
    let numerator = ComplexMatrix::from_fn(n, n, |i, j| {
        if i == j {
            m.omega - t[(i, j)]
        } else {
            -t[(i, j)]
        }
    });
    solve_resolvent(t, m.omega, &numerator, tol)
}

/// Reciprocal smallest singular value of Id - conj(omega) T, the conditioning
/// of the transform. Reported as a warning by callers when omega or T sits
/// within 1e-3 of the boundary.
pub fn resolvent_condition(m: &MoebiusParam, t: &ComplexMatrix) -> Result<f64> {
    if !t.is_square() {
        return Err(Error::dim(format!(
            "resolvent conditioning needs a square matrix, got {}x{}",
            t.rows(),
            t.cols()
        )));
    }
    let n = t.rows();
    let wc = m.omega.conj();
    let system = ComplexMatrix::from_fn(n, n, |i, j| {
        let delta = if i == j {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        };
        delta - wc * t[(i, j)]
    });
    let sigma_min = crate::linalg::singular_values(&system)
        .last()
        .copied()
        .unwrap_or(0.0);
    Ok(if sigma_min > 0.0 {
        1.0 / sigma_min
    } else {
        f64::INFINITY
    })
}

/// Max-entry residual of the involution: || M(M(T)) - T ||_max.
pub fn check_involution(m: &MoebiusParam, t: &ComplexMatrix, tol: &Tolerances) -> Result<f64> {
    let once = moebius_matrix(m, t, tol)?;
    let twice = moebius_matrix(m, &once, tol)?;
    twice.max_deviation(t)
}

/// Residual of the norm identity behind contraction preservation: with
/// y = (Id - conj(omega) T)^{-1} x,
/// | (||x||^2 - ||M(T)x||^2) - (1 - |omega|^2)(||y||^2 - ||Ty||^2) |.
pub fn norm_identity_residual(
    m: &MoebiusParam,
    t: &ComplexMatrix,
    x: &ComplexMatrix,
    tol: &Tolerances,
) -> Result<f64> {
    if x.cols() != 1 {
        return Err(Error::dim(format!(
            "expected a column vector, got {}x{}",
            x.rows(),
            x.cols()
        )));
    }
    let y = solve_resolvent(t, m.omega, x, tol)?;
    let n = t.rows();
    let omega_y_minus_ty = ComplexMatrix::from_fn(n, 1, |i, _| {
        let mut acc = m.omega * y[(i, 0)];
        for k in 0..n {
            acc -= t[(i, k)] * y[(k, 0)];
        }
        acc
    });
    let ty = t.mul(&y)?;
    let x_sq = x.frobenius_norm().powi(2);
    let mx_sq = omega_y_minus_ty.frobenius_norm().powi(2);
    let y_sq = y.frobenius_norm().powi(2);
    let ty_sq = ty.frobenius_norm().powi(2);
    let lhs = x_sq - mx_sq;
    let rhs = (1.0 - m.omega.norm_sqr()) * (y_sq - ty_sq);
    Ok((lhs - rhs).abs())
}
