//! Function-theoretic side of the model matrix: Blaschke factors and
//! products, the Takenaka-Malmquist-Walsh basis, and unit-circle quadrature
//! that recovers the matrix entries from Hardy-space inner products.
//!
//! The quadrature is the uniform trapezoid rule on the circle. Every
//! integrand here is rational with poles strictly off the closed disk, so the
//! rule converges geometrically with ratio about max_k |omega_k|.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::model::{build_model_matrix, ModelParameters, DISK_MARGIN};

const POLE_EPS: f64 = 1e-15;

/// b_w(z) = (z - w) / (1 - conj(w) z), the disk automorphism vanishing at w.
pub fn blaschke_factor(w: Complex64, z: Complex64) -> Result<Complex64> {
    let modulus = w.norm();
    if !modulus.is_finite() || modulus >= 1.0 - DISK_MARGIN {
        return Err(Error::OutsideDisk { index: 1, modulus });
    }
    let den = Complex64::new(1.0, 0.0) - w.conj() * z;
    if den.norm() < POLE_EPS {
        return Err(Error::Pole { z });
    }
    Ok((z - w) / den)
}

/// Finite Blaschke product with the parameter points as zeros; inner, so
/// unimodular on the circle.
pub fn blaschke_product(p: &ModelParameters, z: Complex64) -> Result<Complex64> {
    let mut acc = Complex64::new(1.0, 0.0);
    for &w in p.omegas() {
        acc *= blaschke_factor(w, z)?;
    }
    Ok(acc)
}

/// Partial sum of the convergence condition for infinite products:
/// sum_k (1 - |omega_k|) over the given points.
pub fn blaschke_partial_sum(omegas: &[Complex64]) -> Result<f64> {
    if omegas.is_empty() {
        return Err(Error::invalid("partial sum needs at least one point"));
    }
    let mut sum = 0.0;
    for (k, w) in omegas.iter().enumerate() {
        let modulus = w.norm();
        if !modulus.is_finite() || modulus >= 1.0 {
            return Err(Error::OutsideDisk {
                index: k + 1,
                modulus,
            });
        }
        sum += 1.0 - modulus;
    }
    Ok(sum)
}

/// The Takenaka-Malmquist-Walsh basis attached to a point list:
/// phi_1(z) = s_1 / (1 - conj(omega_1) z) and
/// phi_k(z) = (prod_{j<k} b_{omega_j}(z)) s_k / (1 - conj(omega_k) z).
///
/// With all points at the origin the basis reduces to the monomials z^{k-1}.
#[derive(Clone, Debug)]
pub struct TmwBasis {
    params: ModelParameters,
}

#[allow(clippy::len_without_is_empty)] // parameters are validated non-empty
impl TmwBasis {
    pub fn new(params: ModelParameters) -> Self {
        Self { params }
    }

    pub fn len(&self) -> usize {
        self.params.len()
    }

    pub fn params(&self) -> &ModelParameters {
        &self.params
    }

    /// Evaluates phi_k at z. The index k is 1-based, matching phi_1..phi_n.
    pub fn eval(&self, k: usize, z: Complex64) -> Result<Complex64> {
        let n = self.params.len();
        if k == 0 || k > n {
            return Err(Error::IndexOutOfRange { index: k, n });
        }
        let mut prefix = Complex64::new(1.0, 0.0);
        for j in 0..k - 1 {
            prefix *= blaschke_factor(self.params.omegas()[j], z)?;
        }
        let w = self.params.omegas()[k - 1];
        let den = Complex64::new(1.0, 0.0) - w.conj() * z;
        if den.norm() < POLE_EPS {
            return Err(Error::Pole { z });
        }
        Ok(prefix * (self.params.defect_scalar(k - 1) / den))
    }

    /// All n basis values at z in one O(n) pass over the Blaschke prefix.
    pub fn eval_all(&self, z: Complex64) -> Result<Vec<Complex64>> {
        let n = self.params.len();
        let mut out = Vec::with_capacity(n);
        let mut prefix = Complex64::new(1.0, 0.0);
        for k in 0..n {
            let w = self.params.omegas()[k];
            let den = Complex64::new(1.0, 0.0) - w.conj() * z;
            if den.norm() < POLE_EPS {
                return Err(Error::Pole { z });
            }
            out.push(prefix * (self.params.defect_scalar(k) / den));
            prefix *= (z - w) / den;
        }
        Ok(out)
    }
}

/// Uniform nodes exp(2 pi i j / N) on the circle with weights 1/N; the
/// discretization of the Hardy-space inner product.
#[derive(Clone, Copy, Debug)]
pub struct QuadratureGrid {
    n_nodes: usize,
}

impl QuadratureGrid {
    pub fn new(n_nodes: usize) -> Result<Self> {
        if n_nodes < 4 {
            return Err(Error::invalid(format!(
                "quadrature needs at least 4 nodes, got {n_nodes}"
            )));
        }
        Ok(Self { n_nodes })
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn node(&self, j: usize) -> Complex64 {
        let theta = TAU * (j as f64) / (self.n_nodes as f64);
        Complex64::new(theta.cos(), theta.sin())
    }

    pub fn weight(&self) -> f64 {
        1.0 / self.n_nodes as f64
    }
}

/// Node count that drives the quadrature defect below `target_tol`:
/// max(128, log(target_tol)/log(max|omega| + 1e-3) + 4n).
pub fn suggested_nodes(p: &ModelParameters, target_tol: f64) -> usize {
    let rho = (p.max_modulus() + 1e-3).min(0.9999);
    let decay = (target_tol.ln() / rho.ln()).ceil().max(0.0) as usize;
    (decay + 4 * p.len()).max(128)
}

/// Discretized Gram matrix of the basis, G_ij = (1/N) sum_l phi_i conj(phi_j).
/// Orthonormality means G converges to the identity.
pub fn gram_matrix(basis: &TmwBasis, grid: &QuadratureGrid) -> Result<ComplexMatrix> {
    accumulate(basis, grid, |_z| Complex64::new(1.0, 0.0))
}

/// Matrix elements of multiplication by z compressed to the model space,
/// recovered by quadrature: entry (i, j) = (1/N) sum_l z_l phi_i conj(phi_j).
/// Converges entrywise to the model matrix.
pub fn compressed_shift_by_quadrature(
    basis: &TmwBasis,
    grid: &QuadratureGrid,
) -> Result<ComplexMatrix> {
    accumulate(basis, grid, |z| z)
}

fn accumulate(
    basis: &TmwBasis,
    grid: &QuadratureGrid,
    factor: impl Fn(Complex64) -> Complex64,
) -> Result<ComplexMatrix> {
    let n = basis.len();
    let mut acc = ComplexMatrix::zeros(n, n);
    for l in 0..grid.n_nodes() {
        let z = grid.node(l);
        let phi = basis.eval_all(z)?;
        let f = factor(z);
        for i in 0..n {
            let left = f * phi[i];
            for j in 0..n {
                acc[(i, j)] += left * phi[j].conj();
            }
        }
    }
    Ok(acc.scale(Complex64::new(grid.weight(), 0.0)))
}

/// Cross-validation summary: how far the discretized Gram matrix is from the
/// identity and the discretized shift from the closed-form model matrix.
#[derive(Clone, Debug, Serialize)]
pub struct TmwReport {
    pub gram_defect: f64,
    pub entry_defect: f64,
    pub n_nodes: usize,
    pub max_omega: f64,
    /// Set when max|omega| >= 0.95: the geometric rate degenerates near the
    /// boundary, so defects are reported as advisory.
    pub low_accuracy: bool,
}

pub fn tmw_verify(p: &ModelParameters, grid: &QuadratureGrid) -> Result<TmwReport> {
    let basis = TmwBasis::new(p.clone());
    let gram = gram_matrix(&basis, grid)?;
    let gram_defect = gram
        .max_deviation(&ComplexMatrix::identity(p.len()))
        .expect("same shape");
    let shift = compressed_shift_by_quadrature(&basis, grid)?;
    let entry_defect = shift
        .max_deviation(&build_model_matrix(p))
        .expect("same shape");
    let max_omega = p.max_modulus();
    Ok(TmwReport {
        gram_defect,
        entry_defect,
        n_nodes: grid.n_nodes(),
        max_omega,
        low_accuracy: max_omega >= 0.95,
    })
}
