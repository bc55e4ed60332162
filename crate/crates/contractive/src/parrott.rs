//! Contractive completion of a 2x2 block matrix with one unknown corner:
//! given blocks A, C, D with the column [A; C] and the row [C D] both
//! contractions, find every B making [A B; C D] a contraction.
//!
//! The machinery runs through the two factor equations A = Z Dc and
//! D = Dc* Y (Dc the defect of C, Dc* the defect of C*). For a scalar
//! corner the admissible set is the closed disk centered at -Z C* Y with
//! radius sqrt((1 - ZZ*)(1 - Y*Y)); a zero radius forces uniqueness, which
//! is exactly the mechanism behind the band-determines-the-matrix theorem.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, spectral_norm};
use crate::matrix::{ComplexMatrix, Tolerances};

/// The known blocks: A (k1 x h1), C (k2 x h1), D (k2 x h2). The unknown
/// corner B is k1 x h2. Construction certifies the column and row norms.
#[derive(Clone, Debug)]
pub struct ParrottBlocks {
    a: ComplexMatrix,
    c: ComplexMatrix,
    d: ComplexMatrix,
}

impl ParrottBlocks {
    pub fn new(
        a: ComplexMatrix,
        c: ComplexMatrix,
        d: ComplexMatrix,
        tol: &Tolerances,
    ) -> Result<Self> {
        if a.cols() != c.cols() {
            return Err(Error::dim(format!(
                "A has {} columns but C has {}",
                a.cols(),
                c.cols()
            )));
        }
        if c.rows() != d.rows() {
            return Err(Error::dim(format!(
                "C has {} rows but D has {}",
                c.rows(),
                d.rows()
            )));
        }
        let blocks = Self { a, c, d };
        let column = blocks.column_norm();
        if column > 1.0 + tol.cert_tol {
            return Err(Error::BlockNotContractive {
                name: "[A; C]",
                norm: column,
            });
        }
        let row = blocks.row_norm();
        if row > 1.0 + tol.cert_tol {
            return Err(Error::BlockNotContractive {
                name: "[C D]",
                norm: row,
            });
        }
        Ok(blocks)
    }

    pub fn a(&self) -> &ComplexMatrix {
        &self.a
    }

    pub fn c(&self) -> &ComplexMatrix {
        &self.c
    }

    pub fn d(&self) -> &ComplexMatrix {
        &self.d
    }

    pub fn corner_rows(&self) -> usize {
        self.a.rows()
    }

    pub fn corner_cols(&self) -> usize {
        self.d.cols()
    }

    /// The column block [A; C].
    pub fn column_block(&self) -> ComplexMatrix {
        let (k1, k2, h1) = (self.a.rows(), self.c.rows(), self.a.cols());
        ComplexMatrix::from_fn(k1 + k2, h1, |i, j| {
            if i < k1 {
                self.a[(i, j)]
            } else {
                self.c[(i - k1, j)]
            }
        })
    }

    /// The row block [C D].
    pub fn row_block(&self) -> ComplexMatrix {
        let (k2, h1, h2) = (self.c.rows(), self.c.cols(), self.d.cols());
        ComplexMatrix::from_fn(k2, h1 + h2, |i, j| {
            if j < h1 {
                self.c[(i, j)]
            } else {
                self.d[(i, j - h1)]
            }
        })
    }

    pub fn column_norm(&self) -> f64 {
        spectral_norm(&self.column_block())
    }

    pub fn row_norm(&self) -> f64 {
        spectral_norm(&self.row_block())
    }
}

/// Minimal-norm solutions of the factor equations with their residuals.
#[derive(Clone, Debug)]
pub struct FactorPair {
    /// Z with A = Z Dc, k1 x h1.
    pub z: ComplexMatrix,
    /// Y with D = Dc* Y, k2 x h2.
    pub y: ComplexMatrix,
    /// Spectral norm of A - Z Dc.
    pub residual_a: f64,
    /// Spectral norm of D - Dc* Y.
    pub residual_d: f64,
}

/// The admissible set of a scalar corner: a closed disk.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct FeasibilityDisk {
    #[serde(with = "crate::report::complex")]
    pub center: Complex64,
    pub radius: f64,
}

impl FeasibilityDisk {
    /// Whether `b` completes the blocks to a contraction, up to cert_tol.
    pub fn contains(&self, b: Complex64, cert_tol: f64) -> bool {
        (b - self.center).norm() <= self.radius + cert_tol
    }
}

/// Solves the factor equations by pseudo-inverse with rank thresholding and
/// verifies the residuals. The defect of C is legitimately singular in the
/// interesting cases, so a direct solve would be wrong.
///
/// A consistent solve can carry a residual well above solve_tol: cutting a
/// defect direction whose computed singular value sits at or below the rank
/// threshold tau discards block mass that the contraction inequality bounds
/// by the direction's true singular value, and that true value can reach
/// sqrt(tau^2 + E) with E the eigensolver's absolute noise (about m * eps).
/// The residual gate is therefore max(solve_tol, sqrt(m (tau^2 + m eps)));
/// anything past it signals a genuinely inconsistent factorization.
fn residual_gate(dim: usize, tau: f64, tol: &Tolerances) -> f64 {
    let m = dim as f64;
    tol.solve_tol.max((m * (tau * tau + m * f64::EPSILON)).sqrt())
}

pub fn solve_factors(blocks: &ParrottBlocks, tol: &Tolerances) -> Result<FactorPair> {
    let (dc, dc_pinv, tau_c) = linalg::defect_root_and_pinv(blocks.c(), tol)?;
    let z = blocks.a().mul(&dc_pinv)?;
    let residual_a = spectral_norm(&blocks.a().sub(&z.mul(&dc)?)?);

    let c_adj = blocks.c().adjoint();
    let (dcs, dcs_pinv, tau_cs) = linalg::defect_root_and_pinv(&c_adj, tol)?;
    let y = dcs_pinv.mul(blocks.d())?;
    let residual_d = spectral_norm(&blocks.d().sub(&dcs.mul(&y)?)?);

    if residual_a > residual_gate(dc.rows(), tau_c, tol)
        || residual_d > residual_gate(dcs.rows(), tau_cs, tol)
    {
        return Err(Error::InconsistentFactorization {
            residual_a,
            residual_d,
        });
    }
    Ok(FactorPair {
        z,
        y,
        residual_a,
        residual_d,
    })
}

/// Center -Z C* Y and radius sqrt((1 - ZZ*)(1 - Y*Y)) of the admissible disk
/// for a scalar corner.
pub fn scalar_feasibility_disk(blocks: &ParrottBlocks, tol: &Tolerances) -> Result<FeasibilityDisk> {
    if blocks.corner_rows() != 1 || blocks.corner_cols() != 1 {
        return Err(Error::NonScalarCorner {
            rows: blocks.corner_rows(),
            cols: blocks.corner_cols(),
        });
    }
    let factors = solve_factors(blocks, tol)?;
    let zz = factors.z.frobenius_norm().powi(2);
    let yy = factors.y.frobenius_norm().powi(2);
    let center = -(factors
        .z
        .mul(&blocks.c().adjoint())?
        .mul(&factors.y)?[(0, 0)]);
    // 1 - ZZ* and 1 - Y*Y are defect eigenvalues of the factors; when one
    // saturates, its computed value is eigensolver noise that the square
    // root would amplify to sqrt(eps). Round it to the exact degeneracy,
    // the same clamping convention the defect operator uses.
    let saturated = |s: f64| if s.abs() <= tol.eig_tol { 0.0 } else { s.max(0.0) };
    let s_z = saturated(1.0 - zz);
    let s_y = saturated(1.0 - yy);
    Ok(FeasibilityDisk {
        center,
        radius: (s_z * s_y).sqrt(),
    })
}

/// The completion with the free contraction parameter set to zero,
/// B = -Z C* Y, for corners of any shape. The assembled matrix is certified
/// by SVD before the corner is returned, never trusted from the formula.
pub fn central_completion(blocks: &ParrottBlocks, tol: &Tolerances) -> Result<ComplexMatrix> {
    let factors = solve_factors(blocks, tol)?;
    let b = factors
        .z
        .mul(&blocks.c().adjoint())?
        .mul(&factors.y)?
        .scale(Complex64::new(-1.0, 0.0));
    let norm = spectral_norm(&assemble(blocks, &b)?);
    if norm > 1.0 + tol.cert_tol {
        return Err(Error::CompletionNotCertified { norm });
    }
    Ok(b)
}

/// The (k1+k2) x (h1+h2) block matrix [A B; C D].
pub fn assemble(blocks: &ParrottBlocks, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if b.rows() != blocks.corner_rows() || b.cols() != blocks.corner_cols() {
        return Err(Error::dim(format!(
            "corner must be {}x{}, got {}x{}",
            blocks.corner_rows(),
            blocks.corner_cols(),
            b.rows(),
            b.cols()
        )));
    }
    ComplexMatrix::block_2x2(blocks.a(), b, blocks.c(), blocks.d())
}
