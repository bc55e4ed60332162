//! Model matrices: the upper-triangular matrix of the compressed shift in the
//! Takenaka-Malmquist-Walsh basis, its prescribed band, and the class of
//! contractions with rank-one defect it represents.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, ContractionCertificate};
use crate::matrix::{ComplexMatrix, Tolerances};

/// Strict-interior margin for disk membership checks.
pub const DISK_MARGIN: f64 = 1e-14;

/// Ordered points of the open unit disk: the eigenvalues of the model matrix
/// and the zeros of the associated Blaschke product. Repeated values are
/// allowed (multiplicity counts).
#[derive(Clone, Debug, PartialEq)]
pub struct ModelParameters {
    omegas: Vec<Complex64>,
}

impl ModelParameters {
    /// Validates that every point lies strictly inside the unit disk
    /// (with margin [`DISK_MARGIN`]) and that there is at least one.
    pub fn new(omegas: Vec<Complex64>) -> Result<Self> {
        if omegas.is_empty() {
            return Err(Error::invalid("at least one disk point is required"));
        }
        for (k, w) in omegas.iter().enumerate() {
            if !w.re.is_finite() || !w.im.is_finite() {
                return Err(Error::NonFinite { row: k, col: 0 });
            }
            let modulus = w.norm();
            if modulus >= 1.0 - DISK_MARGIN {
                return Err(Error::OutsideDisk {
                    index: k + 1,
                    modulus,
                });
            }
        }
        Ok(Self { omegas })
    }

    pub fn from_reals(omegas: &[f64]) -> Result<Self> {
        Self::new(omegas.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn len(&self) -> usize {
        self.omegas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omegas.is_empty()
    }

    pub fn omegas(&self) -> &[Complex64] {
        &self.omegas
    }

    /// s_k = sqrt(1 - |omega_k|^2), clamped against |omega| = 1 - ulp inputs.
    /// `k` is 0-based.
    pub fn defect_scalar(&self, k: usize) -> f64 {
        (1.0 - self.omegas[k].norm_sqr()).max(0.0).sqrt()
    }

    pub fn max_modulus(&self) -> f64 {
        self.omegas.iter().map(|w| w.norm()).fold(0.0, f64::max)
    }

    /// Parameters restricted to the first `n` points.
    pub fn truncated(&self, n: usize) -> Result<Self> {
        if n == 0 || n > self.omegas.len() {
            return Err(Error::invalid(format!(
                "truncation size {n} outside 1..={}",
                self.omegas.len()
            )));
        }
        Ok(Self {
            omegas: self.omegas[..n].to_vec(),
        })
    }
}

/// Diagonal and superdiagonal data that pins down the whole matrix.
#[derive(Clone, Debug, Serialize)]
pub struct PrescribedBand {
    #[serde(with = "crate::report::complex_vec")]
    pub diagonal: Vec<Complex64>,
    pub superdiagonal: Vec<f64>,
}

impl PrescribedBand {
    pub fn n(&self) -> usize {
        self.diagonal.len()
    }
}

/// Builds the n x n model matrix: omega_j on the diagonal and
/// prod_{k=i+1}^{j-1}(-conj(omega_k)) s_i s_j above it, zero below.
///
/// The empty product is 1, so the superdiagonal is s_i s_{i+1}. Products are
/// accumulated left to right; every factor has modulus below 1, so the only
/// rounding hazard is benign underflow to zero.
pub fn build_model_matrix(p: &ModelParameters) -> ComplexMatrix {
    let n = p.len();
    let s: Vec<f64> = (0..n).map(|k| p.defect_scalar(k)).collect();
    let mut m = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = p.omegas()[i];
        let mut running = Complex64::new(1.0, 0.0);
        for j in (i + 1)..n {
            m[(i, j)] = running * (s[i] * s[j]);
            running *= -p.omegas()[j].conj();
        }
    }
    m
}

/// The band every candidate matrix must carry: diagonal omega_i and
/// superdiagonal s_i s_{i+1}. Requires n >= 2.
pub fn prescribed_superdiagonal(p: &ModelParameters) -> Result<PrescribedBand> {
    let n = p.len();
    if n < 2 {
        return Err(Error::invalid(
            "a superdiagonal needs at least two diagonal entries",
        ));
    }
    let superdiagonal = (0..n - 1)
        .map(|i| p.defect_scalar(i) * p.defect_scalar(i + 1))
        .collect();
    Ok(PrescribedBand {
        diagonal: p.omegas().to_vec(),
        superdiagonal,
    })
}

/// Sub-verdicts behind a class membership decision: contraction, spectrum
/// strictly inside the disk, and rank-one defect.
#[derive(Clone, Debug, Serialize)]
pub struct SnClassReport {
    pub certificate: ContractionCertificate,
    pub spectral_radius: f64,
    pub eigenvalues_in_disk: bool,
    pub defect_rank: usize,
    pub is_member: bool,
}

/// Tests membership in the class of n x n contractions with all eigenvalues
/// in the open disk and rank-one defect: exactly the matrices unitarily
/// similar to a model matrix.
pub fn is_sn_class(a: &ComplexMatrix, tol: &Tolerances) -> Result<SnClassReport> {
    if !a.is_square() {
        return Err(Error::dim(format!(
            "class membership needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let certificate = linalg::is_contraction(a, tol);
    let spectral_radius = linalg::eigenvalues(a)?
        .iter()
        .map(|l| l.norm())
        .fold(0.0, f64::max);
    let eigenvalues_in_disk = spectral_radius < 1.0 - tol.rank_tol;
    let defect_rank = certificate.defect_rank;
    let is_member = certificate.is_contraction() && eigenvalues_in_disk && defect_rank == 1;
    Ok(SnClassReport {
        certificate,
        spectral_radius,
        eigenvalues_in_disk,
        defect_rank,
        is_member,
    })
}
