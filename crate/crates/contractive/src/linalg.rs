//! Spectral kernels on [`ComplexMatrix`]: operator norm, contraction
//! certificates, defect square roots, numerical rank, pseudo-inverse, and
//! resolvent solves. Decompositions are delegated to `faer`.

use faer::Mat;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, Tolerances};

fn to_faer(m: &ComplexMatrix) -> Mat<Complex64> {
    Mat::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)])
}

fn from_faer(m: &Mat<Complex64>) -> ComplexMatrix {
    ComplexMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

struct Svd {
    u: Mat<Complex64>,
    /// Singular values, descending.
    sigma: Vec<f64>,
    v: Mat<Complex64>,
}

/// Full SVD, A = U diag(sigma) V^H. Inputs are finite by construction, so a
/// convergence failure indicates a broken invariant and panics.
fn svd(m: &ComplexMatrix) -> Svd {
    let f = to_faer(m);
    let svd = f.svd().expect("SVD did not converge on finite input");
    let k = m.rows().min(m.cols());
    let sigma = (0..k).map(|i| svd.S()[i].re).collect();
    Svd {
        u: svd.U().to_owned(),
        sigma,
        v: svd.V().to_owned(),
    }
}

struct HermitianEigen {
    vectors: Mat<Complex64>,
    /// Eigenvalues, ascending.
    values: Vec<f64>,
}

/// Eigendecomposition of a Hermitian matrix, A = V diag(values) V^H.
fn hermitian_eigen(m: &ComplexMatrix) -> HermitianEigen {
    let f = to_faer(m);
    let evd = f
        .self_adjoint_eigen(faer::Side::Lower)
        .expect("Hermitian eigendecomposition did not converge on finite input");
    let values = (0..m.rows()).map(|i| evd.S()[i].re).collect();
    HermitianEigen {
        vectors: evd.U().to_owned(),
        values,
    }
}

/// Eigenvalues of a general square matrix, in no particular order.
pub fn eigenvalues(m: &ComplexMatrix) -> Result<Vec<Complex64>> {
    if !m.is_square() {
        return Err(Error::dim(format!(
            "eigenvalues need a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let f = to_faer(m);
    Ok(f.eigenvalues()
        .expect("eigenvalue computation did not converge on finite input"))
}

/// Largest singular value (spectral norm, the operator norm induced by the
/// Euclidean vector norm).
pub fn spectral_norm(m: &ComplexMatrix) -> f64 {
    svd(m).sigma.first().copied().unwrap_or(0.0)
}

/// All singular values, descending.
pub fn singular_values(m: &ComplexMatrix) -> Vec<f64> {
    svd(m).sigma
}

/// Outcome of a contraction check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// Norm at most 1 - cert_tol.
    #[serde(rename = "STRICT")]
    Strict,
    /// Norm within cert_tol of 1 (or below).
    #[serde(rename = "CONTRACTION")]
    Contraction,
    /// Norm above 1 + cert_tol.
    #[serde(rename = "VIOLATION")]
    Violation,
}

/// Verdict, the certified norm, the rank of Id - M*M, and (for violations) a
/// unit vector stretched beyond 1.
#[derive(Clone, Debug, Serialize)]
pub struct ContractionCertificate {
    pub verdict: Verdict,
    pub norm: f64,
    pub defect_rank: usize,
    #[serde(with = "crate::report::complex_vec_opt")]
    pub witness: Option<Vec<Complex64>>,
}

impl ContractionCertificate {
    pub fn is_contraction(&self) -> bool {
        self.verdict != Verdict::Violation
    }
}

/// Certifies whether `m` is a contraction.
///
/// The witness of a violation is the right singular vector of the largest
/// singular value, the cheapest exact certificate of `||Mx|| > 1`.
pub fn is_contraction(m: &ComplexMatrix, tol: &Tolerances) -> ContractionCertificate {
    let decomp = svd(m);
    let norm = decomp.sigma.first().copied().unwrap_or(0.0);
    let verdict = if norm <= 1.0 - tol.cert_tol {
        Verdict::Strict
    } else if norm <= 1.0 + tol.cert_tol {
        Verdict::Contraction
    } else {
        Verdict::Violation
    };
    let witness = (verdict == Verdict::Violation)
        .then(|| (0..m.cols()).map(|i| decomp.v[(i, 0)]).collect());
    let gram = defect_gram(m);
    ContractionCertificate {
        verdict,
        norm,
        defect_rank: numerical_rank(&gram, tol),
        witness,
    }
}

/// Id - M*M (size cols x cols), hermitized against rounding asymmetry.
pub fn defect_gram(m: &ComplexMatrix) -> ComplexMatrix {
    let gram = m.adjoint().mul(m).expect("adjoint product always conforms");
    let n = gram.rows();
    ComplexMatrix::from_fn(n, n, |i, j| {
        let h = (gram[(i, j)] + gram[(j, i)].conj()) * 0.5;
        if i == j {
            Complex64::new(1.0 - h.re, 0.0)
        } else {
            -h
        }
    })
}

/// Unique positive semi-definite square root of Id - T*T.
///
/// Eigenvalues of Id - T*T in [-eig_tol, 0) are clamped to zero; anything
/// below -eig_tol means T is not a contraction and is an error.
pub fn defect_operator(t: &ComplexMatrix, tol: &Tolerances) -> Result<ComplexMatrix> {
    let gram = defect_gram(t);
    let eig = hermitian_eigen(&gram);
    let min = eig.values.first().copied().unwrap_or(0.0);
    if min < -tol.eig_tol {
        return Err(Error::NotAContraction {
            min_eigenvalue: min,
        });
    }
    let n = gram.rows();
    let mut scaled = Mat::<Complex64>::zeros(n, n);
    for j in 0..n {
        let root = eig.values[j].max(0.0).sqrt();
        for i in 0..n {
            scaled[(i, j)] = eig.vectors[(i, j)] * root;
        }
    }
    let d = &scaled * eig.vectors.adjoint();
    // force exact Hermitian symmetry
    let d = from_faer(&d);
    Ok(ComplexMatrix::from_fn(n, n, |i, j| {
        (d[(i, j)] + d[(j, i)].conj()) * 0.5
    }))
}

/// PSD square root of Id - M*M together with its pseudo-inverse, both from a
/// single eigendecomposition of the defect Gram matrix. Sharing the eigenbasis
/// avoids squaring the rounding of near-zero defect directions, which is
/// where the completion problem lives. Also returns the rank threshold used,
/// since it bounds the residual a consistent factor solve can honestly carry.
pub(crate) fn defect_root_and_pinv(
    m: &ComplexMatrix,
    tol: &Tolerances,
) -> Result<(ComplexMatrix, ComplexMatrix, f64)> {
    let gram = defect_gram(m);
    let n = gram.rows();
    let eig = hermitian_eigen(&gram);
    let min = eig.values.first().copied().unwrap_or(0.0);
    // blocks are admitted with norm up to 1 + cert_tol, which shifts the
    // defect spectrum down by as much as 2 cert_tol; the negativity gate
    // must admit what block validation admitted
    if min < -(tol.eig_tol + 2.0 * tol.cert_tol) {
        return Err(Error::NotAContraction {
            min_eigenvalue: min,
        });
    }
    let roots: Vec<f64> = eig.values.iter().map(|&l| l.max(0.0).sqrt()).collect();
    let largest = roots.last().copied().unwrap_or(0.0);
    let threshold = tol.rank_tol * largest.max(1.0);
    let mut d = ComplexMatrix::zeros(n, n);
    let mut pinv = ComplexMatrix::zeros(n, n);
    for (k, &root) in roots.iter().enumerate() {
        let inv = if root > threshold { 1.0 / root } else { 0.0 };
        for i in 0..n {
            for j in 0..n {
                let outer = eig.vectors[(i, k)] * eig.vectors[(j, k)].conj();
                d[(i, j)] += outer * root;
                pinv[(i, j)] += outer * inv;
            }
        }
    }
    Ok((d, pinv, threshold))
}

fn rank_threshold(sigma: &[f64], tol: &Tolerances) -> f64 {
    let largest = sigma.first().copied().unwrap_or(0.0);
    tol.rank_tol * largest.max(1.0)
}

/// Number of singular values above `rank_tol * max(sigma_max, 1)`.
pub fn numerical_rank(h: &ComplexMatrix, tol: &Tolerances) -> usize {
    let sigma = svd(h).sigma;
    let threshold = rank_threshold(&sigma, tol);
    sigma.iter().filter(|&&s| s > threshold).count()
}

/// Moore-Penrose pseudo-inverse with singular values at or below the rank
/// threshold treated as zero.
pub fn pseudo_inverse(m: &ComplexMatrix, tol: &Tolerances) -> ComplexMatrix {
    let decomp = svd(m);
    let threshold = rank_threshold(&decomp.sigma, tol);
    let k = decomp.sigma.len();
    let mut scaled = Mat::<Complex64>::zeros(m.cols(), k);
    for j in 0..k {
        let inv = if decomp.sigma[j] > threshold {
            1.0 / decomp.sigma[j]
        } else {
            0.0
        };
        for i in 0..m.cols() {
            scaled[(i, j)] = decomp.v[(i, j)] * inv;
        }
    }
    let sub_u = decomp.u.submatrix(0, 0, m.rows(), k);
    let pinv = &scaled * sub_u.adjoint();
    from_faer(&pinv)
}

/// Solves (Id - conj(w) T) y = x for y, column by column.
///
/// Exactly upper-triangular systems are back-substituted so triangular
/// structure survives bit-for-bit; everything else goes through the SVD.
/// The smallest singular value of the system matrix gates singularity.
pub fn solve_resolvent(
    t: &ComplexMatrix,
    w: Complex64,
    x: &ComplexMatrix,
    tol: &Tolerances,
) -> Result<ComplexMatrix> {
    if !t.is_square() {
        return Err(Error::dim(format!(
            "resolvent needs a square matrix, got {}x{}",
            t.rows(),
            t.cols()
        )));
    }
    if x.rows() != t.rows() {
        return Err(Error::dim(format!(
            "right-hand side has {} rows, expected {}",
            x.rows(),
            t.rows()
        )));
    }
    let n = t.rows();
    let wc = w.conj();
    let system = ComplexMatrix::from_fn(n, n, |i, j| {
        let delta = if i == j {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        };
        delta - wc * t[(i, j)]
    });

    let decomp = svd(&system);
    let sigma_min = decomp.sigma.last().copied().unwrap_or(0.0);
    if sigma_min <= rank_threshold(&decomp.sigma, tol) {
        return Err(Error::SingularResolvent { sigma_min });
    }

    let y = if system.is_upper_triangular() {
        back_substitute(&system, x)
    } else {
        // y = V diag(1/sigma) U^H x
        let xf = to_faer(x);
        let ux = decomp.u.adjoint() * &xf;
        let mut scaled = Mat::<Complex64>::zeros(n, x.cols());
        for i in 0..n {
            for j in 0..x.cols() {
                scaled[(i, j)] = ux[(i, j)] * (1.0 / decomp.sigma[i]);
            }
        }
        from_faer(&(&decomp.v * &scaled))
    };

    let residual = system.mul(&y)?.sub(x)?.frobenius_norm();
    let bound = tol.solve_tol * x.frobenius_norm();
    if residual > bound {
        return Err(Error::SolveResidual { residual, bound });
    }
    Ok(y)
}

/// Back substitution for an upper-triangular system, one column at a time.
/// Exact zeros in the right-hand side tail stay exact zeros.
fn back_substitute(system: &ComplexMatrix, x: &ComplexMatrix) -> ComplexMatrix {
    let n = system.rows();
    let mut y = ComplexMatrix::zeros(n, x.cols());
    for col in 0..x.cols() {
        for i in (0..n).rev() {
            let mut acc = x[(i, col)];
            for k in (i + 1)..n {
                let yk = y[(k, col)];
                if yk != Complex64::new(0.0, 0.0) {
                    acc -= system[(i, k)] * yk;
                }
            }
            y[(i, col)] = if acc == Complex64::new(0.0, 0.0) {
                acc
            } else {
                acc / system[(i, i)]
            };
        }
    }
    y
}
