//! Error type shared by every module.

use num_complex::Complex64;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("entry buffer holds {got} values, expected {rows}x{cols} = {expected}")]
    ShapeMismatch {
        rows: usize,
        cols: usize,
        expected: usize,
        got: usize,
    },

    #[error("matrix dimensions must be positive, got {rows}x{cols}")]
    EmptyDimensions { rows: usize, cols: usize },

    #[error("non-finite entry at row {row}, column {col}")]
    NonFinite { row: usize, col: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("|omega_{index}| = {modulus} lies outside the open unit disk")]
    OutsideDisk { index: usize, modulus: f64 },

    #[error("evaluation at z = {z} hits a pole")]
    Pole { z: Complex64 },

    #[error("not a contraction: Id - T*T has eigenvalue {min_eigenvalue}")]
    NotAContraction { min_eigenvalue: f64 },

    #[error("resolvent Id - conj(w)T is numerically singular: smallest singular value {sigma_min}")]
    SingularResolvent { sigma_min: f64 },

    #[error("solve residual {residual} exceeds bound {bound}")]
    SolveResidual { residual: f64, bound: f64 },

    #[error(
        "inconsistent factorization: residuals {residual_a} (A = Z Dc) and {residual_d} \
         (D = Dc* Y); the column/row block may not be a contraction, or the rank \
         threshold cut a needed defect direction"
    )]
    InconsistentFactorization { residual_a: f64, residual_d: f64 },

    #[error("block {name} has norm {norm}, above the contraction bound")]
    BlockNotContractive { name: &'static str, norm: f64 },

    #[error("corner block must be scalar, got {rows}x{cols}")]
    NonScalarCorner { rows: usize, cols: usize },

    #[error("assembled completion has norm {norm} > 1; the factorization is unreliable")]
    CompletionNotCertified { norm: f64 },

    #[error(
        "non-unique completion detected at entry ({row}, {col}): disk radius {radius} \
         exceeds threshold {threshold}"
    )]
    NonUniqueCompletion {
        row: usize,
        col: usize,
        radius: f64,
        threshold: f64,
    },

    #[error("basis index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("{0}")]
    InvalidInput(String),
}

impl Error {
    pub(crate) fn dim(msg: impl Into<String>) -> Self {
        Error::Dimension(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
