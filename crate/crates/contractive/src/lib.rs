//! Numerical operator theory around upper-triangular contractions with a
//! prescribed diagonal and superdiagonal.
//!
//! For points omega_1, ..., omega_n of the open unit disk, the crate builds
//! the model matrix of the compressed shift in the Takenaka-Malmquist-Walsh
//! basis, certifies contractivity, performs Parrott-style contractive
//! completions of 2x2 block matrices, and verifies constructively that the
//! model matrix is the unique contraction carrying its own diagonal and
//! superdiagonal: the admissible disk of every free entry collapses to a
//! point, and the reconstruction from the band alone reproduces the closed
//! form. Truncation experiments probe the same statement for infinite bands.
//!
//! Entry points:
//! - [`model::build_model_matrix`] and [`model::is_sn_class`] for the matrix
//!   and the class it lives in,
//! - [`linalg`] for norms, certificates, defect operators, and solves,
//! - [`space`] for Blaschke products, the orthonormal basis, and quadrature
//!   cross-validation,
//! - [`moebius`] for the disk automorphism calculus on matrices,
//! - [`parrott`] for factor solves, feasibility disks, and completions,
//! - [`verifier`] for the reconstruction, perturbation sweeps, and
//!   truncation experiments,
//! - [`cli`] for the `contractive` binary behind all of the above.
//!
//! The runnable examples under `examples/` walk one capability each.

pub mod cli;
pub mod error;
pub mod linalg;
pub mod matrix;
pub mod model;
pub mod moebius;
pub mod parrott;
pub mod report;
pub mod sampling;
pub mod space;
pub mod verifier;

pub use error::{Error, Result};
pub use linalg::{
    defect_operator, is_contraction, numerical_rank, pseudo_inverse, solve_resolvent,
    spectral_norm, ContractionCertificate, Verdict,
};
pub use matrix::{ComplexMatrix, Tolerances};
pub use model::{build_model_matrix, is_sn_class, prescribed_superdiagonal, ModelParameters};
pub use num_complex::Complex64;
