//! JSON document types for the command-line interface and fixtures, plus the
//! serde adapters that render complex numbers as [re, im] pairs.
//!
//! Numbers go through serde_json's shortest-round-trip formatting, so every
//! emitted decimal parses back to the identical double and identical inputs
//! produce byte-identical reports.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Verdict;
use crate::matrix::{ComplexMatrix, Tolerances};
use crate::parrott::FeasibilityDisk;
use crate::verifier::{TruncationReport, UniquenessReport};

pub const SCHEMA_VERSION: &str = "v1";

/// Serde adapter: one complex number as [re, im].
pub mod complex {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        value: &Complex64,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        (value.re, value.im).serialize(serializer)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Complex64, D::Error> {
        let (re, im) = <(f64, f64)>::deserialize(deserializer)?;
        Ok(Complex64::new(re, im))
    }
}

/// Serde adapter: a vector of complex numbers as [[re, im], ...].
pub mod complex_vec {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        value: &[Complex64],
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        value
            .iter()
            .map(|c| (c.re, c.im))
            .collect::<Vec<_>>()
            .serialize(serializer)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Vec<Complex64>, D::Error> {
        let pairs = Vec::<(f64, f64)>::deserialize(deserializer)?;
        Ok(pairs
            .into_iter()
            .map(|(re, im)| Complex64::new(re, im))
            .collect())
    }
}

/// Serde adapter: optional vector of complex numbers.
pub mod complex_vec_opt {
    use super::*;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(
        value: &Option<Vec<Complex64>>,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        value
            .as_ref()
            .map(|v| v.iter().map(|c| (c.re, c.im)).collect::<Vec<_>>())
            .serialize(serializer)
    }
}

/// Standalone matrix document: the fixture and interchange schema.
#[derive(Serialize, Deserialize)]
pub struct MatrixDocument {
    #[serde(default = "schema_default")]
    pub schema: String,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(f64, f64)>,
}

fn schema_default() -> String {
    SCHEMA_VERSION.to_string()
}

impl MatrixDocument {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        Self {
            schema: schema_default(),
            rows: m.rows(),
            cols: m.cols(),
            entries: m.entries().iter().map(|e| (e.re, e.im)).collect(),
        }
    }

    pub fn into_matrix(self) -> Result<ComplexMatrix> {
        check_schema(&self.schema)?;
        ComplexMatrix::new(
            self.rows,
            self.cols,
            self.entries
                .into_iter()
                .map(|(re, im)| Complex64::new(re, im))
                .collect(),
        )
    }
}

fn check_schema(schema: &str) -> Result<()> {
    if schema != SCHEMA_VERSION {
        return Err(Error::invalid(format!(
            "unsupported schema \"{schema}\", expected \"{SCHEMA_VERSION}\""
        )));
    }
    Ok(())
}

/// Disk-point list document: {"omegas": [[re, im], ...]}.
#[derive(Serialize, Deserialize)]
pub struct OmegasDocument {
    #[serde(default = "schema_default")]
    pub schema: String,
    pub omegas: Vec<(f64, f64)>,
}

impl OmegasDocument {
    pub fn from_points(points: &[Complex64]) -> Self {
        Self {
            schema: schema_default(),
            omegas: points.iter().map(|c| (c.re, c.im)).collect(),
        }
    }

    pub fn into_points(self) -> Result<Vec<Complex64>> {
        check_schema(&self.schema)?;
        Ok(self
            .omegas
            .into_iter()
            .map(|(re, im)| Complex64::new(re, im))
            .collect())
    }
}

/// Blocks document for completion problems: A, C, D in the matrix schema.
#[derive(Serialize, Deserialize)]
pub struct BlocksDocument {
    #[serde(default = "schema_default")]
    pub schema: String,
    #[serde(rename = "A")]
    pub a: ComplexMatrix,
    #[serde(rename = "C")]
    pub c: ComplexMatrix,
    #[serde(rename = "D")]
    pub d: ComplexMatrix,
}

/// Common reproducibility header embedded in every report.
#[derive(Serialize)]
pub struct ReportHeader {
    pub schema: &'static str,
    pub version: &'static str,
    pub seed: u64,
    pub tolerances: Tolerances,
}

impl ReportHeader {
    pub fn new(seed: u64, tolerances: Tolerances) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            version: env!("CARGO_PKG_VERSION"),
            seed,
            tolerances,
        }
    }
}

/// Generator identification recorded wherever randomness is used, so another
/// implementation can reproduce the draws.
#[derive(Serialize)]
pub struct RngInfo {
    pub generator: &'static str,
    pub increment: &'static str,
    pub mix_1: &'static str,
    pub mix_2: &'static str,
}

impl Default for RngInfo {
    fn default() -> Self {
        Self {
            generator: crate::sampling::GENERATOR_NAME,
            increment: "0x9e3779b97f4a7c15",
            mix_1: "0xbf58476d1ce4e5b9",
            mix_2: "0x94d049bb133111eb",
        }
    }
}

#[derive(Serialize)]
pub struct CheckReport {
    #[serde(flatten)]
    pub header: ReportHeader,
    pub verdict: Verdict,
    pub norm: f64,
    pub defect_rank: usize,
    #[serde(with = "complex_vec_opt")]
    pub witness: Option<Vec<Complex64>>,
}

#[derive(Serialize)]
pub struct CompleteReport {
    #[serde(flatten)]
    pub header: ReportHeader,
    #[serde(rename = "B_central")]
    pub b_central: ComplexMatrix,
    pub disk: Option<FeasibilityDisk>,
    pub assembled_norm: f64,
}

#[derive(Serialize)]
pub struct TmwVerifyReport {
    #[serde(flatten)]
    pub header: ReportHeader,
    pub gram_defect: f64,
    pub entry_defect: f64,
    #[serde(rename = "N")]
    pub n_nodes: usize,
    pub max_omega: f64,
    pub low_accuracy: bool,
    pub pass: bool,
}

#[derive(Serialize)]
pub struct VerifyTheoremReport {
    #[serde(flatten)]
    pub header: ReportHeader,
    pub rng: RngInfo,
    pub n: usize,
    pub draws: usize,
    pub epsilon: f64,
    pub phases: usize,
    pub radius: f64,
    pub reports: Vec<UniquenessReport>,
    pub all_pass: bool,
}

#[derive(Serialize)]
pub struct TruncateReport {
    #[serde(flatten)]
    pub header: ReportHeader,
    pub rule: String,
    #[serde(flatten)]
    pub report: TruncationReport,
    pub pass: bool,
}
