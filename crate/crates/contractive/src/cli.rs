//! Command-line interface: JSON in, JSON report out, deterministic under a
//! fixed seed. Exit code 0 means every contract checked by the subcommand
//! held, 1 means a contract was violated, 2 means the input was unusable.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use clap::{Parser, Subcommand};
use num_complex::Complex64;

use crate::error::Error;
use crate::linalg::{is_contraction, spectral_norm};
use crate::matrix::Tolerances;
use crate::model::{build_model_matrix, ModelParameters};
use crate::moebius::{moebius_matrix, resolvent_condition, MoebiusParam};
use crate::parrott::{assemble, scalar_feasibility_disk, solve_factors, ParrottBlocks};
use crate::report::{
    BlocksDocument, CheckReport, CompleteReport, MatrixDocument, OmegasDocument, ReportHeader,
    RngInfo, TmwVerifyReport, TruncateReport, VerifyTheoremReport,
};
use crate::sampling::{derive_seed, sample_omegas, OmegaRule, SplitMix64};
use crate::space::{tmw_verify, QuadratureGrid};
use crate::verifier::{
    all_perturbations_violate, truncation_check, truncation_contract_holds, unique_completion_solver,
    uniqueness_sweep, Tamper,
};

#[derive(Parser, Debug)]
#[command(name = "contractive", version, about = "Model matrices, contraction certificates, and contractive completions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Master seed for randomized workloads.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Write the JSON document here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Override the Hermitian eigenvalue cutoff.
    #[arg(long, global = true)]
    pub eig_tol: Option<f64>,

    /// Override the relative rank cutoff.
    #[arg(long, global = true)]
    pub rank_tol: Option<f64>,

    /// Override the contraction margin.
    #[arg(long, global = true)]
    pub cert_tol: Option<f64>,

    /// Override the solve residual bound.
    #[arg(long, global = true)]
    pub solve_tol: Option<f64>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build the model matrix from a JSON list of disk points.
    Generate {
        /// Path to {"omegas": [[re, im], ...]}.
        #[arg(long)]
        omegas: PathBuf,
    },
    /// Certify whether a JSON matrix is a contraction.
    Check {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Complete a partially specified 2x2 block matrix to a contraction.
    Complete {
        /// Path to {"A": ..., "C": ..., "D": ...} in the matrix schema.
        #[arg(long)]
        blocks: PathBuf,
    },
    /// Reconstruct model matrices from their bands over seeded random draws
    /// and certify that entry perturbations break contractivity.
    VerifyTheorem {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 50)]
        draws: usize,
        #[arg(long, default_value_t = 1e-2)]
        epsilon: f64,
        #[arg(long, default_value_t = 8)]
        phases: usize,
        /// Draw radius for the disk points.
        #[arg(long, default_value_t = 0.8)]
        radius: f64,
    },
    /// Cross-validate the model matrix entries against circle quadrature.
    TmwVerify {
        #[arg(long)]
        omegas: PathBuf,
        #[arg(long)]
        nodes: usize,
        /// Defect bound for the pass verdict.
        #[arg(long, default_value_t = 1e-9)]
        quad_tol: f64,
    },
    /// Apply the Moebius transform (omega - T)(Id - conj(omega) T)^{-1}.
    Moebius {
        /// The parameter as a complex literal, e.g. 0.5, -0.3+0.2i, 0.4i.
        #[arg(long)]
        omega: String,
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Truncation experiment over a deterministic point sequence.
    Truncate {
        /// "constant:re\[,im\]" or "geometric:q" (omega_k = 1 - q^k).
        #[arg(long)]
        omegas_rule: String,
        #[arg(long)]
        n_max: usize,
        /// Optional tampered entry "i,j,re,im" (1-based position).
        #[arg(long)]
        tamper: Option<String>,
    },
}

#[derive(Clone, Copy, PartialEq, PartialOrd)]
enum LogLevel {
    Error = 0,
    Info = 1,
    Debug = 2,
}

fn log_level() -> LogLevel {
    static LEVEL: OnceLock<LogLevel> = OnceLock::new();
    *LEVEL.get_or_init(|| match std::env::var("CONTRACTIVE_LOG").as_deref() {
        Ok("debug") => LogLevel::Debug,
        Ok("info") => LogLevel::Info,
        _ => LogLevel::Error,
    })
}

fn log_info(msg: &str) {
    if log_level() >= LogLevel::Info {
        eprintln!("info: {msg}");
    }
}

fn log_debug(msg: &str) {
    if log_level() >= LogLevel::Debug {
        eprintln!("debug: {msg}");
    }
}

struct Outcome {
    text: String,
    pass: bool,
}

/// Dispatches a parsed invocation and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let tol = match overridden_tolerances(&cli) {
        Ok(t) => t,
        Err(e) => return input_error(&e),
    };
    let out = cli.out.clone();
    match execute(cli, &tol) {
        Ok(outcome) => {
            if let Err(e) = emit(&outcome.text, out.as_deref()) {
                return input_error(&e);
            }
            if outcome.pass {
                0
            } else {
                1
            }
        }
        Err(e) => input_error(&e),
    }
}

fn input_error(e: &Error) -> i32 {
    eprintln!("error: {e}");
    2
}

fn overridden_tolerances(cli: &Cli) -> Result<Tolerances, Error> {
    let mut tol = Tolerances::default();
    if let Some(v) = cli.eig_tol {
        tol.eig_tol = v;
    }
    if let Some(v) = cli.rank_tol {
        tol.rank_tol = v;
    }
    if let Some(v) = cli.cert_tol {
        tol.cert_tol = v;
    }
    if let Some(v) = cli.solve_tol {
        tol.solve_tol = v;
    }
    tol.validate()?;
    Ok(tol)
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Error::invalid(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{}", text.trim_end());
            Ok(())
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| {
        Error::invalid(format!(
            "{}: line {}, column {}: {e}",
            path.display(),
            e.line(),
            e.column()
        ))
    })
}

fn to_pretty<T: serde::Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports always serialize");
    text.push('\n');
    text
}

fn execute(cli: Cli, tol: &Tolerances) -> Result<Outcome, Error> {
    let seed = cli.seed;
    match cli.command {
        Command::Generate { omegas } => {
            let doc: OmegasDocument = read_json(&omegas)?;
            let points = doc.into_points()?;
            log_info(&format!("loaded {} disk points", points.len()));
            let params = ModelParameters::new(points)?;
            let matrix = build_model_matrix(&params);
            Ok(Outcome {
                text: to_pretty(&MatrixDocument::from_matrix(&matrix)),
                pass: true,
            })
        }
        Command::Check { matrix } => {
            let doc: MatrixDocument = read_json(&matrix)?;
            let m = doc.into_matrix()?;
            let cert = is_contraction(&m, tol);
            let pass = cert.is_contraction();
            let report = CheckReport {
                header: ReportHeader::new(seed, *tol),
                verdict: cert.verdict,
                norm: cert.norm,
                defect_rank: cert.defect_rank,
                witness: cert.witness,
            };
            Ok(Outcome {
                text: to_pretty(&report),
                pass,
            })
        }
        Command::Complete { blocks } => {
            let doc: BlocksDocument = read_json(&blocks)?;
            let blocks = ParrottBlocks::new(doc.a, doc.c, doc.d, tol)?;
            let factors = solve_factors(&blocks, tol)?;
            let b = factors
                .z
                .mul(&blocks.c().adjoint())?
                .mul(&factors.y)?
                .scale(Complex64::new(-1.0, 0.0));
            let assembled_norm = spectral_norm(&assemble(&blocks, &b)?);
            let disk = (blocks.corner_rows() == 1 && blocks.corner_cols() == 1)
                .then(|| scalar_feasibility_disk(&blocks, tol))
                .transpose()?;
            let pass = assembled_norm <= 1.0 + tol.cert_tol;
            let report = CompleteReport {
                header: ReportHeader::new(seed, *tol),
                b_central: b,
                disk,
                assembled_norm,
            };
            Ok(Outcome {
                text: to_pretty(&report),
                pass,
            })
        }
        Command::VerifyTheorem {
            n,
            draws,
            epsilon,
            phases,
            radius,
        } => {
            if n < 2 {
                return Err(Error::invalid("verify-theorem needs n >= 2"));
            }
            if !(radius > 0.0 && radius < 1.0) {
                return Err(Error::invalid(format!(
                    "draw radius must sit in (0, 1), got {radius}"
                )));
            }
            let mut reports = Vec::with_capacity(draws);
            let mut all_pass = true;
            for draw in 0..draws {
                let mut rng = SplitMix64::new(derive_seed(seed, draw as u64));
                let points = sample_omegas(&mut rng, n, radius);
                let params = ModelParameters::new(points)?;
                let report = if n >= 3 {
                    uniqueness_sweep(&params, epsilon, phases, tol)?
                } else {
                    unique_completion_solver(&params, tol)?
                };
                let draw_pass = report.near_boundary
                    || (report.max_disk_radius <= 1e-8
                        && report.max_model_deviation <= 1e-8
                        && all_perturbations_violate(&report, tol));
                log_debug(&format!(
                    "draw {draw}: radius {:.3e}, deviation {:.3e}, pass {draw_pass}",
                    report.max_disk_radius, report.max_model_deviation
                ));
                all_pass &= draw_pass;
                reports.push(report);
            }
            let report = VerifyTheoremReport {
                header: ReportHeader::new(seed, *tol),
                rng: RngInfo::default(),
                n,
                draws,
                epsilon,
                phases,
                radius,
                reports,
                all_pass,
            };
            Ok(Outcome {
                text: to_pretty(&report),
                pass: report.all_pass,
            })
        }
        Command::TmwVerify {
            omegas,
            nodes,
            quad_tol,
        } => {
            let doc: OmegasDocument = read_json(&omegas)?;
            let params = ModelParameters::new(doc.into_points()?)?;
            let grid = QuadratureGrid::new(nodes)?;
            let report = tmw_verify(&params, &grid)?;
            let pass =
                report.low_accuracy || (report.gram_defect <= quad_tol && report.entry_defect <= quad_tol);
            let doc = TmwVerifyReport {
                header: ReportHeader::new(seed, *tol),
                gram_defect: report.gram_defect,
                entry_defect: report.entry_defect,
                n_nodes: report.n_nodes,
                max_omega: report.max_omega,
                low_accuracy: report.low_accuracy,
                pass,
            };
            Ok(Outcome {
                text: to_pretty(&doc),
                pass,
            })
        }
        Command::Moebius { omega, matrix } => {
            let omega = parse_complex(&omega).map_err(Error::invalid)?;
            let param = MoebiusParam::new(omega)?;
            let doc: MatrixDocument = read_json(&matrix)?;
            let m = doc.into_matrix()?;
            let norm = spectral_norm(&m);
            if omega.norm() > 1.0 - 1e-3 || norm > 1.0 - 1e-3 {
                let kappa = resolvent_condition(&param, &m)?;
                log_info(&format!(
                    "near-boundary input (|omega| = {:.6}, norm = {norm:.6}): resolvent condition {kappa:.3e}",
                    omega.norm()
                ));
            }
            let transformed = moebius_matrix(&param, &m, tol)?;
            Ok(Outcome {
                text: to_pretty(&MatrixDocument::from_matrix(&transformed)),
                pass: true,
            })
        }
        Command::Truncate {
            omegas_rule,
            n_max,
            tamper,
        } => {
            let rule = OmegaRule::parse(&omegas_rule).map_err(Error::invalid)?;
            let tamper = tamper.map(|t| parse_tamper(&t)).transpose()?;
            let points = rule.sample(n_max);
            let report = truncation_check(&points, tamper, tol)?;
            let pass = truncation_contract_holds(&report, tol);
            let doc = TruncateReport {
                header: ReportHeader::new(seed, *tol),
                rule: rule.describe(),
                report,
                pass,
            };
            Ok(Outcome {
                text: to_pretty(&doc),
                pass,
            })
        }
    }
}

/// Parses complex literals: "0.5", "-0.3+0.2i", "0.4i", "-i", "1e-3-2e-4i".
pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty complex literal".into());
    }
    if let Some(body) = s.strip_suffix(['i', 'I']) {
        // find the sign separating real and imaginary parts, skipping the
        // leading sign and exponent signs
        let bytes = body.as_bytes();
        let mut split = None;
        for (idx, &b) in bytes.iter().enumerate().skip(1) {
            if (b == b'+' || b == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
                split = Some(idx);
            }
        }
        match split {
            Some(idx) => {
                let re: f64 = body[..idx]
                    .parse()
                    .map_err(|e| format!("bad real part in \"{text}\": {e}"))?;
                let im_text = &body[idx..];
                let im: f64 = match im_text {
                    "+" => 1.0,
                    "-" => -1.0,
                    _ => im_text
                        .parse()
                        .map_err(|e| format!("bad imaginary part in \"{text}\": {e}"))?,
                };
                Ok(Complex64::new(re, im))
            }
            None => {
                let im: f64 = match body {
                    "" | "+" => 1.0,
                    "-" => -1.0,
                    _ => body
                        .parse()
                        .map_err(|e| format!("bad imaginary part in \"{text}\": {e}"))?,
                };
                Ok(Complex64::new(0.0, im))
            }
        }
    } else {
        let re: f64 = s
            .parse()
            .map_err(|e| format!("bad complex literal \"{text}\": {e}"))?;
        Ok(Complex64::new(re, 0.0))
    }
}

fn parse_tamper(text: &str) -> Result<Tamper, Error> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 4 {
        return Err(Error::invalid(format!(
            "tamper must be i,j,re,im; got \"{text}\""
        )));
    }
    let row: usize = parts[0]
        .trim()
        .parse()
        .map_err(|e| Error::invalid(format!("bad tamper row: {e}")))?;
    let col: usize = parts[1]
        .trim()
        .parse()
        .map_err(|e| Error::invalid(format!("bad tamper column: {e}")))?;
    let re: f64 = parts[2]
        .trim()
        .parse()
        .map_err(|e| Error::invalid(format!("bad tamper delta: {e}")))?;
    let im: f64 = parts[3]
        .trim()
        .parse()
        .map_err(|e| Error::invalid(format!("bad tamper delta: {e}")))?;
    Ok(Tamper {
        row,
        col,
        delta: Complex64::new(re, im),
    })
}
