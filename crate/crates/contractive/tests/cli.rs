//! End-to-end checks of the binary: schemas, exit codes, diagnostics, and
//! byte-level determinism. The binary is located through the environment
//! cargo sets for integration tests.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn exe() -> &'static str {
    env!("CARGO_BIN_EXE_contractive")
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(exe()).args(args).output().expect("spawn CLI")
}

fn run_json(args: &[&str]) -> (i32, serde_json::Value) {
    let out = run(args);
    let code = out.status.code().expect("exit code");
    let value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout was not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    });
    (code, value)
}

#[test]
fn generate_emits_the_upper_shift_for_two_zeros() {
    let omegas = fixture("two_zeros.json");
    let (code, doc) = run_json(&["generate", "--omegas", omegas.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(doc["schema"], "v1");
    assert_eq!(doc["rows"], 2);
    assert_eq!(doc["cols"], 2);
    assert_eq!(
        doc["entries"],
        serde_json::json!([[0.0, 0.0], [1.0, 0.0], [0.0, 0.0], [0.0, 0.0]])
    );
}

#[test]
fn check_certifies_the_equality_case_at_norm_one() {
    let matrix = fixture("m2_equality.json");
    let (code, doc) = run_json(&["check", "--matrix", matrix.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(doc["verdict"], "CONTRACTION");
    assert_eq!(doc["norm"], 1.0);
    assert_eq!(doc["defect_rank"], 1);
    assert_eq!(doc["witness"], serde_json::Value::Null);
    // reproducibility header
    assert_eq!(doc["schema"], "v1");
    assert_eq!(doc["seed"], 0);
    assert!(doc["tolerances"]["cert_tol"].is_number());
}

#[test]
fn check_flags_violations_with_exit_one_and_a_witness() {
    let matrix = fixture("expansion.json");
    let (code, doc) = run_json(&["check", "--matrix", matrix.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(doc["verdict"], "VIOLATION");
    assert!(doc["witness"].is_array());
}

#[test]
fn complete_reports_the_disk_and_central_corner() {
    let blocks = fixture("blocks_scalar.json");
    let (code, doc) = run_json(&["complete", "--blocks", blocks.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(doc["B_central"]["rows"], 1);
    let b = doc["B_central"]["entries"][0][0].as_f64().unwrap();
    assert!(b.abs() < 1e-12);
    let radius = doc["disk"]["radius"].as_f64().unwrap();
    assert!((radius - 0.75).abs() < 1e-12);
    assert!(doc["assembled_norm"].as_f64().unwrap() <= 1.0 + 1e-9);
}

#[test]
fn complete_with_a_wide_corner_omits_the_disk() {
    let blocks = fixture("blocks_wide.json");
    let (code, doc) = run_json(&["complete", "--blocks", blocks.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(doc["disk"], serde_json::Value::Null);
    assert_eq!(doc["B_central"]["rows"], 2);
    assert_eq!(doc["B_central"]["cols"], 2);
    assert!(doc["assembled_norm"].as_f64().unwrap() <= 1.0 + 1e-9);
}

#[test]
fn complete_rejects_non_contractive_blocks() {
    let dir = std::env::temp_dir().join("contractive-cli-blocks");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("expansive.json");
    std::fs::write(
        &path,
        r#"{"schema":"v1","A":{"rows":1,"cols":1,"entries":[[2.0,0.0]]},"C":{"rows":1,"cols":1,"entries":[[0.0,0.0]]},"D":{"rows":1,"cols":1,"entries":[[0.1,0.0]]}}"#,
    )
    .unwrap();
    let out = run(&["complete", "--blocks", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("contraction bound"));
}

#[test]
fn verify_theorem_passes_on_seeded_draws() {
    let (code, doc) = run_json(&[
        "verify-theorem",
        "--n",
        "4",
        "--draws",
        "5",
        "--seed",
        "7",
    ]);
    assert_eq!(code, 0);
    assert_eq!(doc["all_pass"], true);
    assert_eq!(doc["rng"]["generator"], "splitmix64");
    let reports = doc["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 5);
    for report in reports {
        assert!(report["max_disk_radius"].as_f64().unwrap() < 1e-8);
        assert!(report["max_model_deviation"].as_f64().unwrap() < 1e-8);
        // n = 4 has 3 free positions x 8 phases
        assert_eq!(report["perturbations"].as_array().unwrap().len(), 24);
    }
}

#[test]
fn tmw_verify_reports_tiny_defects() {
    let omegas = fixture("omegas_mixed.json");
    let (code, doc) = run_json(&[
        "tmw-verify",
        "--omegas",
        omegas.to_str().unwrap(),
        "--nodes",
        "512",
    ]);
    assert_eq!(code, 0);
    assert_eq!(doc["N"], 512);
    assert!(doc["gram_defect"].as_f64().unwrap() <= 1e-9);
    assert!(doc["entry_defect"].as_f64().unwrap() <= 1e-9);
    assert_eq!(doc["low_accuracy"], false);
}

#[test]
fn moebius_round_trips_through_two_applications() {
    let dir = std::env::temp_dir().join("contractive-cli-moebius");
    std::fs::create_dir_all(&dir).unwrap();
    let first = dir.join("once.json");
    let matrix = fixture("m2_equality.json");

    let out = run(&[
        "moebius",
        "--omega",
        "0.3-0.2i",
        "--matrix",
        matrix.to_str().unwrap(),
        "--out",
        first.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));

    let (code, twice) = run_json(&[
        "moebius",
        "--omega",
        "0.3-0.2i",
        "--matrix",
        first.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let original: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&matrix).unwrap()).unwrap();
    for (got, want) in twice["entries"]
        .as_array()
        .unwrap()
        .iter()
        .zip(original["entries"].as_array().unwrap())
    {
        for k in 0..2 {
            let g = got[k].as_f64().unwrap();
            let w = want[k].as_f64().unwrap();
            assert!((g - w).abs() < 1e-12, "{g} vs {w}");
        }
    }
}

#[test]
fn truncate_handles_clean_and_tampered_sequences() {
    let (code, doc) = run_json(&[
        "truncate",
        "--omegas-rule",
        "geometric:0.5",
        "--n-max",
        "12",
    ]);
    assert_eq!(code, 0);
    assert_eq!(doc["pass"], true);
    assert_eq!(doc["sizes"].as_array().unwrap().len(), 11);
    assert!(doc["blaschke_partial"].as_f64().unwrap() < 1.0);
    assert_eq!(doc["first_violation"], serde_json::Value::Null);

    let (code, doc) = run_json(&[
        "truncate",
        "--omegas-rule",
        "constant:0.5",
        "--n-max",
        "8",
        "--tamper",
        "1,3,0.05,0",
    ]);
    assert_eq!(code, 0, "expected violation is part of the contract");
    assert_eq!(doc["pass"], true);
    assert_eq!(doc["first_violation"], 3);

    // a tamper too small to violate breaks the tampered contract: exit 1
    let (code, doc) = run_json(&[
        "truncate",
        "--omegas-rule",
        "constant:0.5",
        "--n-max",
        "6",
        "--tamper",
        "1,3,1e-13,0",
    ]);
    assert_eq!(code, 1);
    assert_eq!(doc["pass"], false);
}

#[test]
fn malformed_json_exits_two_with_position() {
    let dir = std::env::temp_dir().join("contractive-cli-bad");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.json");
    std::fs::write(&path, "{\"omegas\": [[0.1,").unwrap();
    let out = run(&["generate", "--omegas", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("line"), "stderr: {stderr}");
    assert!(stderr.contains("column"), "stderr: {stderr}");
}

#[test]
fn schema_violations_exit_two_naming_the_field() {
    let dir = std::env::temp_dir().join("contractive-cli-schema");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("wrong.json");
    std::fs::write(&path, r#"{"schema":"v1","points":[[0.1,0.0]]}"#).unwrap();
    let out = run(&["generate", "--omegas", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("omegas"), "stderr: {stderr}");
}

#[test]
fn out_of_disk_points_exit_two() {
    let dir = std::env::temp_dir().join("contractive-cli-disk");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("boundary.json");
    std::fs::write(&path, r#"{"schema":"v1","omegas":[[1.0,0.0]]}"#).unwrap();
    let out = run(&["generate", "--omegas", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unit disk"));
}

#[test]
fn bad_tolerance_overrides_exit_two() {
    let matrix = fixture("m2_equality.json");
    let out = run(&[
        "check",
        "--matrix",
        matrix.to_str().unwrap(),
        "--cert-tol",
        "-1.0",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn identical_seeds_give_byte_identical_reports() {
    let dir = std::env::temp_dir().join("contractive-cli-det");
    std::fs::create_dir_all(&dir).unwrap();
    let a = dir.join("a.json");
    let b = dir.join("b.json");
    for path in [&a, &b] {
        let out = run(&[
            "verify-theorem",
            "--n",
            "3",
            "--draws",
            "4",
            "--seed",
            "42",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn log_env_var_writes_to_stderr_not_stdout() {
    let omegas = fixture("two_zeros.json");
    let out = Command::new(exe())
        .args(["generate", "--omegas", omegas.to_str().unwrap()])
        .env("CONTRACTIVE_LOG", "info")
        .output()
        .expect("spawn CLI");
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("info:"));
    // stdout still parses as the matrix document
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["rows"], 2);
}
