//! The main event: hand the solver nothing but the diagonal and the
//! prescribed superdiagonal, let it fill every remaining entry through
//! collapsing completion disks, and compare against the closed form. Then
//! nudge single entries and watch contractivity fail every time.
//!
//! ```bash
//! cargo run -p contractive --example unique_completion
//! ```

use contractive::sampling::{sample_omegas, SplitMix64};
use contractive::verifier::{all_perturbations_violate, uniqueness_sweep};
use contractive::{ModelParameters, Tolerances};

fn main() {
    let tol = Tolerances::default();
    let mut rng = SplitMix64::new(2024);
    let params = ModelParameters::new(sample_omegas(&mut rng, 6, 0.8)).expect("valid draw");
    println!("6 random disk points, moduli up to {:.3}", params.max_modulus());

    let report = uniqueness_sweep(&params, 1e-2, 8, &tol).expect("reconstruction succeeds");
    println!(
        "reconstructed from the band alone: max disk radius {:.3e}, deviation from the closed form {:.3e}",
        report.max_disk_radius, report.max_model_deviation
    );

    let violations = report
        .perturbations
        .iter()
        .filter(|r| r.resulting_norm > 1.0 + tol.cert_tol)
        .count();
    println!(
        "perturbation sweep: {}/{} single-entry nudges of size 1e-2 break contractivity",
        violations,
        report.perturbations.len()
    );
    assert!(all_perturbations_violate(&report, &tol));

    let worst = report
        .perturbations
        .iter()
        .min_by(|a, b| a.resulting_norm.partial_cmp(&b.resulting_norm).unwrap())
        .unwrap();
    println!(
        "closest call: entry ({}, {}) at phase {:.2} reached norm {:.9}",
        worst.row, worst.col, worst.phase, worst.resulting_norm
    );
}
