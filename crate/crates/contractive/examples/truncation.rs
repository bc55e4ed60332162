//! The infinite band, probed through finite windows: nested truncations of a
//! model band stay contractions with nondecreasing norms, while a single
//! tampered entry surfaces as a violation the moment a window contains it
//! and never recovers.
//!
//! ```bash
//! cargo run -p contractive --example truncation
//! ```

use contractive::sampling::OmegaRule;
use contractive::verifier::{truncation_check, Tamper};
use contractive::{Complex64, Tolerances};

fn main() {
    let tol = Tolerances::default();
    let rule = OmegaRule::parse("geometric:0.5").unwrap();
    let omegas = rule.sample(14);

    let clean = truncation_check(&omegas, None, &tol).unwrap();
    println!(
        "geometric sequence, convergence partial sum {:.6} (summable)",
        clean.blaschke_partial
    );
    println!("{:>4}  {:>18}  {:>18}", "n", "clean norm", "tampered norm");

    let tampered = truncation_check(
        &omegas,
        Some(Tamper {
            row: 2,
            col: 5,
            delta: Complex64::new(0.05, 0.0),
        }),
        &tol,
    )
    .unwrap();

    for ((n, clean_norm), tampered_norm) in clean
        .sizes
        .iter()
        .zip(&clean.norms)
        .zip(&tampered.norms)
    {
        let marker = if *tampered_norm > 1.0 + tol.cert_tol {
            "  <- violation"
        } else {
            ""
        };
        println!("{n:>4}  {clean_norm:>18.12}  {tampered_norm:>18.12}{marker}");
    }
    println!(
        "tampered entry (2, 5) first violates at window size {:?}",
        tampered.first_violation
    );
}
