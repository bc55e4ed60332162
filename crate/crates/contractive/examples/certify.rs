//! The 2x2 contractivity boundary: with diagonal (w1, w2) fixed, the corner
//! alpha is admissible exactly up to sqrt((1-|w1|^2)(1-|w2|^2)). Scan across
//! the boundary and watch the verdict flip.
//!
//! ```bash
//! cargo run -p contractive --example certify
//! ```

use contractive::{is_contraction, Complex64, ComplexMatrix, Tolerances};

fn main() {
    let tol = Tolerances::default();
    let (w1, w2) = (0.5f64, 0.5f64);
    let boundary = ((1.0 - w1 * w1) * (1.0 - w2 * w2)).sqrt();
    println!("diagonal ({w1}, {w2}); admissible |alpha| up to {boundary}");

    for factor in [0.5, 0.9, 0.99, 1.0, 1.01, 1.1, 1.5] {
        let alpha = factor * boundary;
        let m = ComplexMatrix::new(
            2,
            2,
            vec![
                Complex64::new(w1, 0.0),
                Complex64::new(alpha, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(w2, 0.0),
            ],
        )
        .expect("finite entries");
        let cert = is_contraction(&m, &tol);
        println!(
            "alpha = {alpha:.6} ({factor:>4}x): verdict {:?}, norm {:.12}{}",
            cert.verdict,
            cert.norm,
            if cert.witness.is_some() {
                "  (witness vector available)"
            } else {
                ""
            }
        );
    }
}
