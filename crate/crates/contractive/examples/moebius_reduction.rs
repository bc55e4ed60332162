//! The reduction that powers the uniqueness proof: transform a model matrix
//! at its second eigenvalue, sending that eigenvalue to the origin while
//! contractivity and triangularity survive, then normalize superdiagonal
//! phases so the band comes back in prescribed form.
//!
//! ```bash
//! cargo run -p contractive --example moebius_reduction
//! ```

use contractive::moebius::{check_involution, moebius_matrix, moebius_scalar, MoebiusParam};
use contractive::verifier::phase_normalize;
use contractive::{build_model_matrix, spectral_norm, Complex64, ModelParameters, Tolerances};

fn main() {
    let tol = Tolerances::default();
    let points = vec![
        Complex64::new(0.25, 0.1),
        Complex64::new(0.4, -0.2),
        Complex64::new(-0.1, 0.3),
        Complex64::new(0.0, 0.5),
    ];
    let params = ModelParameters::new(points.clone()).unwrap();
    let t = build_model_matrix(&params);
    println!("starting norm {:.12}", spectral_norm(&t));

    let omega = points[1];
    let m = MoebiusParam::new(omega).unwrap();
    let transformed = moebius_matrix(&m, &t, &tol).expect("resolvent is safe inside the disk");
    println!(
        "after transforming at omega_2 = {:.2}+{:.2}i the diagonal reads:",
        omega.re, omega.im
    );
    for i in 0..4 {
        println!("  {:.6} + {:.6}i", transformed[(i, i)].re, transformed[(i, i)].im);
    }
    println!("norm after the transform: {:.12}", spectral_norm(&transformed));

    let (_, normalized) = phase_normalize(&transformed).expect("triangular input");
    println!("superdiagonal after phase normalization vs prescribed products:");
    for i in 0..3 {
        let si = (1.0 - moebius_scalar(&m, points[i]).unwrap().norm_sqr()).sqrt();
        let sj = (1.0 - moebius_scalar(&m, points[i + 1]).unwrap().norm_sqr()).sqrt();
        println!(
            "  {:.12}  vs  {:.12}",
            normalized[(i, i + 1)].re,
            si * sj
        );
    }

    let residual = check_involution(&m, &t, &tol).unwrap();
    println!("applying the transform twice returns the start: residual {residual:.3e}");
}
