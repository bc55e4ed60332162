//! Build the model matrix for a handful of disk points and inspect what
//! makes it special: unit norm, rank-one defect, eigenvalues sitting exactly
//! on the chosen points.
//!
//! ```bash
//! cargo run -p contractive --example build_model
//! ```

use contractive::linalg::singular_values;
use contractive::{
    build_model_matrix, is_sn_class, Complex64, ModelParameters, Tolerances,
};

fn main() {
    let points = vec![
        Complex64::new(0.3, 0.0),
        Complex64::new(0.0, 0.4),
        Complex64::new(-0.5, 0.0),
        Complex64::new(0.2, 0.1),
    ];
    let params = ModelParameters::new(points).expect("points are inside the disk");
    let matrix = build_model_matrix(&params);
    println!("model matrix for 4 disk points:");
    println!("{matrix:?}");

    let sigma = singular_values(&matrix);
    println!("singular values (descending): {sigma:?}");
    let det: f64 = params.omegas().iter().map(|w| w.norm()).product();
    println!("product of |omega_k| (the smallest singular value): {det:.12}");

    let report = is_sn_class(&matrix, &Tolerances::default()).expect("square input");
    println!(
        "norm {:.12}, defect rank {}, spectral radius {:.6}, class member: {}",
        report.certificate.norm, report.defect_rank, report.spectral_radius, report.is_member
    );
}
