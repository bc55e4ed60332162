//! Cross-validate the closed-form matrix against its function-theoretic
//! origin: discretize the Hardy-space inner products of the orthonormal
//! basis on the circle and watch both the Gram defect and the entrywise gap
//! fall geometrically with the node count.
//!
//! ```bash
//! cargo run -p contractive --example tmw_quadrature
//! ```

use contractive::space::{suggested_nodes, tmw_verify, QuadratureGrid};
use contractive::{Complex64, ModelParameters};

fn main() {
    let points = vec![
        Complex64::new(0.6, 0.0),
        Complex64::new(0.0, -0.7),
        Complex64::new(-0.4, 0.4),
        Complex64::new(0.3, 0.0),
        Complex64::new(0.1, 0.6),
    ];
    let params = ModelParameters::new(points).unwrap();
    println!(
        "5 basis functions, max |omega| = {:.3}, suggested nodes for 1e-9: {}",
        params.max_modulus(),
        suggested_nodes(&params, 1e-9)
    );

    println!("{:>6}  {:>12}  {:>12}", "nodes", "gram defect", "entry gap");
    for nodes in [32usize, 64, 128, 256, 512, 1024] {
        let grid = QuadratureGrid::new(nodes).unwrap();
        let report = tmw_verify(&params, &grid).unwrap();
        println!(
            "{:>6}  {:>12.3e}  {:>12.3e}{}",
            nodes,
            report.gram_defect,
            report.entry_defect,
            if report.low_accuracy { "  (advisory)" } else { "" }
        );
    }
}
