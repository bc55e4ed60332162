//! Contractive completion of a 2x2 block matrix with an unknown corner:
//! solve the factor equations, read off the admissible disk, and certify the
//! central completion by assembling it.
//!
//! ```bash
//! cargo run -p contractive --example parrott_completion
//! ```

use contractive::parrott::{
    assemble, central_completion, scalar_feasibility_disk, solve_factors, ParrottBlocks,
};
use contractive::{spectral_norm, Complex64, ComplexMatrix, Tolerances};

fn main() {
    let tol = Tolerances::default();
    // A is a 1x2 row, C a 2x2 block, D a 2x1 column; the corner is scalar
    let a = ComplexMatrix::new(
        1,
        2,
        vec![Complex64::new(0.4, 0.1), Complex64::new(0.3, 0.0)],
    )
    .unwrap();
    let c = ComplexMatrix::new(
        2,
        2,
        vec![
            Complex64::new(0.1, 0.0),
            Complex64::new(0.2, -0.1),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.3, 0.0),
        ],
    )
    .unwrap();
    let d = ComplexMatrix::new(
        2,
        1,
        vec![Complex64::new(0.25, 0.0), Complex64::new(-0.2, 0.1)],
    )
    .unwrap();

    let blocks = ParrottBlocks::new(a, c, d, &tol).expect("blocks are contractive");
    println!(
        "column norm {:.6}, row norm {:.6}",
        blocks.column_norm(),
        blocks.row_norm()
    );

    let factors = solve_factors(&blocks, &tol).expect("consistent factorization");
    println!(
        "factor residuals: {:.3e} (A = Z Dc), {:.3e} (D = Dc* Y)",
        factors.residual_a, factors.residual_d
    );

    let disk = scalar_feasibility_disk(&blocks, &tol).expect("scalar corner");
    println!(
        "admissible corners: |B - ({:.6} + {:.6}i)| <= {:.6}",
        disk.center.re, disk.center.im, disk.radius
    );

    let b = central_completion(&blocks, &tol).expect("certified completion");
    let assembled = assemble(&blocks, &b).unwrap();
    println!(
        "central corner {:.6} + {:.6}i, assembled norm {:.12}",
        b[(0, 0)].re,
        b[(0, 0)].im,
        spectral_norm(&assembled)
    );

    // pushing past the boundary breaks contractivity
    let outside = disk.center + Complex64::new(disk.radius + 0.05, 0.0);
    let bad = assemble(&blocks, &ComplexMatrix::scalar(outside)).unwrap();
    println!(
        "corner {:.6} past the boundary assembles to norm {:.6}",
        outside.re,
        spectral_norm(&bad)
    );
}
