//! Shared test support: an independent singular-value oracle and block
//! samplers. The oracle is a one-sided Jacobi SVD written from scratch so
//! that norm and rank claims are checked against a second route that shares
//! no code with the crate's faer-backed kernels.

#![allow(dead_code)]

use contractive::parrott::{assemble, ParrottBlocks};
use contractive::sampling::{random_with_norm, SplitMix64};
use contractive::{spectral_norm, Complex64, ComplexMatrix, Tolerances};

/// Singular values by one-sided Jacobi: repeatedly rotate column pairs until
/// all pairs are numerically orthogonal; the singular values are the final
/// column norms. Descending order.
#[allow(clippy::needless_range_loop)] // the rotation touches two rows of `a` at once
pub fn jacobi_singular_values(m: &ComplexMatrix) -> Vec<f64> {
    let work = if m.rows() >= m.cols() {
        m.clone()
    } else {
        m.adjoint()
    };
    let (rows, cols) = (work.rows(), work.cols());
    let mut a: Vec<Vec<Complex64>> = (0..cols)
        .map(|j| (0..rows).map(|i| work[(i, j)]).collect())
        .collect();

    for _sweep in 0..100 {
        let mut rotated = false;
        for p in 0..cols {
            for q in (p + 1)..cols {
                let mut app = 0.0;
                let mut aqq = 0.0;
                let mut apq = Complex64::new(0.0, 0.0);
                for (vp, vq) in a[p].iter().zip(&a[q]) {
                    app += vp.norm_sqr();
                    aqq += vq.norm_sqr();
                    apq += vp.conj() * vq;
                }
                let denom = (app * aqq).sqrt();
                let r = apq.norm();
                if denom == 0.0 || r <= 1e-15 * denom {
                    continue;
                }
                rotated = true;
                // fold the phase of <a_p, a_q> into column q, then apply the
                // real Jacobi rotation that zeroes the 2x2 off-diagonal
                let phase = apq / r;
                let theta = (aqq - app) / (2.0 * r);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for i in 0..rows {
                    let vp = a[p][i];
                    let vq = a[q][i] * phase.conj();
                    a[p][i] = vp * c - vq * s;
                    a[q][i] = vp * s + vq * c;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut sigma: Vec<f64> = a
        .iter()
        .map(|col| col.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    sigma.sort_by(|x, y| y.partial_cmp(x).unwrap());
    sigma
}

/// Largest singular value through the oracle route.
pub fn oracle_norm(m: &ComplexMatrix) -> f64 {
    jacobi_singular_values(m).first().copied().unwrap_or(0.0)
}

/// Random blocks cut from a random matrix of the requested spectral norm:
/// the column [A; C] and row [C D] inherit the bound, so the blocks are
/// valid whenever `level <= 1`.
pub fn random_blocks(
    rng: &mut SplitMix64,
    k1: usize,
    k2: usize,
    h1: usize,
    h2: usize,
    level: f64,
    tol: &Tolerances,
) -> ParrottBlocks {
    let g = random_with_norm(rng, k1 + k2, h1 + h2, level);
    let a = g.submatrix(0, k1, 0, h1);
    let c = g.submatrix(k1, k1 + k2, 0, h1);
    let d = g.submatrix(k1, k1 + k2, h1, h1 + h2);
    ParrottBlocks::new(a, c, d, tol).expect("blocks cut from a contraction are valid")
}

/// Blocks rescaled so that max(column norm, row norm) = 1: the binding
/// normalization under which every completion has norm at least 1 and the
/// central completion pins the optimum.
pub fn normalize_blocks(blocks: &ParrottBlocks, tol: &Tolerances) -> Option<ParrottBlocks> {
    let m = blocks.column_norm().max(blocks.row_norm());
    if m < 1e-6 {
        return None;
    }
    let scale = Complex64::new(1.0 / m, 0.0);
    ParrottBlocks::new(
        blocks.a().scale(scale),
        blocks.c().scale(scale),
        blocks.d().scale(scale),
        tol,
    )
    .ok()
}

/// Random blocks with the binding normalization applied.
pub fn normalized_blocks(
    rng: &mut SplitMix64,
    k1: usize,
    k2: usize,
    h1: usize,
    h2: usize,
    tol: &Tolerances,
) -> ParrottBlocks {
    loop {
        let blocks = random_blocks(rng, k1, k2, h1, h2, 0.9, tol);
        if let Some(scaled) = normalize_blocks(&blocks, tol) {
            return scaled;
        }
    }
}

/// Assembled spectral norm at a scalar corner value.
pub fn assembled_norm_at(blocks: &ParrottBlocks, b: Complex64) -> f64 {
    let corner = ComplexMatrix::scalar(b);
    spectral_norm(&assemble(blocks, &corner).expect("scalar corner conforms"))
}

/// Feasibility boundary along a ray from the center, located by bisection on
/// the predicate "assembled norm <= 1 + slack". The assembled norm is convex
/// in the corner, so the feasible set along the ray is an interval.
pub fn boundary_by_bisection(
    blocks: &ParrottBlocks,
    center: Complex64,
    direction: Complex64,
    t_max: f64,
    slack: f64,
) -> f64 {
    let feasible = |t: f64| assembled_norm_at(blocks, center + direction * t) <= 1.0 + slack;
    if !feasible(0.0) {
        return 0.0;
    }
    let mut lo = 0.0;
    let mut hi = t_max;
    if feasible(hi) {
        return hi;
    }
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if feasible(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Max modulus deviation between two same-shape matrices.
pub fn max_dev(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.max_deviation(b).expect("same shape")
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
