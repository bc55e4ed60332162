//! The disk-automorphism calculus: involutivity, the norm identity behind
//! contraction preservation, preservation/reflection of contractivity on
//! random draws, spectral mapping on triangular input, and the exact
//! annihilation of the targeted diagonal entry.

mod common;

use common::c;
use contractive::moebius::{
    check_involution, moebius_matrix, moebius_scalar, norm_identity_residual, MoebiusParam,
};
use contractive::sampling::{random_matrix, random_with_norm, sample_disk, sample_omegas, SplitMix64};
use contractive::{
    build_model_matrix, spectral_norm, ModelParameters, Tolerances,
};
use proptest::prelude::*;

fn tol() -> Tolerances {
    Tolerances::default()
}

#[test]
fn scalar_involution_at_the_spec_point() {
    let m = MoebiusParam::new(c(0.4, 0.0)).unwrap();
    let z = c(0.2, 0.1);
    let back = moebius_scalar(&m, moebius_scalar(&m, z).unwrap()).unwrap();
    assert!((back - z).norm() < 1e-14);
}

#[test]
fn second_diagonal_entry_is_annihilated_exactly() {
    // transform the three-point model at its own middle eigenvalue
    let p = ModelParameters::from_reals(&[0.2, 0.5, -0.3]).unwrap();
    let t = build_model_matrix(&p);
    let m = MoebiusParam::new(c(0.5, 0.0)).unwrap();
    let transformed = moebius_matrix(&m, &t, &tol()).unwrap();
    assert!(transformed.is_upper_triangular());
    assert_eq!(transformed[(1, 1)], c(0.0, 0.0));
    let first = moebius_scalar(&m, c(0.2, 0.0)).unwrap();
    let third = moebius_scalar(&m, c(-0.3, 0.0)).unwrap();
    assert_eq!(transformed[(0, 0)], first);
    assert_eq!(transformed[(2, 2)], third);
    // frozen closed forms: (0.5-0.2)/(1-0.1) and (0.5+0.3)/(1.15)
    assert!((first.re - 1.0 / 3.0).abs() < 1e-15);
    assert!((third.re - 0.8 / 1.15).abs() < 1e-15);
}

#[test]
fn involution_residual_on_random_contractions() {
    let mut rng = SplitMix64::new(0x1f);
    let m = MoebiusParam::new(c(0.3, 0.0)).unwrap();
    let t = random_with_norm(&mut rng, 4, 4, 0.95);
    assert!(check_involution(&m, &t, &tol()).unwrap() < 1e-11);
}

#[test]
fn involution_residual_on_a_five_point_model() {
    let mut rng = SplitMix64::new(0x2a);
    let p = ModelParameters::new(sample_omegas(&mut rng, 5, 0.8)).unwrap();
    let t = build_model_matrix(&p);
    let omega = sample_disk(&mut rng, 0.8);
    let m = MoebiusParam::new(omega).unwrap();
    assert!(check_involution(&m, &t, &tol()).unwrap() < 1e-10);
}

#[test]
fn norm_identity_on_random_triples() {
    let mut rng = SplitMix64::new(0x99);
    for _ in 0..100 {
        let n = 2 + rng.next_usize(4);
        let target = 0.99 * rng.next_f64();
        let t = random_with_norm(&mut rng, n, n, target);
        let omega = sample_disk(&mut rng, 0.9);
        let m = MoebiusParam::new(omega).unwrap();
        let x = random_matrix(&mut rng, n, 1);
        let residual = norm_identity_residual(&m, &t, &x, &tol()).unwrap();
        assert!(
            residual <= 1e-10 * x.frobenius_norm().powi(2),
            "residual {residual}"
        );
    }
}

#[test]
fn contractivity_is_preserved_and_reflected() {
    let mut rng = SplitMix64::new(0x3e57);
    let t = tol();
    let mut preserved = 0;
    while preserved < 60 {
        let n = 2 + rng.next_usize(7);
        let target = 0.999 * rng.next_f64().max(0.05);
        let contraction = random_with_norm(&mut rng, n, n, target);
        let omega = sample_disk(&mut rng, 0.9);
        let m = MoebiusParam::new(omega).unwrap();
        let image = moebius_matrix(&m, &contraction, &t).unwrap();
        assert!(
            spectral_norm(&image) <= 1.0 + 1e-9,
            "contraction mapped outside the ball"
        );
        preserved += 1;
    }

    let mut reflected = 0;
    while reflected < 60 {
        let n = 2 + rng.next_usize(7);
        let target = 1.001 + 0.999 * rng.next_f64();
        let expansion = random_with_norm(&mut rng, n, n, target);
        let omega = sample_disk(&mut rng, 0.9);
        let m = MoebiusParam::new(omega).unwrap();
        // stay away from the undefined-resolvent set
        match moebius_matrix(&m, &expansion, &t) {
            Ok(image) => {
                assert!(
                    spectral_norm(&image) > 1.0 + 1e-9,
                    "non-contraction mapped inside the ball"
                );
                reflected += 1;
            }
            Err(_) => continue,
        }
    }
}

#[test]
fn spectral_mapping_on_triangular_matrices() {
    let mut rng = SplitMix64::new(0x5bec);
    let p = ModelParameters::new(sample_omegas(&mut rng, 4, 0.8)).unwrap();
    let t = build_model_matrix(&p);
    let omega = sample_disk(&mut rng, 0.7);
    let m = MoebiusParam::new(omega).unwrap();
    let image = moebius_matrix(&m, &t, &tol()).unwrap();
    // triangular, so eigenvalues sit on the diagonal; the map acts entrywise
    for i in 0..4 {
        let expected = moebius_scalar(&m, t[(i, i)]).unwrap();
        assert!((image[(i, i)] - expected).norm() < 1e-10);
    }
}

#[test]
fn triangularity_is_preserved_bit_for_bit() {
    let mut rng = SplitMix64::new(0x7b1);
    let p = ModelParameters::new(sample_omegas(&mut rng, 6, 0.85)).unwrap();
    let t = build_model_matrix(&p);
    let m = MoebiusParam::new(sample_disk(&mut rng, 0.8)).unwrap();
    let image = moebius_matrix(&m, &t, &tol()).unwrap();
    assert!(image.is_upper_triangular());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn involution_is_tight_on_random_contractions(seed in any::<u64>()) {
        let mut rng = SplitMix64::new(seed);
        let n = 2 + rng.next_usize(5);
        let t = random_with_norm(&mut rng, n, n, 0.98);
        let m = MoebiusParam::new(sample_disk(&mut rng, 0.85)).unwrap();
        prop_assert!(check_involution(&m, &t, &tol()).unwrap() < 1e-10);
    }
}
