//! Model-matrix structure checks against the independent SVD oracle: the
//! singular-value profile (1, ..., 1, prod |omega_k|), rank-one defect, exact
//! eigenvalue placement, and the frozen band values.

mod common;

use common::{c, jacobi_singular_values, max_dev};
use contractive::linalg::eigenvalues;
use contractive::sampling::{sample_omegas, SplitMix64};
use contractive::{
    build_model_matrix, is_contraction, is_sn_class, numerical_rank, prescribed_superdiagonal,
    spectral_norm, ComplexMatrix, ModelParameters, Tolerances,
};
use proptest::prelude::*;

fn tol() -> Tolerances {
    Tolerances::default()
}

#[test]
fn singular_values_are_ones_and_the_determinant_modulus() {
    let mut rng = SplitMix64::new(0x517);
    for n in 2..=7 {
        let p = ModelParameters::new(sample_omegas(&mut rng, n, 0.85)).unwrap();
        let m = build_model_matrix(&p);
        let sigma = jacobi_singular_values(&m);
        // triangular determinant: product of the diagonal
        let det_modulus: f64 = p.omegas().iter().map(|w| w.norm()).product();
        for s in &sigma[..n - 1] {
            assert!((s - 1.0).abs() < 1e-9, "n = {n}: sigma = {s}");
        }
        assert!(
            (sigma[n - 1] - det_modulus).abs() < 1e-9,
            "n = {n}: smallest {} vs |det| {det_modulus}",
            sigma[n - 1]
        );
    }
}

#[test]
fn frozen_band_values_for_three_points() {
    // omegas (0.3, 0.4i, -0.5): s = (sqrt(0.91), sqrt(0.84), sqrt(0.75))
    let p = ModelParameters::new(vec![c(0.3, 0.0), c(0.0, 0.4), c(-0.5, 0.0)]).unwrap();
    let band = prescribed_superdiagonal(&p).unwrap();
    assert!((band.superdiagonal[0] - 0.8742997197757757).abs() < 1e-15);
    assert!((band.superdiagonal[1] - 0.7937253933193772).abs() < 1e-15);
    // and the band agrees with the built matrix entrywise
    let m = build_model_matrix(&p);
    for i in 0..2 {
        assert!((m[(i, i + 1)].re - band.superdiagonal[i]).abs() < 1e-15);
        assert_eq!(m[(i, i + 1)].im, 0.0);
    }
}

#[test]
fn model_matrices_are_extremal_contractions() {
    let mut rng = SplitMix64::new(0xfeed);
    for _ in 0..10 {
        let p = ModelParameters::new(sample_omegas(&mut rng, 5, 0.9)).unwrap();
        let m = build_model_matrix(&p);
        let cert = is_contraction(&m, &tol());
        assert!((cert.norm - 1.0).abs() < 1e-10);
        assert!(cert.is_contraction());
        assert_eq!(cert.defect_rank, 1);
    }
}

#[test]
fn eigenvalues_are_exactly_the_parameters() {
    let p = ModelParameters::new(vec![c(0.1, 0.2), c(0.1, 0.2), c(-0.4, 0.0)]).unwrap();
    let m = build_model_matrix(&p);
    // triangular, so the diagonal is the spectrum including multiplicity
    assert_eq!(m.diagonal(), p.omegas().to_vec());
    // and the general eigensolver agrees as a multiset
    let mut got: Vec<(f64, f64)> = eigenvalues(&m)
        .unwrap()
        .iter()
        .map(|l| (l.re, l.im))
        .collect();
    let mut want: Vec<(f64, f64)> = p.omegas().iter().map(|w| (w.re, w.im)).collect();
    let key = |t: &(f64, f64)| (t.0, t.1);
    got.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
    want.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
    for (g, w) in got.iter().zip(&want) {
        assert!((g.0 - w.0).abs() < 1e-10 && (g.1 - w.1).abs() < 1e-10);
    }
}

#[test]
fn class_membership_for_the_spec_trio() {
    let t = tol();
    let model = build_model_matrix(
        &ModelParameters::new(vec![c(0.2, 0.0), c(0.0, 0.5)]).unwrap(),
    );
    assert!(is_sn_class(&model, &t).unwrap().is_member);

    assert!(!is_sn_class(&ComplexMatrix::identity(2), &t).unwrap().is_member);

    let half = ComplexMatrix::from_fn(2, 2, |i, j| {
        if i == j {
            c(0.5, 0.0)
        } else {
            c(0.0, 0.0)
        }
    });
    let report = is_sn_class(&half, &t).unwrap();
    assert!(!report.is_member);
    assert_eq!(report.defect_rank, 2);
}

#[test]
fn nested_parameters_build_nested_matrices() {
    let mut rng = SplitMix64::new(0xabc);
    let p = ModelParameters::new(sample_omegas(&mut rng, 6, 0.8)).unwrap();
    let full = build_model_matrix(&p);
    for n in 2..6 {
        let sub = build_model_matrix(&p.truncated(n).unwrap());
        assert_eq!(max_dev(&sub, &full.submatrix(0, n, 0, n)), 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn random_models_have_unit_norm_and_rank_one_defect(seed in any::<u64>(), n in 2usize..7) {
        let mut rng = SplitMix64::new(seed);
        let p = ModelParameters::new(sample_omegas(&mut rng, n, 0.85)).unwrap();
        let m = build_model_matrix(&p);
        let norm = spectral_norm(&m);
        prop_assert!((norm - 1.0).abs() < 1e-10, "norm = {}", norm);
        let gram = ComplexMatrix::identity(n).sub(&m.adjoint().mul(&m).unwrap()).unwrap();
        prop_assert_eq!(numerical_rank(&gram, &tol()), 1);
    }

    #[test]
    fn band_entries_sit_in_the_unit_interval(seed in any::<u64>(), n in 2usize..8) {
        let mut rng = SplitMix64::new(seed);
        let p = ModelParameters::new(sample_omegas(&mut rng, n, 0.95)).unwrap();
        let band = prescribed_superdiagonal(&p).unwrap();
        for v in &band.superdiagonal {
            prop_assert!(*v > 0.0 && *v <= 1.0);
        }
        // definition check: s_i s_{i+1}
        for i in 0..n - 1 {
            let expected = p.defect_scalar(i) * p.defect_scalar(i + 1);
            prop_assert!((band.superdiagonal[i] - expected).abs() < 1e-12);
        }
    }
}
