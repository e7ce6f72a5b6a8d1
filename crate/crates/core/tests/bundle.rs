mod common;

use std::f64::consts::PI;
use std::sync::Arc;

use s1_yamabe::bundle::*;
use s1_yamabe::orbifold::*;
use s1_yamabe::radial::{Constant, CosineSeries, Radial};

fn hopf() -> InvariantMetric {
    InvariantMetric::constant(make_round_sphere(0.5).unwrap(), 1.0, 2.0).unwrap()
}

#[test]
fn hopf_scalar_curvature_is_six() {
    let m = hopf();
    let len = m.base().length();
    for k in 0..=20 {
        let s = len * k as f64 / 20.0;
        assert!((m.scalar_curvature_or_limit(s) - 6.0).abs() < 1e-8);
    }
}

#[test]
fn hopf_volume_and_chern() {
    let m = hopf();
    assert!((m.volume_total().unwrap() - 2.0 * PI * PI).abs() < 1e-10);
    let c = m.chern_number().unwrap();
    assert!((c.value - 1.0).abs() < 1e-10);
    let n = m.omega_norms().unwrap();
    assert!(n.is_quantized());
    // 2 * 4 * pi = 8 pi
    assert!((n.omega_l2_sq - 8.0 * PI).abs() < 1e-9);
    assert!((n.omega_l1 - 2f64.sqrt() * 2.0 * PI).abs() < 1e-9);
}

#[test]
fn berger_scalar_curvature() {
    // Scal = 2K - l^2 F^2 / 2 = 8 - 2 l^2 on the half-radius sphere.
    let m = InvariantMetric::constant(make_round_sphere(0.5).unwrap(), 0.5, 2.0).unwrap();
    assert!((m.scalar_curvature_total(0.4).unwrap() - 7.5).abs() < 1e-9);
}

#[test]
fn unquantized_density_flagged() {
    let m = InvariantMetric::constant(make_round_sphere(0.5).unwrap(), 1.0, 1.7).unwrap();
    let n = m.omega_norms().unwrap();
    assert!(!n.is_quantized());
    assert!(n.quantization_defect > QUANTIZATION_TOL);
}

#[test]
fn weighted_hopf_chern_number() {
    for (m1, m2) in common::PAIRS {
        let m = InvariantMetric::weighted_hopf(wps_profile(m1, m2, DEFAULT_GRID).unwrap(), 1.0)
            .unwrap();
        let c = m.chern_number().unwrap().value;
        assert!((c - 1.0 / (m1 * m2) as f64).abs() < 1e-8, "({m1},{m2}) {c}");
    }
}

#[test]
fn pole_slope_of_fibre_length_rejected() {
    let base = make_round_sphere(1.0).unwrap();
    // cos on [0, pi] has zero slope; sin does not.
    let bad = CosineSeries::new(PI, vec![1.0]).unwrap();
    assert!(InvariantMetric::new(base.clone(), Arc::new(bad), Arc::new(Constant(1.0))).is_ok());
    #[derive(Debug)]
    struct Tilted;
    impl Radial for Tilted {
        fn jet(&self, s: f64) -> s1_yamabe::radial::Jet {
            s1_yamabe::radial::Jet::new(2.0 + s.sin(), s.cos(), -s.sin())
        }
    }
    assert!(InvariantMetric::new(base, Arc::new(Tilted), Arc::new(Constant(1.0))).is_err());
}

#[test]
fn nonpositive_fibre_length_rejected() {
    assert!(InvariantMetric::constant(make_round_sphere(1.0).unwrap(), 0.0, 1.0).is_err());
    assert!(
        InvariantMetric::constant(make_round_sphere(1.0).unwrap(), f64::INFINITY, 1.0).is_err()
    );
}

#[test]
fn log_form_matches_laplacian_form() {
    let base = make_round_sphere(0.5).unwrap();
    let ell = CosineSeries::new(base.length(), vec![1.0, 0.3, 0.1]).unwrap();
    let m = InvariantMetric::new(base, Arc::new(ell), Arc::new(Constant(2.0))).unwrap();
    for k in 1..20 {
        let s = m.base().length() * k as f64 / 20.0;
        let a = m.scalar_curvature_total(s).unwrap();
        let b = m.scalar_curvature_log_form(s).unwrap();
        assert!((a - b).abs() < 1e-9 * a.abs().max(1.0));
    }
}

#[test]
fn laplacian_term_integrates_to_zero() {
    let base = make_bumped_sphere(1.0, 0.3).unwrap();
    let ell = CosineSeries::new(base.length(), vec![1.0, 0.2, -0.1, 0.05]).unwrap();
    let m = InvariantMetric::new(base, Arc::new(ell.clone()), Arc::new(Constant(1.0))).unwrap();
    let total = m
        .integrate_base(|s| m.laplacian_term(s) * ell.value(s))
        .unwrap()
        .value;
    let scale = m
        .integrate_base_abs_pow(|s| m.laplacian_term(s) * ell.value(s), 1.0)
        .unwrap()
        .value;
    assert!(total.abs() < 1e-9 * scale);
}

#[test]
fn scalar_curvature_scales_inversely() {
    let m = InvariantMetric::constant(make_round_sphere(0.5).unwrap(), 0.7, 2.0).unwrap();
    for c in [0.5, 2.0, 10.0] {
        let sc = m.scaled(c).unwrap();
        let a = m.scalar_curvature_total(0.3).unwrap();
        let b = sc.scalar_curvature_total(0.3 * c).unwrap();
        assert!((b - a / (c * c)).abs() < 1e-9 * a.abs());
    }
}

#[test]
fn torus_norms() {
    let m = InvariantMetric::constant(FlatTorusBase::new(1.0, 1.0).unwrap(), 0.3, 1.0).unwrap();
    let n = m.omega_norms().unwrap();
    assert!((n.omega_l2_sq - 4.0 * PI).abs() < 1e-10);
    assert!((n.chern_number - 1.0).abs() < 1e-10);
    assert_eq!(n.scal_l32, 0.0);
}
