mod common;

use std::f64::consts::PI;
use std::sync::Arc;

use common::{
    rel, BERGER_HALF, HEBEY_VAUGON_TWO, HOPF_ONE_TWO, HOPF_TWO_THREE, PAIRS, SIGMA_S3,
    TORUS_ELL_ONE, TORUS_ELL_TENTH,
};
use s1_yamabe::bundle::InvariantMetric;
use s1_yamabe::orbifold::*;
use s1_yamabe::radial::{Constant, CosineSeries};
use s1_yamabe::yamabe::*;
use s1_yamabe::Error;

fn sphere_metric(ell: f64, density: f64) -> InvariantMetric {
    InvariantMetric::constant(make_round_sphere(0.5).unwrap(), ell, density).unwrap()
}

/// Independent closed form for constant fibre length `l` over a base of the
/// given area, Euler characteristic and `int F^2 dA`.
fn j_oracle(area: f64, chi: f64, f2: f64, l: f64) -> f64 {
    (PI * PI / (16.0 * area)).cbrt()
        * (16.0 * PI * chi * l.powf(2.0 / 3.0) - 2.0 * f2 * l.powf(8.0 / 3.0))
}

#[test]
fn sigma_of_three_sphere() {
    assert!(rel(sigma_s3(), SIGMA_S3) < 1e-14);
    assert!(rel(sigma_s3(), common::sigma_s3()) < 1e-14);
    assert!(rel(sigma_sphere(3), SIGMA_S3) < 1e-14);
    // sigma(S^2) = 8 pi
    assert!(rel(sigma_sphere(2), 8.0 * PI) < 1e-14);
    assert!(rel(sphere_volume(3), 2.0 * PI * PI) < 1e-14);
}

#[test]
fn hopf_functional_equals_sigma() {
    let r = functional_j(&sphere_metric(1.0, 2.0)).unwrap();
    assert!(rel(r.j, SIGMA_S3) < 1e-8);
    assert!(rel(r.j_direct, SIGMA_S3) < 1e-8);
    assert_eq!(r.route, Route::BaseIntegral);
}

#[test]
fn berger_functional() {
    let r = functional_j(&sphere_metric(0.5, 2.0)).unwrap();
    assert!(rel(r.j, BERGER_HALF) < 1e-8);
    let area = PI;
    assert!(rel(r.j, j_oracle(area, 2.0, 4.0 * area, 0.5)) < 1e-8);
}

#[test]
fn torus_functional() {
    let m = InvariantMetric::constant(FlatTorusBase::new(1.0, 1.0).unwrap(), 1.0, 1.0).unwrap();
    assert!(rel(functional_j(&m).unwrap().j, TORUS_ELL_ONE) < 1e-8);
    let m = m.with_ell(Arc::new(Constant(0.1))).unwrap();
    assert!(rel(functional_j(&m).unwrap().j, TORUS_ELL_TENTH) < 1e-8);
}

#[test]
fn hopf_optimum_is_unit_fibre() {
    let data = ClosedFormData::from_metric(&sphere_metric(1.0, 2.0)).unwrap();
    let (ell, j) = optimal_ell(&data).unwrap();
    assert!((ell - 1.0).abs() < 1e-10);
    assert!(rel(j, SIGMA_S3) < 1e-10);
    let (ell_s, j_s) = optimal_ell_search(&data, 1e-9).unwrap();
    assert!((ell_s - 1.0).abs() < 1e-6);
    assert!(rel(j_s, j) < 1e-10);
}

#[test]
fn optimum_cases() {
    let flat = InvariantMetric::constant(FlatTorusBase::new(1.0, 1.0).unwrap(), 1.0, 1.0).unwrap();
    let data = ClosedFormData::from_metric(&flat).unwrap();
    assert!(matches!(optimal_ell(&data), Err(Error::CaseIII { .. })));
    let trivial = sphere_metric(1.0, 0.0);
    let data = ClosedFormData::from_metric(&trivial).unwrap();
    assert!(matches!(optimal_ell(&data), Err(Error::CaseII)));
}

#[test]
fn blow_up_value() {
    let data = ClosedFormData::from_metric(&sphere_metric(1.0, 0.0)).unwrap();
    let j = functional_j_closed(&data, 1000.0).unwrap();
    assert!((j - 5_843.097_695_5).abs() < 1e-6);
    assert!(j > 10.0 * SIGMA_S3);
}

#[test]
fn weighted_hopf_bounds() {
    assert!(rel(bound_weighted_hopf(1, 1).unwrap(), SIGMA_S3) < 1e-13);
    assert!(rel(bound_weighted_hopf(1, 2).unwrap(), HOPF_ONE_TWO) < 1e-13);
    assert!(rel(bound_weighted_hopf(2, 3).unwrap(), HOPF_TWO_THREE) < 1e-13);
    for (m1, m2) in PAIRS {
        let a = bound_weighted_hopf(m1, m2).unwrap();
        let b = bound_weighted_hopf_via_invariants(m1, m2).unwrap();
        assert!(rel(a, b) < 1e-6);
    }
    assert!(bound_weighted_hopf(2, 2).is_err());
}

#[test]
fn main_bound_rejects_other_cases() {
    assert!(bound_theorem_main(-1.0, 1.0).is_err());
    assert!(bound_theorem_main(2.0, 0.0).is_err());
    assert!(rel(bound_theorem_main(2.0, 1.0).unwrap(), SIGMA_S3) < 1e-14);
}

#[test]
fn hebey_vaugon() {
    assert!(rel(hebey_vaugon_bound(3, Some(2)).unwrap(), HEBEY_VAUGON_TWO) < 1e-13);
    assert!(rel(hebey_vaugon_bound(3, Some(1)).unwrap(), SIGMA_S3) < 1e-13);
    assert!(hebey_vaugon_bound(3, None).unwrap().is_infinite());
    assert!(hebey_vaugon_bound(2, Some(2)).is_err());
}

#[test]
fn weighted_hopf_optimum_below_main_bound() {
    let expected = [(1, 2, 42.600_336_944_8), (2, 3, 43.294_214_180_9)];
    for (m1, m2, jmax) in expected {
        let m = InvariantMetric::weighted_hopf(wps_profile(m1, m2, DEFAULT_GRID).unwrap(), 1.0)
            .unwrap();
        let data = ClosedFormData::from_metric(&m).unwrap();
        let (_, j) = optimal_ell(&data).unwrap();
        assert!((j - jmax).abs() < 1e-6, "({m1},{m2}) {j}");
        let cs = bound_cauchy_schwarz(&data).unwrap();
        let main = bound_theorem_main(data.chi, data.chern).unwrap();
        assert!(j <= cs && cs <= main * (1.0 + 1e-9));
    }
}

#[test]
fn closed_form_matches_quadrature_route() {
    for l in [0.3, 1.0, 2.5] {
        let m = sphere_metric(l, 2.0);
        let data = ClosedFormData::from_metric(&m).unwrap();
        let a = functional_j(&m).unwrap().j;
        let b = functional_j_closed(&data, l).unwrap();
        assert!(rel(a, b) < 1e-8);
    }
}

#[test]
fn wps_density_values() {
    // F = 2 m1 m2 / A^(3/2) with A = (m1^2 - m2^2) t + m2^2.
    let a: f64 = 5.0 * 0.25 + 4.0;
    assert!((wps_curvature_density(3, 2, 0.25).unwrap() - 12.0 / a.powf(1.5)).abs() < 1e-14);
    assert!(wps_curvature_density(3, 2, 1.5).is_err());
}

#[test]
fn conformal_functional_constant_u() {
    let m = sphere_metric(0.5, 2.0);
    let v = conformal_functional(&m, &Constant(3.0)).unwrap();
    assert!(rel(v, BERGER_HALF) < 1e-8);
    assert!(matches!(
        conformal_functional(&m, &Constant(-1.0)),
        Err(Error::NonPositiveU { .. })
    ));
}

#[test]
fn conformal_functional_aubin() {
    let m = sphere_metric(1.0, 2.0);
    let len = m.base().length();
    for c in [0.2, 0.5, 0.9] {
        let u = CosineSeries::new(len, vec![1.0, c, 0.1]).unwrap();
        assert!(conformal_functional(&m, &u).unwrap() >= SIGMA_S3 * (1.0 - 1e-9));
    }
}

#[test]
fn bound_kind_names() {
    assert_eq!(BoundKind::CauchySchwarz.name(), "cauchy_schwarz");
}
