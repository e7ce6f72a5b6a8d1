mod common;

use common::{rel, SIGMA_S3, TORUS_LOWER_TENTH};
use s1_yamabe::bundle::InvariantMetric;
use s1_yamabe::orbifold::*;
use s1_yamabe::scaling::*;
use s1_yamabe::yamabe::ClosedFormData;

fn data(base: impl Into<Base>, density: f64) -> ClosedFormData {
    ClosedFormData::from_metric(&InvariantMetric::constant(base, 1.0, density).unwrap()).unwrap()
}

#[test]
fn flags() {
    assert_eq!(
        ScanFlag::classify(&data(make_round_sphere(0.5).unwrap(), 2.0)),
        ScanFlag::MaxInterior
    );
    assert_eq!(
        ScanFlag::classify(&data(make_round_sphere(0.5).unwrap(), 0.0)),
        ScanFlag::DivergesAsEllGrows
    );
    assert_eq!(
        ScanFlag::classify(&data(FlatTorusBase::new(1.0, 1.0).unwrap(), 1.0)),
        ScanFlag::SupZeroNotAttained
    );
}

#[test]
fn blow_up_scan() {
    let d = data(make_round_sphere(0.5).unwrap(), 0.0);
    let t = ell_scan(&d, &default_log_grid(1.0, 1000.0).unwrap()).unwrap();
    assert!(t.rows.windows(2).all(|w| w[1].j > w[0].j));
    let (e, _) = t.fit.unwrap();
    assert!((e - 2.0 / 3.0).abs() < 0.05);
    assert!(t.rows.last().unwrap().j > 10.0 * SIGMA_S3);
}

#[test]
fn collapse_scan() {
    let d = data(FlatTorusBase::new(1.0, 1.0).unwrap(), 1.0);
    let t = ell_scan(&d, &log_grid(0.01, 0.5, 12).unwrap()).unwrap();
    let (up, _) = fit_exponent(&t).unwrap();
    let (lo, _) = fit_lower_exponent(&t).unwrap();
    assert!((up - 8.0 / 3.0).abs() < 0.05);
    assert!((lo - 2.0 / 3.0).abs() < 0.05);
    for r in &t.rows {
        assert!(r.lower.unwrap() <= r.j && r.j < 0.0);
    }
    let (_, lower) = collapse_bounds(&d, 0.1).unwrap();
    assert!(rel(lower, TORUS_LOWER_TENTH) < 1e-10);
}

#[test]
fn collapse_bounds_preconditions() {
    let sphere = data(make_round_sphere(0.5).unwrap(), 2.0);
    assert!(collapse_bounds(&sphere, 0.1).is_err());
    let d = data(FlatTorusBase::new(1.0, 1.0).unwrap(), 1.0);
    assert!(collapse_bounds(&d, 2.0).is_err());
}

#[test]
fn hopf_scan_peaks_at_unit_fibre() {
    let d = data(make_round_sphere(0.5).unwrap(), 2.0);
    let t = ell_scan(&d, &log_grid(0.25, 4.0, 41).unwrap()).unwrap();
    let best = t.rows.iter().max_by(|a, b| a.j.total_cmp(&b.j)).unwrap();
    assert!((best.ell - 1.0).abs() < 1e-9);
    assert!(rel(best.j, SIGMA_S3) < 1e-10);
}

#[test]
fn grid_errors() {
    assert!(log_grid(0.0, 1.0, 5).is_err());
    assert!(log_grid(1.0, 0.5, 5).is_err());
    assert!(ell_scan(&data(make_round_sphere(0.5).unwrap(), 2.0), &[]).is_err());
}
