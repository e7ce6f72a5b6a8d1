use s1_yamabe_demo::*;

#[test]
fn hopf_summary() {
    let v = weighted_hopf_values(1, 1).unwrap();
    assert_eq!(&v[..2], &[1.0, 2.0]);
    let sigma = 3.0 * 2f64.powf(5.0 / 3.0) * std::f64::consts::PI.powf(4.0 / 3.0);
    assert!((v[2] - sigma).abs() < 1e-10);
    assert!((v[4] - 1.0).abs() < 1e-8);
    assert!((v[5] - sigma).abs() < 1e-8);
}

#[test]
fn curve_is_interleaved_and_peaks_inside() {
    let c = ell_curve_values(2, 3, 0.1, 10.0, 21).unwrap();
    assert_eq!(c.len(), 42);
    let opt = weighted_hopf_values(2, 3).unwrap()[5];
    assert!(c.chunks(2).all(|p| p[1] <= opt + 1e-9));
    assert!(ell_curve_values(2, 4, 0.1, 10.0, 21).is_err());
}

#[test]
fn profile_has_cone_ends() {
    let p = wps_profile_values(2, 3, 64).unwrap();
    assert_eq!(p.len(), 130);
    assert_eq!(p[1], 0.0);
    assert!(p[p.len() - 1].abs() < 1e-9);
    assert!(p.chunks(2).skip(1).take(63).all(|q| q[1] > 0.0));
}
