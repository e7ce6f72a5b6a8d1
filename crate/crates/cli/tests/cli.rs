use std::path::PathBuf;
use std::process::{Command, Output};

use s1_yamabe_cli::report::{Report, Scalar};

fn models() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("models")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_s1yamabe"))
        .args(args)
        .current_dir(models())
        .output()
        .expect("run s1yamabe")
}

fn report(args: &[&str]) -> Report {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    Report::from_text(std::str::from_utf8(&out.stdout).unwrap()).unwrap()
}

fn value(r: &Report, name: &str, route: &str) -> f64 {
    let q = r
        .quantities
        .iter()
        .find(|q| q.name == name && q.route == route)
        .unwrap_or_else(|| panic!("no {name} by {route}"));
    match q.value {
        Scalar::Num(x) => x,
        Scalar::Int(x) => x as f64,
        Scalar::Text(ref t) => panic!("{name} is {t}"),
    }
}

#[test]
fn invariants_two_three() {
    let r = report(&["invariants", "--m1", "2", "--m2", "3"]);
    assert!((value(&r, "c1", "quadrature") - 1.0 / 6.0).abs() < 1e-10);
    assert!((value(&r, "chi", "boundary") - 5.0 / 6.0).abs() < 1e-8);
    assert!((value(&r, "chi", "quadrature") - 5.0 / 6.0).abs() < 1e-6);
    let exact = r
        .quantities
        .iter()
        .find(|q| q.name == "c1" && q.route == "closed_form")
        .unwrap();
    assert_eq!(exact.exact.as_deref(), Some("1/6"));
    assert_eq!(exact.error_estimate, Scalar::Text("exact".into()));
}

#[test]
fn invariants_hopf_and_method_filter() {
    let r = report(&["invariants", "--m1", "1", "--m2", "1", "--method", "closed"]);
    assert_eq!(value(&r, "c1", "closed_form"), 1.0);
    assert_eq!(value(&r, "chi", "closed_form"), 2.0);
    assert!(r.quantities.iter().all(|q| q.route == "closed_form"));
}

#[test]
fn invariants_not_coprime_is_usage_error() {
    let out = run(&["invariants", "--m1", "2", "--m2", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("coprime"));
}

#[test]
fn bound_pairs() {
    let r = report(&["bound", "--m1", "1", "--m2", "1"]);
    assert_eq!(r.case.as_deref(), Some("i"));
    assert!((value(&r, "main_bound", "closed_form") - 43.823_232_716_25).abs() < 1e-9);
    assert!((value(&r, "factor", "closed_form") - 1.0).abs() < 1e-14);
    let r = report(&["bound", "--m1", "1", "--m2", "2"]);
    assert!((value(&r, "main_bound", "closed_form") - 47.403_028_915_87).abs() < 1e-9);
}

#[test]
fn bound_hebey_vaugon() {
    let r = report(&["bound", "--hebey-vaugon", "--n", "3", "--k", "2"]);
    assert!((value(&r, "hebey_vaugon", "closed_form") - 69.565_045_714_42).abs() < 1e-9);
    let r = report(&["bound", "--hebey-vaugon", "--n", "3"]);
    assert_eq!(r.quantities[0].value, Scalar::Text("inf".into()));
}

#[test]
fn bound_needs_a_target() {
    assert_eq!(run(&["bound"]).status.code(), Some(2));
    assert_eq!(run(&["bound", "--m1", "1"]).status.code(), Some(2));
}

#[test]
fn bound_from_model_file() {
    let r = report(&["bound", "--model", "flat_torus.json"]);
    assert_eq!(r.case.as_deref(), Some("iii"));
    assert_eq!(value(&r, "j_sup", "case_iii"), 0.0);
}

#[test]
fn functional_scan_peaks_at_unit_fibre() {
    let r = report(&[
        "functional",
        "--model",
        "hopf.json",
        "--ell",
        "scan:0.25:2:13",
    ]);
    assert_eq!(value(&r, "argmax_ell", "grid"), 1.0);
    assert!((value(&r, "max_j", "base_integral") - 43.823_232_716_25).abs() < 1e-7);
    assert_eq!(r.tables[0].columns, ["ell", "j", "error_estimate"]);
    assert_eq!(r.tables[0].data[0].len(), 13);
}

#[test]
fn functional_single_value() {
    let r = report(&["functional", "--model", "hopf.json", "--ell", "0.5"]);
    assert!((value(&r, "j", "base_integral") - 34.508_633_358_53).abs() < 1e-8);
}

#[test]
fn minimize_hopf() {
    let r = report(&["minimize", "--model", "hopf.json", "--grid", "64"]);
    assert!((value(&r, "mu_upper", "minimizer") - 43.82).abs() < 1e-2);
    let trace = r.tables.iter().find(|t| t.name == "trace").unwrap();
    assert!(trace.data[1].windows(2).all(|w| w[1] <= w[0]));
}

#[test]
fn minimize_seeded_start_is_reproducible() {
    let a = run(&[
        "minimize",
        "--model",
        "bump_sphere.json",
        "--grid",
        "32",
        "--seed",
        "3",
    ]);
    let b = run(&[
        "minimize",
        "--model",
        "bump_sphere.json",
        "--grid",
        "32",
        "--seed",
        "3",
    ]);
    assert_eq!(a.stdout, b.stdout);
    let r = Report::from_text(std::str::from_utf8(&a.stdout).unwrap()).unwrap();
    assert_eq!(r.seed, Some(3));
}

#[test]
fn laplace_bump_sphere() {
    let r = report(&["laplace", "--model", "bump_sphere.json"]);
    assert!(value(&r, "min_scal", "spline_solve") > 0.0);
}

#[test]
fn case_mismatch_exit_code() {
    assert_eq!(
        run(&["laplace", "--model", "flat_torus.json"])
            .status
            .code(),
        Some(4)
    );
    assert_eq!(
        run(&["scan", "--model", "hopf.json", "--collapse"])
            .status
            .code(),
        Some(4)
    );
}

#[test]
fn scan_flags() {
    let r = report(&["scan", "--model", "trivial_sphere.json"]);
    assert_eq!(r.case.as_deref(), Some("ii"));
    assert!((value(&r, "fit_exponent", "least_squares") - 2.0 / 3.0).abs() < 0.05);
    let r = report(&[
        "scan",
        "--model",
        "flat_torus.json",
        "--ell",
        "scan:0.01:0.5:8",
    ]);
    assert!((value(&r, "fit_exponent", "least_squares") - 8.0 / 3.0).abs() < 0.05);
    assert!((value(&r, "fit_lower_exponent", "least_squares") - 2.0 / 3.0).abs() < 0.05);
}

#[test]
fn csv_output() {
    let out = run(&[
        "functional",
        "--model",
        "hopf.json",
        "--ell",
        "scan:0.5:2:3",
        "--csv",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.split("\r\n");
    assert_eq!(lines.next(), Some("ell,j,error_estimate"));
    assert_eq!(text.matches("\r\n").count(), 4);
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = run(&[
        "invariants",
        "--m1",
        "3",
        "--m2",
        "5",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let direct = run(&["invariants", "--m1", "3", "--m2", "5"]);
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
}

#[test]
fn report_round_trips() {
    let out = run(&[
        "functional",
        "--model",
        "wps_2_3.json",
        "--ell",
        "scan:1:3:5",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    let r = Report::from_text(&text).unwrap();
    assert_eq!(r.to_text().unwrap(), text);
    assert!(r.model.is_some());
}

fn write_model(dir: &tempfile::TempDir, text: &str) -> String {
    let p = dir.path().join("m.json");
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn malformed_models_report_field_paths() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (
            r#"{"base": {"type": "round_sphere", "radius": "big"}, "ell": {"type": "constant", "value": 1}, "F": {"type": "constant", "value": 2}}"#,
            "base",
        ),
        (
            r#"{"base": {"type": "round_sphere", "radius": 1}, "ell": {"type": "constant", "value": -1}, "F": {"type": "constant", "value": 2}}"#,
            "ell.value",
        ),
        (
            r#"{"base": {"type": "round_sphere", "radius": 1}, "ell": {"type": "samples", "values": [1, 1, 0, 1]}, "F": {"type": "constant", "value": 2}}"#,
            "ell.values[2]",
        ),
        (
            r#"{"base": {"type": "round_sphere", "radius": 1}, "ell": {"type": "constant", "value": 1}, "F": {"type": "wps"}}"#,
            "F",
        ),
        (
            r#"{"base": {"type": "wps", "m1": 2, "m2": 3}, "ell": {"type": "constant", "value": 1}, "F": {"type": "wps"}, "quadrature": {"panels": 0}}"#,
            "quadrature",
        ),
        (r#"{"base": {"type": "cube"}}"#, "base"),
        (
            r#"{"base": {"type": "round_sphere", "radius": 1}, "ell": {"type": "constant", "value": 1}}"#,
            "<root>",
        ),
    ];
    for (text, path) in cases {
        let p = write_model(&dir, text);
        let out = run(&["functional", "--model", &p]);
        let err = String::from_utf8_lossy(&out.stderr);
        assert_eq!(out.status.code(), Some(2), "{text}: {err}");
        assert!(out.stdout.is_empty());
        assert!(
            err.contains(&format!("model file: {path}")),
            "{text}: {err}"
        );
    }
}

#[test]
fn sampled_fibre_length_model() {
    let dir = tempfile::tempdir().unwrap();
    let values: Vec<String> = (0..=32)
        .map(|i| {
            format!(
                "{}",
                1.0 + 0.2 * (std::f64::consts::PI * i as f64 / 32.0).cos()
            )
        })
        .collect();
    let text = format!(
        r#"{{"base": {{"type": "round_sphere", "radius": 0.5}}, "ell": {{"type": "samples", "values": [{}]}}, "F": {{"type": "constant", "value": 2}}}}"#,
        values.join(",")
    );
    let p = write_model(&dir, &text);
    let r = report(&["functional", "--model", &p]);
    let a = value(&r, "j", "base_integral");
    let b = value(&r, "j", "scalar_curvature_integral");
    assert!((a - b).abs() < 1e-8 * a.abs());
    assert!(a < 43.823_232_716_26);
}

#[test]
fn unquantized_density_warns_on_stderr() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_model(
        &dir,
        r#"{"base": {"type": "round_sphere", "radius": 0.5}, "ell": {"type": "constant", "value": 1}, "F": {"type": "constant", "value": 1.3}}"#,
    );
    let out = run(&["functional", "--model", &p]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not quantized"));
    let r = Report::from_text(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(r.warnings.len(), 1);
}

#[test]
fn bad_ell_argument() {
    assert_eq!(
        run(&["functional", "--model", "hopf.json", "--ell", "scan:2:1:5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["functional", "--model", "hopf.json", "--ell", "-1"])
            .status
            .code(),
        Some(2)
    );
}
