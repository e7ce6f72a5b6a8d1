use std::path::Path;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use s1_yamabe::bundle::InvariantMetric;
use s1_yamabe::conformal::{minimize_conformal_from, uniformize_positive, MinimizerConfig};
use s1_yamabe::invariants::{
    c1_closed, c1_quadrature, chi_boundary, chi_closed, chi_quadrature, ratio_to_f64,
};
use s1_yamabe::numerics::QuadratureConfig;
use s1_yamabe::orbifold::{wps_profile, DEFAULT_GRID};
use s1_yamabe::radial::{Constant, Radial};
use s1_yamabe::scaling::{
    collapse_bounds, default_log_grid, ell_scan, fit_lower_exponent, log_grid, ScanFlag,
};
use s1_yamabe::yamabe::{
    bound_cauchy_schwarz, bound_theorem_main, bound_weighted_hopf, functional_j,
    hebey_vaugon_bound, optimal_ell, sigma_s3, ClosedFormData,
};
use s1_yamabe::Error;

use crate::error::CliError;
use crate::model::ModelSpec;
use crate::report::{Quantity, Report, Table};

pub type CmdResult = Result<Report, CliError>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EllArg {
    Value(f64),
    Scan { lo: f64, hi: f64, n: usize },
}

impl std::str::FromStr for EllArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if let Some(rest) = s.strip_prefix("scan:") {
            let parts: Vec<&str> = rest.split(':').collect();
            if parts.len() != 3 {
                return Err(format!("expected scan:lo:hi:n, got {s}"));
            }
            let lo: f64 = parts[0]
                .parse()
                .map_err(|e| format!("scan lower end: {e}"))?;
            let hi: f64 = parts[1]
                .parse()
                .map_err(|e| format!("scan upper end: {e}"))?;
            let n: usize = parts[2]
                .parse()
                .map_err(|e| format!("scan point count: {e}"))?;
            if !(lo > 0.0 && hi > lo && n >= 2) {
                return Err(format!("scan needs 0 < lo < hi and n >= 2, got {s}"));
            }
            return Ok(EllArg::Scan { lo, hi, n });
        }
        let v: f64 = s.parse().map_err(|e| format!("fibre length: {e}"))?;
        if !(v > 0.0 && v.is_finite()) {
            return Err(format!("fibre length must be positive, got {s}"));
        }
        Ok(EllArg::Value(v))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Quadrature,
    Closed,
    Boundary,
    All,
}

pub struct Common {
    pub seed: Option<u64>,
    pub tol: Option<f64>,
}

fn case_name(flag: ScanFlag) -> &'static str {
    match flag {
        ScanFlag::MaxInterior => "i",
        ScanFlag::DivergesAsEllGrows => "ii",
        ScanFlag::SupZeroNotAttained => "iii",
    }
}

struct Loaded {
    spec: ModelSpec,
    metric: InvariantMetric,
    data: ClosedFormData,
}

fn load(path: &Path, report_warnings: &mut Vec<String>) -> Result<Loaded, CliError> {
    let spec = ModelSpec::read(path)?;
    let metric = spec.build()?;
    let norms = metric.omega_norms()?;
    if !norms.is_quantized() {
        let w = format!(
            "curvature density is not quantized: chern number {} is {:.3e} away from an integer multiple of the orbifold period",
            norms.chern_number, norms.quantization_defect
        );
        eprintln!("warning: {w}");
        report_warnings.push(w);
    }
    let data = ClosedFormData::from_metric(&metric)?;
    Ok(Loaded { spec, metric, data })
}

fn quadrature_with_tol(common: &Common) -> Result<QuadratureConfig, CliError> {
    let mut cfg = QuadratureConfig::default();
    if let Some(t) = common.tol {
        if !(t > 0.0 && t < 1.0) {
            return Err(CliError::usage(format!(
                "--tol must lie in (0, 1), got {t}"
            )));
        }
        cfg.rel_tol = t;
    }
    Ok(cfg)
}

pub fn invariants(m1: u64, m2: u64, method: Method, common: &Common) -> CmdResult {
    let cfg = quadrature_with_tol(common)?;
    let mut r = Report::new("invariants", common.seed, None);
    r.input("m1", m1);
    r.input("m2", m2);
    r.input("method", format!("{method:?}").to_lowercase());
    let c1 = c1_closed(m1, m2)?;
    let chi = chi_closed(m1, m2)?;
    let (c1v, chiv) = (ratio_to_f64(c1), ratio_to_f64(chi));
    r.quantity(Quantity::exact("c1", c1v, "closed_form").with_exact(c1.to_string()));
    r.quantity(Quantity::exact("chi", chiv, "closed_form").with_exact(chi.to_string()));
    if matches!(method, Method::Quadrature | Method::All) {
        let q = c1_quadrature(m1, m2, &cfg)?;
        r.quantity(Quantity::new("c1", q.value, q.error_estimate, "quadrature"));
        r.quantity(Quantity::new(
            "c1_delta",
            q.value - c1v,
            q.error_estimate,
            "quadrature",
        ));
        let q = chi_quadrature(m1, m2, &cfg)?;
        r.quantity(Quantity::new(
            "chi",
            q.value,
            q.error_estimate,
            "quadrature",
        ));
        r.quantity(Quantity::new(
            "chi_delta",
            q.value - chiv,
            q.error_estimate,
            "quadrature",
        ));
    }
    if matches!(method, Method::Boundary | Method::All) {
        let b = chi_boundary(m1, m2)?;
        let err = 1e-10 * b.abs().max(1.0);
        r.quantity(Quantity::new("chi", b, err, "boundary"));
        r.quantity(Quantity::new("chi_delta", b - chiv, err, "boundary"));
    }
    Ok(r)
}

/// Bounds for the weighted Hopf fibration over `CP^1(m1, m2)`.
pub fn bound_pair(m1: u64, m2: u64, common: &Common) -> CmdResult {
    let mut r = Report::new("bound", common.seed, None);
    r.input("m1", m1);
    r.input("m2", m2);
    let c1 = ratio_to_f64(c1_closed(m1, m2)?);
    let chi = ratio_to_f64(chi_closed(m1, m2)?);
    r.case = Some("i".into());
    let main = bound_theorem_main(chi, c1)?;
    let sigma = sigma_s3();
    r.quantity(Quantity::exact("sigma_s3", sigma, "closed_form"));
    r.quantity(Quantity::exact("main_bound", main, "closed_form"));
    r.quantity(Quantity::exact(
        "weighted_hopf",
        bound_weighted_hopf(m1, m2)?,
        "closed_form",
    ));
    r.quantity(Quantity::exact("factor", main / sigma, "closed_form"));
    let metric = InvariantMetric::weighted_hopf(wps_profile(m1, m2, DEFAULT_GRID)?, 1.0)?;
    let data = ClosedFormData::from_metric(&metric)?;
    push_model_bounds(&mut r, &data)?;
    Ok(r)
}

fn push_model_bounds(r: &mut Report, data: &ClosedFormData) -> Result<(), CliError> {
    let err = 1e-9;
    if data.chi > 0.0 && data.omega_l1 > 0.0 {
        let cs = bound_cauchy_schwarz(data)?;
        r.quantity(Quantity::new(
            "cauchy_schwarz",
            cs,
            err * cs,
            "closed_form_with_quadrature",
        ));
    }
    match optimal_ell(data) {
        Ok((ell, j)) => {
            r.quantity(Quantity::new(
                "optimal_ell",
                ell,
                err * ell,
                "closed_form_with_quadrature",
            ));
            r.quantity(Quantity::new(
                "j_max",
                j,
                err * j.abs(),
                "closed_form_with_quadrature",
            ));
        }
        Err(Error::CaseII) => r.quantity(Quantity::exact("j_sup", f64::INFINITY, "case_ii")),
        Err(Error::CaseIII { .. }) => r.quantity(Quantity::exact("j_sup", 0.0, "case_iii")),
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

pub fn bound_model(path: &Path, common: &Common) -> CmdResult {
    let mut warnings = Vec::new();
    let m = load(path, &mut warnings)?;
    let mut r = Report::new("bound", common.seed, Some(m.spec));
    r.warnings = warnings;
    let flag = ScanFlag::classify(&m.data);
    r.case = Some(case_name(flag).into());
    r.quantity(Quantity::new("chi", m.data.chi, 0.0, "profile"));
    r.quantity(Quantity::new("chern", m.data.chern, 1e-10, "quadrature"));
    if m.data.chi > 0.0 && m.data.chern != 0.0 {
        let b = bound_theorem_main(m.data.chi, m.data.chern)?;
        r.quantity(Quantity::new(
            "main_bound",
            b,
            1e-9 * b,
            "closed_form_with_quadrature",
        ));
    }
    push_model_bounds(&mut r, &m.data)?;
    Ok(r)
}

pub fn bound_hebey_vaugon(n: u32, k: Option<u64>, common: &Common) -> CmdResult {
    let mut r = Report::new("bound", common.seed, None);
    r.input("n", n as u64);
    match k {
        Some(k) => r.input("k", k),
        None => r.input("k", "none"),
    }
    r.quantity(Quantity::exact(
        "hebey_vaugon",
        hebey_vaugon_bound(n, k)?,
        "closed_form",
    ));
    Ok(r)
}

pub fn functional(path: &Path, ell: Option<EllArg>, common: &Common) -> CmdResult {
    let mut warnings = Vec::new();
    let m = load(path, &mut warnings)?;
    let mut r = Report::new("functional", common.seed, Some(m.spec));
    r.warnings = warnings;
    r.case = Some(case_name(ScanFlag::classify(&m.data)).into());
    let with_ell = |v: f64| m.metric.with_ell(Arc::new(Constant(v)) as Arc<dyn Radial>);
    match ell {
        None | Some(EllArg::Value(_)) => {
            let metric = match ell {
                Some(EllArg::Value(v)) => {
                    r.input("ell", v);
                    with_ell(v)?
                }
                _ => m.metric.clone(),
            };
            let j = functional_j(&metric)?;
            r.quantity(Quantity::new("j", j.j, j.error_estimate, "base_integral"));
            r.quantity(Quantity::new(
                "j",
                j.j_direct,
                j.error_estimate,
                "scalar_curvature_integral",
            ));
            r.quantity(Quantity::new(
                "total_scalar_curvature",
                j.numerator,
                j.error_estimate * j.denominator,
                "base_integral",
            ));
            r.quantity(Quantity::new(
                "volume",
                j.denominator.powi(3),
                1e-12 * j.denominator.powi(3),
                "base_integral",
            ));
        }
        Some(EllArg::Scan { lo, hi, n }) => {
            r.input("ell", format!("scan:{lo}:{hi}:{n}"));
            let mut t = Table::new("functional", &["ell", "j", "error_estimate"]);
            let mut best = (f64::NAN, f64::NEG_INFINITY, 0.0);
            for v in log_grid(lo, hi, n)? {
                let j = functional_j(&with_ell(v)?)?;
                t.push(&[v, j.j, j.error_estimate]);
                if j.j > best.1 {
                    best = (v, j.j, j.error_estimate);
                }
            }
            r.tables.push(t);
            r.quantity(Quantity::exact("argmax_ell", best.0, "grid"));
            r.quantity(Quantity::new("max_j", best.1, best.2, "base_integral"));
        }
    }
    Ok(r)
}

pub fn minimize(path: &Path, grid: usize, max_iterations: usize, common: &Common) -> CmdResult {
    let mut warnings = Vec::new();
    let m = load(path, &mut warnings)?;
    let mut cfg = MinimizerConfig {
        grid,
        max_iterations,
        ..MinimizerConfig::default()
    };
    if let Some(t) = common.tol {
        cfg.tolerance = t;
    }
    cfg.validate()?;
    let initial: Vec<f64> = match common.seed {
        None => vec![1.0; grid + 1],
        Some(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..=grid)
                .map(|_| 1.0 + 0.1 * rng.gen_range(-1.0..1.0))
                .collect()
        }
    };
    let res = minimize_conformal_from(&m.metric, &cfg, &initial)?;
    let mut r = Report::new("minimize", common.seed, Some(m.spec));
    r.warnings = warnings;
    r.input("grid", grid as u64);
    r.input("tolerance", cfg.tolerance);
    let n = res.trace.len();
    let last_step = if n >= 2 {
        (res.trace[n - 2] - res.trace[n - 1]).abs()
    } else {
        0.0
    };
    r.quantity(Quantity::new(
        "mu_upper",
        res.mu_upper,
        last_step,
        "minimizer",
    ));
    r.quantity(Quantity::exact("j_start", res.trace[0], "minimizer"));
    r.quantity(Quantity::count(
        "iterations",
        res.iterations as u64,
        "minimizer",
    ));
    r.input("converged", if res.converged { "true" } else { "false" });
    let mut trace = Table::new("trace", &["iteration", "value"]);
    for (i, v) in res.trace.iter().enumerate() {
        trace.push(&[i as f64, *v]);
    }
    let mut u = Table::new("u_star", &["s", "u"]);
    for i in 0..=res.u_star.cells() {
        u.push(&[res.u_star.node(i), res.u_star.values()[i]]);
    }
    r.tables.push(trace);
    r.tables.push(u);
    Ok(r)
}

pub fn scan(path: &Path, ell: Option<EllArg>, collapse: bool, common: &Common) -> CmdResult {
    let mut warnings = Vec::new();
    let m = load(path, &mut warnings)?;
    let flag = ScanFlag::classify(&m.data);
    let grid = match ell {
        Some(EllArg::Scan { lo, hi, n }) => log_grid(lo, hi, n)?,
        Some(EllArg::Value(v)) => vec![v],
        None => match flag {
            ScanFlag::MaxInterior => {
                let (star, _) = optimal_ell(&m.data)?;
                default_log_grid(star / 10.0, star * 10.0)?
            }
            ScanFlag::DivergesAsEllGrows => default_log_grid(1.0, 1000.0)?,
            ScanFlag::SupZeroNotAttained => default_log_grid(0.01, 1.0)?,
        },
    };
    let mut r = Report::new("scan", common.seed, Some(m.spec));
    r.warnings = warnings;
    r.case = Some(case_name(flag).into());
    r.input("flag", flag.name());
    if collapse {
        let mut t = Table::new("collapse", &["ell", "upper", "lower"]);
        for &v in &grid {
            let (up, lo) = collapse_bounds(&m.data, v)?;
            t.push(&[v, up, lo]);
        }
        r.tables.push(t);
    }
    let table = ell_scan(&m.data, &grid)?;
    let mut t = if table.rows.iter().any(|row| row.lower.is_some()) {
        Table::new("scan", &["ell", "j", "lower"])
    } else {
        Table::new("scan", &["ell", "j"])
    };
    for row in &table.rows {
        match row.lower {
            Some(l) => t.push(&[row.ell, row.j, l]),
            None => t.push(&[row.ell, row.j]),
        }
    }
    r.tables.push(t);
    if let Some((e, c)) = table.fit {
        r.quantity(Quantity::new("fit_exponent", e, 0.0, "least_squares"));
        r.quantity(Quantity::new("fit_coefficient", c, 0.0, "least_squares"));
    }
    if let Ok((e, _)) = fit_lower_exponent(&table) {
        r.quantity(Quantity::new("fit_lower_exponent", e, 0.0, "least_squares"));
    }
    Ok(r)
}

pub fn laplace(path: &Path, common: &Common) -> CmdResult {
    let mut warnings = Vec::new();
    let m = load(path, &mut warnings)?;
    let u = uniformize_positive(m.metric.base())?;
    let mut r = Report::new("laplace", common.seed, Some(m.spec));
    r.warnings = warnings;
    r.quantity(Quantity::new(
        "min_scal",
        u.min_scal,
        u.max_relative_deviation * u.target,
        "spline_solve",
    ));
    r.quantity(Quantity::new(
        "target",
        u.target,
        1e-12 * u.target,
        "quadrature",
    ));
    r.quantity(Quantity::exact(
        "max_relative_deviation",
        u.max_relative_deviation,
        "spline_solve",
    ));
    let mut t = Table::new("u", &["s", "u"]);
    for i in 0..=u.u.cells() {
        t.push(&[u.u.node(i), u.u.values()[i]]);
    }
    r.tables.push(t);
    Ok(r)
}
