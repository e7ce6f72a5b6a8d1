//! Einstein–Hilbert and Yamabe functionals in dimension 3, the optimal
//! fibre length, and the closed-form upper bounds.

use std::f64::consts::PI;

use crate::bundle::InvariantMetric;
use crate::error::{Error, Result};
use crate::invariants::{c1_closed, chi_closed, ratio_to_f64};
use crate::numerics::minimize_scalar;
use crate::orbifold::WpsChart;
use crate::radial::{Jet, Radial};

/// Relative agreement required between the two routes of [`functional_j`].
pub const ROUTE_TOL: f64 = 1e-8;

/// Volume of the round unit `n`-sphere, from `vol(S^0) = 2`,
/// `vol(S^1) = 2 pi` and `vol(S^n) = 2 pi vol(S^(n-2)) / (n - 1)`.
pub fn sphere_volume(n: u32) -> f64 {
    match n {
        0 => 2.0,
        1 => 2.0 * PI,
        _ => 2.0 * PI * sphere_volume(n - 2) / (n - 1) as f64,
    }
}

/// Yamabe invariant of the round sphere, `n (n - 1) vol(S^n)^(2/n)`.
pub fn sigma_sphere(n: u32) -> f64 {
    let nf = n as f64;
    nf * (nf - 1.0) * sphere_volume(n).powf(2.0 / nf)
}

/// `sigma(S^3) = 3 * 2^(5/3) * pi^(4/3)`.
pub fn sigma_s3() -> f64 {
    sigma_sphere(3)
}

/// Curvature density `F = 2 m1 m2 / A(t)^(3/2)` of the weighted Hopf
/// connection in the unit frame of the quotient metric.
pub fn wps_curvature_density(m1: u64, m2: u64, t: f64) -> Result<f64> {
    let chart = WpsChart::new(m1, m2)?;
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::Domain {
            point: t,
            context: "curvature density needs t in (0, 1)",
        });
    }
    Ok(wps_curvature_density_jet(&chart, t).value)
}

/// `F` and its first two `t`-derivatives. Defined up to the poles.
pub fn wps_curvature_density_jet(chart: &WpsChart, t: f64) -> Jet {
    let (m1, m2) = chart.weights();
    let k = 2.0 * (m1 * m2) as f64;
    let (a, da) = chart.a(t);
    let f = k * a.powf(-1.5);
    Jet::new(f, -1.5 * f * da / a, 3.75 * f * da * da / (a * a))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// `2 pi int (Scal_g - l^2 |Omega|^2 / 4) l dv_g / vol^(1/3)`.
    BaseIntegral,
    /// Closed form for constant fibre length.
    ClosedForm,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct YamabeReport {
    pub j: f64,
    /// Total scalar curvature of the bundle metric.
    pub numerator: f64,
    /// `vol^(1/3)`.
    pub denominator: f64,
    pub route: Route,
    /// The same functional from `int Scal_g~ dv_g~`.
    pub j_direct: f64,
    pub error_estimate: f64,
}

/// Einstein–Hilbert functional of the bundle metric, computed from the base
/// integral and checked against the direct integral of the O'Neill scalar
/// curvature.
pub fn functional_j(metric: &InvariantMetric) -> Result<YamabeReport> {
    let base = metric.base();
    let ell = metric.ell();
    let f = metric.density();
    let term = |s: f64| {
        let l = ell.value(s);
        let fv = f.value(s);
        (2.0 * base.curvature_or_limit(s) - 0.5 * l * l * fv * fv) * l
    };
    let base_route = metric.integrate_base(term)?;
    let direct = metric.integrate_base(|s| metric.scalar_curvature_or_limit(s) * ell.value(s))?;
    let magnitude = metric.integrate_base_abs_pow(term, 1.0)?.value
        + metric
            .integrate_base_abs_pow(|s| metric.laplacian_term(s) * ell.value(s), 1.0)?
            .value;
    let vol = metric.volume_total()?;
    let denominator = vol.cbrt();
    let numerator = 2.0 * PI * base_route.value;
    let direct_num = 2.0 * PI * direct.value;
    let tol = ROUTE_TOL * 2.0 * PI * magnitude.max(f64::MIN_POSITIVE);
    if !((numerator - direct_num).abs() <= tol) {
        return Err(Error::InconsistentRoutes {
            first: numerator / denominator,
            second: direct_num / denominator,
        });
    }
    Ok(YamabeReport {
        j: numerator / denominator,
        numerator,
        denominator,
        route: Route::BaseIntegral,
        j_direct: direct_num / denominator,
        error_estimate: 2.0
            * PI
            * (base_route.error_estimate + (numerator - direct_num).abs() / (2.0 * PI))
            / denominator,
    })
}

/// The quantities of a base and density that the closed forms need.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormData {
    pub area: f64,
    pub chi: f64,
    pub omega_l2_sq: f64,
    pub omega_l1: f64,
    /// `(||Omega||_3)^2`.
    pub omega_l3_sq: f64,
    /// `||Scal_g||_{3/2}` of the base.
    pub scal_l32: f64,
    pub chern: f64,
}

impl ClosedFormData {
    /// Reads area, Euler characteristic and norms off a metric; the fibre
    /// length of the metric is ignored.
    pub fn from_metric(metric: &InvariantMetric) -> Result<Self> {
        let norms = metric.omega_norms()?;
        Ok(Self {
            area: metric.base().area()?,
            chi: metric.base().euler_characteristic(),
            omega_l2_sq: norms.omega_l2_sq,
            omega_l1: norms.omega_l1,
            omega_l3_sq: norms.omega_l3_sq,
            scal_l32: norms.scal_l32,
            chern: norms.chern_number,
        })
    }
}

/// `J = (pi^2 / (16 area))^(1/3) (16 pi chi l^(2/3) - ||Omega||_2^2 l^(8/3))`
/// for constant fibre length `l`.
pub fn functional_j_closed(data: &ClosedFormData, ell: f64) -> Result<f64> {
    if !(ell > 0.0 && ell.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "fibre length {ell} must be positive"
        )));
    }
    let pre = (PI * PI / (16.0 * data.area)).cbrt();
    Ok(pre * (16.0 * PI * data.chi * ell.powf(2.0 / 3.0) - data.omega_l2_sq * ell.powf(8.0 / 3.0)))
}

fn check_positive_case(data: &ClosedFormData, norm: f64) -> Result<()> {
    if !(data.chi > 0.0) {
        return Err(Error::CaseIII { chi: data.chi });
    }
    if !(norm > 0.0) {
        return Err(Error::CaseII);
    }
    Ok(())
}

/// Maximizer `l* = sqrt(4 pi chi) / ||Omega||_2` of [`functional_j_closed`]
/// and the maximum `3 2^(4/3) pi^2 area^(-1/3) chi^(4/3) ||Omega||_2^(-2/3)`.
pub fn optimal_ell(data: &ClosedFormData) -> Result<(f64, f64)> {
    check_positive_case(data, data.omega_l2_sq)?;
    let norm = data.omega_l2_sq.sqrt();
    let ell = (4.0 * PI * data.chi).sqrt() / norm;
    let j = 3.0
        * 2f64.powf(4.0 / 3.0)
        * PI
        * PI
        * data.area.powf(-1.0 / 3.0)
        * data.chi.powf(4.0 / 3.0)
        / norm.powf(2.0 / 3.0);
    Ok((ell, j))
}

/// Maximizer of [`functional_j_closed`] found by golden-section search in
/// `log l` over `[1e-6, 1e6]`.
pub fn optimal_ell_search(data: &ClosedFormData, tol: f64) -> Result<(f64, f64)> {
    check_positive_case(data, data.omega_l2_sq)?;
    let f = |x: f64| -functional_j_closed(data, x.exp()).unwrap_or(f64::INFINITY);
    let (x, v) = minimize_scalar(f, -6.0 * 10f64.ln(), 6.0 * 10f64.ln(), tol)?;
    Ok((x.exp(), -v))
}

/// `3 2^(4/3) pi^2 chi^(4/3) ||Omega||_1^(-2/3)`, an upper bound for the
/// maximum over the fibre length.
pub fn bound_cauchy_schwarz(data: &ClosedFormData) -> Result<f64> {
    check_positive_case(data, data.omega_l1)?;
    Ok(
        3.0 * 2f64.powf(4.0 / 3.0) * PI * PI * data.chi.powf(4.0 / 3.0)
            / data.omega_l1.powf(2.0 / 3.0),
    )
}

/// `sigma(S^3) (chi / (2 sqrt|c1|))^(4/3)`.
pub fn bound_theorem_main(chi: f64, c1: f64) -> Result<f64> {
    if !(chi > 0.0 && c1 != 0.0 && chi.is_finite() && c1.is_finite()) {
        return Err(Error::InvalidCase(format!(
            "needs chi > 0 and c1 != 0 (got chi = {chi}, c1 = {c1})"
        )));
    }
    Ok(sigma_s3() * (chi / (2.0 * c1.abs().sqrt())).powf(4.0 / 3.0))
}

/// `sigma(S^3) ((m1 + m2) / (2 sqrt(m1 m2)))^(4/3)`.
pub fn bound_weighted_hopf(m1: u64, m2: u64) -> Result<f64> {
    WpsChart::new(m1, m2)?;
    let (a, b) = (m1 as f64, m2 as f64);
    Ok(sigma_s3() * ((a + b) / (2.0 * (a * b).sqrt())).powf(4.0 / 3.0))
}

/// The main bound fed with the exact invariants of `CP^1(m1, m2)`.
pub fn bound_weighted_hopf_via_invariants(m1: u64, m2: u64) -> Result<f64> {
    bound_theorem_main(
        ratio_to_f64(chi_closed(m1, m2)?),
        ratio_to_f64(c1_closed(m1, m2)?),
    )
}

/// `sigma(S^n) k^(2/n)`; `None` stands for an infinite minimal orbit, where
/// the bound is vacuous.
pub fn hebey_vaugon_bound(n: u32, k: Option<u64>) -> Result<f64> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "dimension {n} must be at least 3"
        )));
    }
    match k {
        None => Ok(f64::INFINITY),
        Some(0) => Err(Error::InvalidArgument(
            "orbit cardinality must be positive".into(),
        )),
        Some(k) => Ok(sigma_sphere(n) * (k as f64).powf(2.0 / n as f64)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    TheoremMain,
    WeightedHopf,
    CauchySchwarz,
    HebeyVaugon,
    OptimalEll,
}

impl BoundKind {
    pub fn name(&self) -> &'static str {
        match self {
            BoundKind::TheoremMain => "main_bound",
            BoundKind::WeightedHopf => "weighted_hopf",
            BoundKind::CauchySchwarz => "cauchy_schwarz",
            BoundKind::HebeyVaugon => "hebey_vaugon",
            BoundKind::OptimalEll => "optimal_ell",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub value: f64,
    pub inputs: Vec<(&'static str, f64)>,
}

/// Yamabe functional of `u^4 g~` for a positive radial `u`:
/// `int 2 pi l (8 |du|^2 + Scal u^2) dv / (int 2 pi l u^6 dv)^(1/3)`.
pub fn conformal_functional(metric: &InvariantMetric, u: &dyn Radial) -> Result<f64> {
    let len = metric.base().length();
    let n = 4 * metric.base().grid().max(64);
    for i in 0..=n {
        let s = len * i as f64 / n as f64;
        let v = u.value(s);
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::NonPositiveU { value: v, at: s });
        }
    }
    let ell = metric.ell();
    let num = metric.integrate_base(|s| {
        let j = u.jet(s);
        ell.value(s) * (8.0 * j.d1 * j.d1 + metric.scalar_curvature_or_limit(s) * j.value * j.value)
    })?;
    let den = metric.integrate_base(|s| ell.value(s) * u.value(s).powi(6))?;
    Ok(2.0 * PI * num.value / (2.0 * PI * den.value).cbrt())
}
