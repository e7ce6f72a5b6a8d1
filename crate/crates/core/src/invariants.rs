//! Chern number and orbifold Euler characteristic of the weighted Hopf
//! fibration over `CP^1(m1, m2)`.
//!
//! Each invariant is available in closed form (exact rationals) and by
//! quadrature over the chart of [`WpsChart`]; the Euler characteristic
//! additionally by its boundary-term form.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::numerics::{
    integrate, polynomial_extrapolate, EndpointMode, IntegralResult, QuadratureConfig,
};
use crate::orbifold::WpsChart;

/// Largest distance to an endpoint used when extrapolating one-sided limits,
/// in units of the chart's feature width at that end.
const LIMIT_START: f64 = 1e-2;
const LIMIT_LEVELS: usize = 6;
const LIMIT_TOL: f64 = 1e-10;

/// `c1 = 1/(m1 m2)`.
pub fn c1_closed(m1: u64, m2: u64) -> Result<Ratio<u64>> {
    WpsChart::new(m1, m2)?;
    Ok(Ratio::new(1, m1 * m2))
}

/// `chi = 1/m1 + 1/m2`.
pub fn chi_closed(m1: u64, m2: u64) -> Result<Ratio<u64>> {
    WpsChart::new(m1, m2)?;
    Ok(Ratio::new(m1 + m2, m1 * m2))
}

/// `int_0^1 m1 m2 / (m2^2 + (m1^2 - m2^2) r)^2 dr`.
pub fn c1_quadrature(m1: u64, m2: u64, cfg: &QuadratureConfig) -> Result<IntegralResult> {
    let chart = WpsChart::new(m1, m2)?;
    let (w1, w2) = (m1 as f64, m2 as f64);
    let cfg = match cfg.endpoint_mode {
        // The integrand is smooth up to both ends.
        EndpointMode::EpsilonCutoff => cfg.clone().with_mode(EndpointMode::Plain),
        _ => cfg.clone(),
    };
    integrate(
        |r| {
            let a = chart.a(r).0;
            w1 * w2 / (a * a)
        },
        0.0,
        1.0,
        &cfg,
    )
}

/// Gauss curvature of the quotient metric at chart parameter `r`.
pub fn kappa(m1: u64, m2: u64, r: f64) -> Result<f64> {
    kappa_on(&WpsChart::new(m1, m2)?, r)
}

/// [`kappa`] for an existing chart.
///
/// With `W = lambda2 lambda1' gamma / (lambda1 gamma')`,
/// `kappa = 4 W' lambda2 gamma / gamma' - 4 W^2`.
pub fn kappa_on(chart: &WpsChart, r: f64) -> Result<f64> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::Domain {
            point: r,
            context: "kappa needs r in (0, 1)",
        });
    }
    let l1 = chart.lambda1(r);
    let l2 = chart.lambda2(r);
    let (g, dg) = chart.gamma_log_derivative(r);
    let den = l1.value * g;
    let dden = l1.d1 * g + l1.value * dg;
    let num = l2.value * l1.d1;
    let dnum = l2.d1 * l1.d1 + l2.value * l1.d2;
    let w = num / den;
    let dw = (dnum * den - num * dden) / (den * den);
    Ok(4.0 * dw * l2.value / g - 4.0 * w * w)
}

/// Width in `t` over which `A(t)` changes by a relative amount of order one
/// next to the pole `t = 0` (`at_one == false`) or `t = 1`, capped at 1.
fn feature_width(m1: u64, m2: u64, at_one: bool) -> f64 {
    let (w1, w2) = (m1 as f64, m2 as f64);
    let jump = (w1 * w1 - w2 * w2).abs();
    let end = if at_one { w1 * w1 } else { w2 * w2 };
    if jump == 0.0 {
        1.0
    } else {
        (end / jump).min(1.0)
    }
}

/// Orbifold Euler characteristic as `-(1/2) int_0^1 kappa gamma' /
/// (lambda1 lambda2 gamma) dr`, with the configured endpoint treatment.
///
/// For very unequal weights the cutoff `epsilon` is shrunk by the feature
/// width of the chart so that the cut-off pieces stay in the asymptotic
/// regime of the extrapolation.
pub fn chi_quadrature(m1: u64, m2: u64, cfg: &QuadratureConfig) -> Result<IntegralResult> {
    let chart = WpsChart::new(m1, m2)?;
    let width = feature_width(m1, m2, false).min(feature_width(m1, m2, true));
    let mut cfg = cfg.clone();
    cfg.epsilon *= width;
    if width < 1.0 {
        cfg.panels = ((cfg.panels as f64) / width.sqrt()).ceil() as usize;
    }
    let integrand = |r: f64| {
        let k = kappa_on(&chart, r).unwrap_or(f64::NAN);
        let (g, _) = chart.gamma_log_derivative(r);
        -0.5 * k * g / (chart.lambda1(r).value * chart.lambda2(r).value)
    };
    integrate(integrand, 0.0, 1.0, &cfg)
}

/// The boundary term `lambda2 lambda1' gamma / (lambda1^2 gamma')`.
fn boundary_term(chart: &WpsChart, r: f64) -> f64 {
    let l1 = chart.lambda1(r);
    let l2 = chart.lambda2(r).value;
    let (g, _) = chart.gamma_log_derivative(r);
    l2 * l1.d1 / (l1.value * l1.value * g)
}

/// One-sided limit of `f(delta)` as `delta -> 0+` by polynomial
/// extrapolation over a halving sequence of distances.
fn one_sided_limit(f: impl Fn(f64) -> f64, width: f64) -> Result<f64> {
    let xs: Vec<f64> = (0..LIMIT_LEVELS)
        .map(|k| width * LIMIT_START / 2f64.powi(k as i32))
        .collect();
    let ys: Vec<f64> = xs.iter().map(|&d| f(d)).collect();
    let full = polynomial_extrapolate(&xs, &ys, 0.0);
    let coarse = polynomial_extrapolate(&xs[..LIMIT_LEVELS - 1], &ys[..LIMIT_LEVELS - 1], 0.0);
    let spread = (full - coarse).abs();
    if !(spread <= LIMIT_TOL * full.abs().max(1.0)) {
        return Err(Error::LimitNotConverged { spread });
    }
    Ok(full)
}

/// Orbifold Euler characteristic from the boundary form
/// `2 ([.](0+) - [.](1-))` of the curvature integral.
pub fn chi_boundary(m1: u64, m2: u64) -> Result<f64> {
    let chart = WpsChart::new(m1, m2)?;
    let at_zero = one_sided_limit(|d| boundary_term(&chart, d), feature_width(m1, m2, false))?;
    let at_one = one_sided_limit(
        |d| boundary_term(&chart, 1.0 - d),
        feature_width(m1, m2, true),
    )?;
    Ok(2.0 * (at_zero - at_one))
}

/// All routes for one weight pair.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantReport {
    pub m1: u64,
    pub m2: u64,
    pub c1_closed: Ratio<u64>,
    pub c1_quadrature: IntegralResult,
    pub chi_closed: Ratio<u64>,
    pub chi_quadrature: IntegralResult,
    pub chi_boundary: f64,
    /// Spread of the boundary-limit extrapolation bounds this from above.
    pub chi_boundary_error: f64,
}

impl InvariantReport {
    pub fn compute(m1: u64, m2: u64, cfg: &QuadratureConfig) -> Result<Self> {
        Ok(Self {
            m1,
            m2,
            c1_closed: c1_closed(m1, m2)?,
            c1_quadrature: c1_quadrature(m1, m2, cfg)?,
            chi_closed: chi_closed(m1, m2)?,
            chi_quadrature: chi_quadrature(m1, m2, cfg)?,
            chi_boundary: chi_boundary(m1, m2)?,
            chi_boundary_error: LIMIT_TOL,
        })
    }
}

pub fn ratio_to_f64(r: Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}
