//! Rotationally symmetric 2-orbifold bases.
//!
//! A spherical base is a metric `ds^2 + phi(s)^2 dtheta^2` on `[0, L] x S^1`
//! with `phi(0) = phi(L) = 0`; the slopes `phi'(0) = 1/m_start` and
//! `phi'(L) = -1/m_end` make the poles cone points of orders `m_start` and
//! `m_end`. Flat tori (`phi` constant, `s` periodic) cover the
//! non-positive Euler characteristic case.

mod chart;
mod sampled;

use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::Arc;

pub use chart::WpsChart;
use sampled::OddPeriodicSpline;

use crate::error::{Error, Result};
use crate::numerics::{
    integrate, polynomial_extrapolate, GaussRule, IntegralResult, QuadratureConfig,
};
use crate::radial::Jet;

pub const DEFAULT_GRID: usize = 512;

/// Tolerance on the cone slopes `phi'(0) = 1/m_start`, `phi'(L) = -1/m_end`.
pub const CONE_SLOPE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
enum Shape {
    Round {
        radius: f64,
    },
    /// `phi = R sin(s/R) (1 + a sin^2(s/R))`.
    Bumped {
        radius: f64,
        amplitude: f64,
    },
    Wps {
        chart: WpsChart,
        map: Arc<ArclengthMap>,
    },
    Sampled(Arc<OddPeriodicSpline>),
}

/// Spherical base with (at most) two cone points.
#[derive(Debug, Clone, PartialEq)]
pub struct ConeSurfaceProfile {
    shape: Shape,
    /// Homothety factor `c`: the profile is `c * phi0(s / c)`.
    scale: f64,
    base_length: f64,
    m_start: u64,
    m_end: u64,
    grid: usize,
}

/// Round sphere of radius `radius`: `phi = R sin(s/R)`, `L = pi R`.
pub fn make_round_sphere(radius: f64) -> Result<ConeSurfaceProfile> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::InvalidProfile(format!(
            "radius {radius} must be positive"
        )));
    }
    Ok(ConeSurfaceProfile {
        shape: Shape::Round { radius },
        scale: 1.0,
        base_length: PI * radius,
        m_start: 1,
        m_end: 1,
        grid: DEFAULT_GRID,
    })
}

/// Round sphere with a smooth rotationally symmetric bump,
/// `phi = R sin(s/R) (1 + a sin^2(s/R))` with `a > -1`. Both poles stay
/// smooth points.
pub fn make_bumped_sphere(radius: f64, amplitude: f64) -> Result<ConeSurfaceProfile> {
    if !(amplitude > -1.0 && amplitude.is_finite()) {
        return Err(Error::InvalidProfile(format!(
            "bump amplitude {amplitude} must exceed -1"
        )));
    }
    let mut p = make_round_sphere(radius)?;
    p.shape = Shape::Bumped { radius, amplitude };
    Ok(p)
}

/// Quotient metric of the weighted Hopf action on the round unit 3-sphere,
/// resampled to arclength.
///
/// The chart gives the circumference radius `1/|lambda1(t)|` and the
/// arclength element `|gamma'|/(2 gamma |lambda2|) dt`; the arclength map is
/// tabulated on `grid` cells. The pole `t = 0` (arclength 0) carries the
/// cone order `m2`, the pole `t = 1` the order `m1`.
pub fn wps_profile(m1: u64, m2: u64, grid: usize) -> Result<ConeSurfaceProfile> {
    let chart = WpsChart::new(m1, m2)?;
    if grid < 2 {
        return Err(Error::GridTooCoarse {
            grid,
            reason: "need at least two cells".into(),
        });
    }
    let map = ArclengthMap::build(&chart, grid);
    let p = ConeSurfaceProfile {
        shape: Shape::Wps {
            chart,
            map: Arc::new(map.clone()),
        },
        scale: 1.0,
        base_length: map.length(),
        m_start: m2,
        m_end: m1,
        grid,
    };
    p.check_cone_orders()?;
    Ok(p)
}

/// Profile from samples `(s, phi)` with `s` running from 0 to `L`.
pub fn sampled_profile(
    samples: &[(f64, f64)],
    m_start: u64,
    m_end: u64,
) -> Result<ConeSurfaceProfile> {
    if m_start == 0 || m_end == 0 {
        return Err(Error::InvalidProfile("cone orders must be positive".into()));
    }
    let spline = OddPeriodicSpline::new(samples)?;
    let p = ConeSurfaceProfile {
        base_length: spline.length(),
        grid: spline.cells(),
        shape: Shape::Sampled(Arc::new(spline)),
        scale: 1.0,
        m_start,
        m_end,
    };
    p.check_cone_orders()?;
    Ok(p)
}

impl ConeSurfaceProfile {
    pub fn length(&self) -> f64 {
        self.scale * self.base_length
    }

    /// Homothety factor relative to the profile as constructed.
    pub fn homothety(&self) -> f64 {
        self.scale
    }

    pub fn cone_orders(&self) -> (u64, u64) {
        (self.m_start, self.m_end)
    }

    /// Number of cells of the arclength grid used by grid-based solvers.
    pub fn grid(&self) -> usize {
        self.grid
    }

    pub fn with_grid(mut self, grid: usize) -> Result<Self> {
        if grid < 2 {
            return Err(Error::GridTooCoarse {
                grid,
                reason: "need at least two cells".into(),
            });
        }
        if let Shape::Wps { chart, .. } = &self.shape {
            self.shape = Shape::Wps {
                chart: *chart,
                map: Arc::new(ArclengthMap::build(chart, grid)),
            };
        }
        self.grid = grid;
        self.check_cone_orders()?;
        Ok(self)
    }

    /// The metric `c^2 g`.
    pub fn scaled(&self, c: f64) -> Self {
        Self {
            scale: self.scale * c,
            ..self.clone()
        }
    }

    /// Orbifold Euler characteristic `1/m_start + 1/m_end`.
    pub fn euler_characteristic(&self) -> f64 {
        1.0 / self.m_start as f64 + 1.0 / self.m_end as f64
    }

    pub fn wps_chart(&self) -> Option<WpsChart> {
        match &self.shape {
            Shape::Wps { chart, .. } => Some(*chart),
            _ => None,
        }
    }

    /// Chart parameter `t(s)` with `dt/ds` and `d^2t/ds^2` for profiles built
    /// from the weighted projective line chart.
    pub fn chart_parameter(&self, s: f64) -> Option<Jet> {
        let c = self.scale;
        self.unscaled_chart_parameter(s / c)
            .map(|t| Jet::new(t.value, t.d1 / c, t.d2 / (c * c)))
    }

    fn unscaled_chart_parameter(&self, u: f64) -> Option<Jet> {
        self.chart_parameter_split(u).map(|(t, _)| t)
    }

    /// Chart parameter jet together with `1 - t`, computed without
    /// cancellation.
    fn chart_parameter_split(&self, u: f64) -> Option<(Jet, f64)> {
        let Shape::Wps { chart, map } = &self.shape else {
            return None;
        };
        let theta = map.theta_at(u.clamp(0.0, self.base_length));
        let (sin2, cos2) = (2.0 * theta).sin_cos();
        let (st, ct) = theta.sin_cos();
        let (e, de) = map.element(chart, theta);
        Some((
            Jet::new(
                st * st,
                sin2 / e,
                (2.0 * cos2 * e - sin2 * de) / (e * e * e),
            ),
            ct * ct,
        ))
    }

    /// `phi`, `phi'`, `phi''` at arclength `s`.
    pub fn phi_jet(&self, s: f64) -> Jet {
        let c = self.scale;
        let u = s / c;
        let j = self.unscaled_jet(u);
        Jet::new(c * j.value, j.d1, j.d2 / c)
    }

    pub fn phi(&self, s: f64) -> f64 {
        self.phi_jet(s).value
    }

    fn unscaled_jet(&self, u: f64) -> Jet {
        let len = self.base_length;
        if u <= 0.0 {
            return Jet::new(0.0, 1.0 / self.m_start as f64, 0.0);
        }
        if u >= len {
            return Jet::new(0.0, -1.0 / self.m_end as f64, 0.0);
        }
        match &self.shape {
            Shape::Round { radius } => {
                let (sn, cs) = (u / radius).sin_cos();
                Jet::new(radius * sn, cs, -sn / radius)
            }
            Shape::Bumped { radius, amplitude } => {
                let (sn, cs) = (u / radius).sin_cos();
                let a = *amplitude;
                Jet::new(
                    radius * sn * (1.0 + a * sn * sn),
                    cs * (1.0 + 3.0 * a * sn * sn),
                    (-sn + 3.0 * a * (2.0 * sn * cs * cs - sn * sn * sn)) / radius,
                )
            }
            Shape::Wps { chart, .. } => {
                let (t, rest) = self.chart_parameter_split(u).expect("wps shape");
                let p = chart.circumference_radius_split(t.value, rest);
                Jet::new(p.value, p.d1 * t.d1, p.d2 * t.d1 * t.d1 + p.d1 * t.d2)
            }
            Shape::Sampled(spline) => spline.jet(u),
        }
    }

    /// Gauss curvature `-phi''/phi` at an interior point.
    pub fn gauss_curvature(&self, s: f64) -> Result<f64> {
        if !(s > 0.0 && s < self.length()) {
            return Err(Error::Domain {
                point: s,
                context: "Gauss curvature is evaluated at interior points only",
            });
        }
        let j = self.phi_jet(s);
        Ok(-j.d2 / j.value)
    }

    /// Gauss curvature including the pole values, which are extrapolated
    /// from interior points as a series in `s^2`.
    pub fn curvature_or_limit(&self, s: f64) -> f64 {
        let len = self.length();
        let near = len / 64.0;
        if s > 0.0 && s < len && s.min(len - s) > 1e-3 * near {
            return self.gauss_curvature(s).expect("interior point");
        }
        let from_start = s < 0.5 * len;
        let xs: Vec<f64> = (1..=4).map(|k| near * k as f64 / 4.0).collect();
        let ks: Vec<f64> = xs
            .iter()
            .map(|&d| {
                let at = if from_start { d } else { len - d };
                self.gauss_curvature(at).expect("interior point")
            })
            .collect();
        let sq: Vec<f64> = xs.iter().map(|d| d * d).collect();
        let dist = if from_start {
            s.max(0.0)
        } else {
            (len - s).max(0.0)
        };
        polynomial_extrapolate(&sq, &ks, dist * dist)
    }

    /// Slope of `phi` at the poles by Richardson-extrapolated one-sided
    /// differences with step `L / grid`.
    pub fn pole_slopes(&self) -> (f64, f64) {
        let len = self.length();
        let h = len / self.grid as f64;
        let d0 = |h: f64| self.phi(h) / h;
        let d1 = |h: f64| -self.phi(len - h) / h;
        (
            (4.0 * d0(0.5 * h) - d0(h)) / 3.0,
            (4.0 * d1(0.5 * h) - d1(h)) / 3.0,
        )
    }

    pub fn check_cone_orders(&self) -> Result<()> {
        let (start, end) = self.pole_slopes();
        let want_start = 1.0 / self.m_start as f64;
        let want_end = -1.0 / self.m_end as f64;
        let err = (start - want_start).abs().max((end - want_end).abs());
        if !(err <= CONE_SLOPE_TOL) {
            return Err(Error::GridTooCoarse {
                grid: self.grid,
                reason: format!(
                    "pole slopes ({start:.9}, {end:.9}) differ from ({want_start:.9}, {want_end:.9}) by {err:e}"
                ),
            });
        }
        for k in 1..self.grid {
            let s = self.length() * k as f64 / self.grid as f64;
            if !(self.phi(s) > 0.0) {
                return Err(Error::InvalidProfile(format!(
                    "phi not positive at s = {s}"
                )));
            }
        }
        Ok(())
    }
}

/// Flat torus: `phi` constant equal to `radius`, `s` periodic with period
/// `length`.
#[derive(Debug, Clone, PartialEq)]
pub struct FlatTorusBase {
    length: f64,
    radius: f64,
    grid: usize,
}

impl FlatTorusBase {
    pub fn new(length: f64, radius: f64) -> Result<Self> {
        if !(length > 0.0 && radius > 0.0 && length.is_finite() && radius.is_finite()) {
            return Err(Error::InvalidProfile(
                "torus length and radius must be positive".into(),
            ));
        }
        Ok(Self {
            length,
            radius,
            grid: DEFAULT_GRID,
        })
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }
}

/// A base orbifold for an invariant metric.
#[derive(Debug, Clone, PartialEq)]
pub enum Base {
    Cone(ConeSurfaceProfile),
    Torus(FlatTorusBase),
}

impl From<ConeSurfaceProfile> for Base {
    fn from(p: ConeSurfaceProfile) -> Self {
        Base::Cone(p)
    }
}

impl From<FlatTorusBase> for Base {
    fn from(t: FlatTorusBase) -> Self {
        Base::Torus(t)
    }
}

impl Base {
    pub fn length(&self) -> f64 {
        match self {
            Base::Cone(p) => p.length(),
            Base::Torus(t) => t.length,
        }
    }

    pub fn grid(&self) -> usize {
        match self {
            Base::Cone(p) => p.grid,
            Base::Torus(t) => t.grid,
        }
    }

    /// Whether `s` is periodic (torus) rather than running pole to pole.
    pub fn is_periodic(&self) -> bool {
        matches!(self, Base::Torus(_))
    }

    pub fn phi_jet(&self, s: f64) -> Jet {
        match self {
            Base::Cone(p) => p.phi_jet(s),
            Base::Torus(t) => Jet::constant(t.radius),
        }
    }

    pub fn euler_characteristic(&self) -> f64 {
        match self {
            Base::Cone(p) => p.euler_characteristic(),
            Base::Torus(_) => 0.0,
        }
    }

    pub fn scaled(&self, c: f64) -> Self {
        match self {
            Base::Cone(p) => Base::Cone(p.scaled(c)),
            Base::Torus(t) => Base::Torus(FlatTorusBase {
                length: c * t.length,
                radius: c * t.radius,
                grid: t.grid,
            }),
        }
    }

    pub fn as_cone(&self) -> Option<&ConeSurfaceProfile> {
        match self {
            Base::Cone(p) => Some(p),
            Base::Torus(_) => None,
        }
    }

    pub fn gauss_curvature(&self, s: f64) -> Result<f64> {
        match self {
            Base::Cone(p) => p.gauss_curvature(s),
            Base::Torus(_) => Ok(0.0),
        }
    }

    pub fn curvature_or_limit(&self, s: f64) -> f64 {
        match self {
            Base::Cone(p) => p.curvature_or_limit(s),
            Base::Torus(_) => 0.0,
        }
    }

    /// Integral of the radial function `g` against the area form,
    /// `2 pi int_0^L g(s) phi(s) ds`.
    pub fn integrate<G>(&self, g: G, cfg: &QuadratureConfig) -> Result<IntegralResult>
    where
        G: Fn(f64) -> f64,
    {
        let len = self.length();
        let r = integrate(|s| g(s) * self.phi_jet(s).value, 0.0, len, cfg)?;
        Ok(IntegralResult {
            value: 2.0 * PI * r.value,
            error_estimate: 2.0 * PI * r.error_estimate,
            ..r
        })
    }

    pub fn area(&self) -> Result<f64> {
        match self {
            Base::Cone(_) => Ok(self.integrate(|_| 1.0, &QuadratureConfig::plain())?.value),
            Base::Torus(t) => Ok(2.0 * PI * t.radius * t.length),
        }
    }

    /// `(1/2pi) int K dA` by quadrature. For a cone surface this should be
    /// the orbifold Euler characteristic `1/m_start + 1/m_end`.
    pub fn gauss_bonnet_check(&self) -> Result<f64> {
        let cfg = QuadratureConfig::plain();
        let total = self.integrate(|s| self.curvature_or_limit(s), &cfg)?;
        Ok(total.value / (2.0 * PI))
    }
}

/// Arclength along the weighted projective line as a function of the chart
/// angle `theta`, where `t = sin^2(theta)`.
///
/// In `theta` the arclength element `(ds/dt)(dt/dtheta)` is bounded at both
/// poles, so it can be accumulated by plain Gauss quadrature cell by cell
/// and inverted by cubic Hermite interpolation.
#[derive(Debug, Clone, PartialEq)]
struct ArclengthMap {
    theta: Vec<f64>,
    s: Vec<f64>,
    slope: Vec<f64>,
}

impl ArclengthMap {
    fn build(chart: &WpsChart, grid: usize) -> Self {
        let rule = GaussRule::new(8);
        let dtheta = FRAC_PI_2 / grid as f64;
        let theta: Vec<f64> = (0..=grid).map(|j| dtheta * j as f64).collect();
        let mut s = vec![0.0; grid + 1];
        for j in 0..grid {
            let cell = rule.apply(theta[j], theta[j + 1], |th| Self::element_at(chart, th).0);
            s[j + 1] = s[j] + cell;
        }
        // The element has a finite one-sided limit at the poles; sample it
        // just inside.
        let inset = 1e-7 * dtheta;
        let slope: Vec<f64> = theta
            .iter()
            .map(|&th| {
                let th = th.clamp(inset, FRAC_PI_2 - inset);
                1.0 / Self::element_at(chart, th).0
            })
            .collect();
        Self { theta, s, slope }
    }

    fn length(&self) -> f64 {
        *self.s.last().unwrap()
    }

    /// `ds/dtheta` and its `theta`-derivative.
    fn element_at(chart: &WpsChart, theta: f64) -> (f64, f64) {
        let (st, ct) = theta.sin_cos();
        let (sin2, cos2) = (2.0 * theta).sin_cos();
        let (sigma, dsigma) = chart.arclength_element_split(st * st, ct * ct);
        (sigma * sin2, dsigma * sin2 * sin2 + 2.0 * sigma * cos2)
    }

    /// [`Self::element_at`] with the poles replaced by points just inside.
    fn element(&self, chart: &WpsChart, theta: f64) -> (f64, f64) {
        let inset = 1e-7 * FRAC_PI_2 / (self.theta.len() - 1) as f64;
        Self::element_at(chart, theta.clamp(inset, FRAC_PI_2 - inset))
    }

    fn theta_at(&self, s: f64) -> f64 {
        let n = self.s.len() - 1;
        let j = match self.s.partition_point(|&x| x <= s) {
            0 => 0,
            p => (p - 1).min(n - 1),
        };
        let h = self.s[j + 1] - self.s[j];
        let t = ((s - self.s[j]) / h).clamp(0.0, 1.0);
        let (t2, t3) = (t * t, t * t * t);
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        let th = h00 * self.theta[j]
            + h10 * h * self.slope[j]
            + h01 * self.theta[j + 1]
            + h11 * h * self.slope[j + 1];
        th.clamp(0.0, FRAC_PI_2)
    }
}
