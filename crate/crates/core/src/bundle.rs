//! Circle-invariant metrics `g~ = g + l^2 theta^2` on circle (orbi)bundles
//! over a base `(Sigma, g)`.
//!
//! The fibre length `l` and the curvature density `F` (the curvature form is
//! `Omega = F dv_g`) are radial functions on the base. The Laplacian is the
//! nonnegative one, `Delta f = -(phi f')' / phi` on radial functions.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numerics::{integrate, IntegralResult, QuadratureConfig};
use crate::orbifold::{Base, ConeSurfaceProfile};
use crate::radial::{Constant, Jet, Radial, Scaled};

/// Relative tolerance on the vanishing of `l'` and `F'` at cone poles and on
/// periodicity over a torus.
pub const SMOOTHNESS_TOL: f64 = 1e-6;

/// Deviation of `(m_start m_end) * chern` from an integer above which the
/// density is reported as not quantized.
pub const QUANTIZATION_TOL: f64 = 1e-3;

#[derive(Debug, Clone)]
pub struct InvariantMetric {
    base: Base,
    ell: Arc<dyn Radial>,
    density: Arc<dyn Radial>,
    quadrature: QuadratureConfig,
}

/// Curvature density of the weighted Hopf connection on a profile built by
/// [`crate::orbifold::wps_profile`], `F = 2 m1 m2 / A(t)^(3/2)`.
#[derive(Debug, Clone)]
pub struct WpsDensity {
    profile: ConeSurfaceProfile,
}

impl WpsDensity {
    pub fn new(profile: ConeSurfaceProfile) -> Result<Self> {
        if profile.wps_chart().is_none() {
            return Err(Error::InvalidMetric(
                "the weighted Hopf density needs a weighted projective line base".into(),
            ));
        }
        Ok(Self { profile })
    }
}

impl Radial for WpsDensity {
    fn jet(&self, s: f64) -> Jet {
        let chart = self.profile.wps_chart().expect("checked at construction");
        let t = self
            .profile
            .chart_parameter(s)
            .expect("checked at construction");
        let f = crate::yamabe::wps_curvature_density_jet(&chart, t.value);
        // Undo the homothety of the profile: F scales like 1/c^2 while the
        // chart density is that of the unit-sphere quotient.
        let c = self.profile.homothety();
        let k = 1.0 / (c * c);
        Jet::new(
            k * f.value,
            k * f.d1 * t.d1,
            k * (f.d2 * t.d1 * t.d1 + f.d1 * t.d2),
        )
    }
}

impl InvariantMetric {
    pub fn new(
        base: impl Into<Base>,
        ell: Arc<dyn Radial>,
        density: Arc<dyn Radial>,
    ) -> Result<Self> {
        let m = Self {
            base: base.into(),
            ell,
            density,
            quadrature: QuadratureConfig::plain(),
        };
        m.validate()?;
        Ok(m)
    }

    /// Constant fibre length and constant density.
    pub fn constant(base: impl Into<Base>, ell: f64, density: f64) -> Result<Self> {
        Self::new(base, Arc::new(Constant(ell)), Arc::new(Constant(density)))
    }

    /// The weighted Hopf fibration over `CP^1(m1, m2)` with constant fibre
    /// length `ell`.
    pub fn weighted_hopf(profile: ConeSurfaceProfile, ell: f64) -> Result<Self> {
        let f = WpsDensity::new(profile.clone())?;
        Self::new(profile, Arc::new(Constant(ell)), Arc::new(f))
    }

    pub fn with_quadrature(mut self, cfg: QuadratureConfig) -> Self {
        self.quadrature = cfg;
        self
    }

    /// Same base and density, another fibre length.
    pub fn with_ell(&self, ell: Arc<dyn Radial>) -> Result<Self> {
        Self::new(self.base.clone(), ell, self.density.clone())
            .map(|m| m.with_quadrature(self.quadrature.clone()))
    }

    /// Same base and fibre length, another density.
    pub fn with_density(&self, density: Arc<dyn Radial>) -> Result<Self> {
        Self::new(self.base.clone(), self.ell.clone(), density)
            .map(|m| m.with_quadrature(self.quadrature.clone()))
    }

    pub fn base(&self) -> &Base {
        &self.base
    }

    pub fn ell(&self) -> &dyn Radial {
        self.ell.as_ref()
    }

    pub fn ell_arc(&self) -> Arc<dyn Radial> {
        self.ell.clone()
    }

    pub fn density(&self) -> &dyn Radial {
        self.density.as_ref()
    }

    pub fn density_arc(&self) -> Arc<dyn Radial> {
        self.density.clone()
    }

    pub fn quadrature(&self) -> &QuadratureConfig {
        &self.quadrature
    }

    fn validate(&self) -> Result<()> {
        let len = self.base.length();
        let n = 4 * self.base.grid().max(64);
        let mut min_ell = f64::INFINITY;
        for i in 0..=n {
            let s = len * i as f64 / n as f64;
            let l = self.ell.jet(s);
            let f = self.density.jet(s);
            let finite = [l.value, l.d1, l.d2, f.value, f.d1, f.d2]
                .iter()
                .all(|v| v.is_finite());
            if !finite {
                return Err(Error::InvalidMetric(format!(
                    "non-finite fibre length or density at s = {s}"
                )));
            }
            min_ell = min_ell.min(l.value);
        }
        if !(min_ell > 0.0) {
            return Err(Error::InvalidMetric(format!(
                "fibre length must be positive (min {min_ell})"
            )));
        }
        let (l0, l1) = (self.ell.jet(0.0), self.ell.jet(len));
        let (f0, f1) = (self.density.jet(0.0), self.density.jet(len));
        let scale_l = l0.value.abs().max(l1.value.abs()).max(1.0);
        let scale_f = f0.value.abs().max(f1.value.abs()).max(1.0);
        if self.base.is_periodic() {
            let gaps = [
                (l0.value - l1.value).abs() / scale_l,
                (l0.d1 - l1.d1).abs() / scale_l,
                (f0.value - f1.value).abs() / scale_f,
                (f0.d1 - f1.d1).abs() / scale_f,
            ];
            if gaps.iter().any(|g| !(*g <= SMOOTHNESS_TOL)) {
                return Err(Error::InvalidMetric(
                    "fibre length and density must be periodic on a torus".into(),
                ));
            }
        } else {
            let slopes = [
                l0.d1 / scale_l,
                l1.d1 / scale_l,
                f0.d1 / scale_f,
                f1.d1 / scale_f,
            ];
            if slopes.iter().any(|d| !(d.abs() <= SMOOTHNESS_TOL)) {
                return Err(Error::InvalidMetric(
                    "fibre length and density must have zero slope at the cone poles".into(),
                ));
            }
        }
        Ok(())
    }

    /// The metric `c^2 g~`: base scaled by `c`, `l -> c l`, `F -> F / c^2`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "scale {c} must be positive"
            )));
        }
        Ok(Self {
            base: self.base.scaled(c),
            ell: Arc::new(Scaled::new(self.ell.clone(), c, c)),
            density: Arc::new(Scaled::new(self.density.clone(), c, 1.0 / (c * c))),
            quadrature: self.quadrature.clone(),
        })
    }

    /// `-(phi f')' / phi` for a radial `f`, with its pole limit `-2 f''`.
    fn laplacian(&self, f: Jet, s: f64) -> f64 {
        let p = self.base.phi_jet(s);
        if p.value == 0.0 {
            -2.0 * f.d2
        } else {
            -(f.d2 + p.d1 * f.d1 / p.value)
        }
    }

    /// Scalar curvature of `g~` at an interior point,
    /// `2K - (l^2/2) F^2 - 2 (phi l')' / (phi l)`.
    pub fn scalar_curvature_total(&self, s: f64) -> Result<f64> {
        let k = self.base.gauss_curvature(s)?;
        Ok(self.scal_from_k(k, s))
    }

    /// [`Self::scalar_curvature_total`], with the pole values as limits.
    pub fn scalar_curvature_or_limit(&self, s: f64) -> f64 {
        self.scal_from_k(self.base.curvature_or_limit(s), s)
    }

    fn scal_from_k(&self, k: f64, s: f64) -> f64 {
        let l = self.ell.jet(s);
        let f = self.density.value(s);
        2.0 * k - 0.5 * l.value * l.value * f * f + 2.0 * self.laplacian(l, s) / l.value
    }

    /// The same curvature written with `log l`:
    /// `2K - (l^2/2) F^2 + 2 Delta(log l) - 2 |dl|^2 / l^2`.
    pub fn scalar_curvature_log_form(&self, s: f64) -> Result<f64> {
        let k = self.base.gauss_curvature(s)?;
        let l = self.ell.jet(s);
        let f = self.density.value(s);
        let g1 = l.d1 / l.value;
        let log_l = Jet::new(l.value.ln(), g1, l.d2 / l.value - g1 * g1);
        Ok(
            2.0 * k - 0.5 * l.value * l.value * f * f + 2.0 * self.laplacian(log_l, s)
                - 2.0 * g1 * g1,
        )
    }

    /// `2 Delta(l) / l` at `s`, the part of the curvature that integrates to
    /// zero against `l dv_g`.
    pub fn laplacian_term(&self, s: f64) -> f64 {
        let l = self.ell.jet(s);
        2.0 * self.laplacian(l, s) / l.value
    }

    /// `int_Sigma g dv_g`.
    pub fn integrate_base<G: Fn(f64) -> f64>(&self, g: G) -> Result<IntegralResult> {
        self.base.integrate(g, &self.quadrature)
    }

    /// `int_Sigma |g| dv_g`, split at the sign changes of `g` so the
    /// quadrature only sees smooth pieces.
    pub fn integrate_base_abs_pow<G: Fn(f64) -> f64>(
        &self,
        g: G,
        p: f64,
    ) -> Result<IntegralResult> {
        let len = self.base.length();
        let mut cuts = vec![0.0];
        cuts.extend(sign_changes(&g, len, 8 * self.base.grid().max(64)));
        cuts.push(len);
        let mut total = IntegralResult {
            value: 0.0,
            error_estimate: 0.0,
            refinements_used: 0,
        };
        for w in cuts.windows(2) {
            if w[1] - w[0] <= 0.0 {
                continue;
            }
            let piece = integrate(
                |s| g(s).abs().powf(p) * self.base.phi_jet(s).value,
                w[0],
                w[1],
                &self.quadrature,
            )?;
            total.value += 2.0 * PI * piece.value;
            total.error_estimate += 2.0 * PI * piece.error_estimate;
            total.refinements_used = total.refinements_used.max(piece.refinements_used);
        }
        Ok(total)
    }

    /// `vol(M, g~) = int 2 pi l dv_g`.
    pub fn volume_total(&self) -> Result<f64> {
        Ok(2.0 * PI * self.integrate_base(|s| self.ell.value(s))?.value)
    }

    /// `(1/2pi) int F dv_g`.
    pub fn chern_number(&self) -> Result<IntegralResult> {
        let r = self.integrate_base(|s| self.density.value(s))?;
        Ok(IntegralResult {
            value: r.value / (2.0 * PI),
            error_estimate: r.error_estimate / (2.0 * PI),
            ..r
        })
    }

    /// Norms of the curvature form (with `|Omega| = sqrt(2) |F|`) and of the
    /// base scalar curvature.
    pub fn omega_norms(&self) -> Result<NormReport> {
        let f = |s: f64| self.density.value(s);
        let l1 = self.integrate_base_abs_pow(f, 1.0)?;
        let l2 = self.integrate_base(|s| f(s) * f(s))?;
        let l3 = self.integrate_base_abs_pow(f, 3.0)?;
        let scal = self.integrate_base_abs_pow(|s| 2.0 * self.base.curvature_or_limit(s), 1.5)?;
        let chern = self.chern_number()?;
        let sqrt2 = 2f64.sqrt();
        let l3_norm = 2f64.powf(1.5) * l3.value;
        let lattice = match &self.base {
            Base::Cone(p) => {
                let (a, b) = p.cone_orders();
                (a * b) as f64
            }
            Base::Torus(_) => 1.0,
        };
        let scaled = lattice * chern.value;
        Ok(NormReport {
            omega_l1: sqrt2 * l1.value,
            omega_l1_error: sqrt2 * l1.error_estimate,
            omega_l2_sq: 2.0 * l2.value,
            omega_l2_sq_error: 2.0 * l2.error_estimate,
            omega_l3_sq: l3_norm.powf(2.0 / 3.0),
            scal_l32: scal.value.powf(2.0 / 3.0),
            chern_number: chern.value,
            chern_error: chern.error_estimate,
            quantization_defect: (scaled - scaled.round()).abs(),
        })
    }
}

/// Points in `(0, len)` where `g` changes sign, located by bisection between
/// the `n + 1` uniform samples.
fn sign_changes<G: Fn(f64) -> f64>(g: &G, len: f64, n: usize) -> Vec<f64> {
    let h = len / n as f64;
    let mut roots = Vec::new();
    let mut prev = g(0.5 * h * 1e-3);
    for i in 1..=n {
        let x = if i == n {
            len - 0.5 * h * 1e-3
        } else {
            h * i as f64
        };
        let y = g(x);
        if prev.signum() * y.signum() < 0.0 {
            let (mut lo, mut hi) = (x - h, x);
            let lo_sign = prev.signum();
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if g(mid).signum() == lo_sign {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
        if y != 0.0 {
            prev = y;
        }
    }
    roots
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormReport {
    /// `||Omega||_1 = sqrt(2) int |F| dv`.
    pub omega_l1: f64,
    pub omega_l1_error: f64,
    /// `||Omega||_2^2 = 2 int F^2 dv`.
    pub omega_l2_sq: f64,
    pub omega_l2_sq_error: f64,
    /// `(||Omega||_3)^2`.
    pub omega_l3_sq: f64,
    /// `||Scal_g||_{3/2}` of the base.
    pub scal_l32: f64,
    pub chern_number: f64,
    pub chern_error: f64,
    /// Distance of `(m_start m_end) chern` (torus: `chern`) to the nearest
    /// integer.
    pub quantization_defect: f64,
}

impl NormReport {
    pub fn is_quantized(&self) -> bool {
        self.quantization_defect <= QUANTIZATION_TOL
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbifold::{make_round_sphere, FlatTorusBase};

    fn hopf(ell: f64) -> InvariantMetric {
        InvariantMetric::constant(make_round_sphere(0.5).unwrap(), ell, 2.0).unwrap()
    }

    #[test]
    fn round_three_sphere() {
        let m = hopf(1.0);
        for s in [0.1, 0.7, 1.5] {
            assert!((m.scalar_curvature_total(s).unwrap() - 6.0).abs() < 1e-12);
        }
        assert!((m.scalar_curvature_or_limit(0.0) - 6.0).abs() < 1e-8);
        assert!((m.volume_total().unwrap() - 2.0 * PI * PI).abs() < 1e-12);
    }

    #[test]
    fn berger_family() {
        for ell in [0.3, 0.5, 2.0] {
            let m = hopf(ell);
            assert!(
                (m.scalar_curvature_total(0.4).unwrap() - (8.0 - 2.0 * ell * ell)).abs() < 1e-12
            );
        }
    }

    #[test]
    fn hopf_norms() {
        let n = hopf(1.0).omega_norms().unwrap();
        assert!((n.omega_l2_sq - 8.0 * PI).abs() < 1e-10);
        assert!((n.omega_l1 - 2.0 * 2f64.sqrt() * PI).abs() < 1e-10);
        assert!((n.chern_number - 1.0).abs() < 1e-12);
        assert!(n.is_quantized());
    }

    #[test]
    fn torus_norms() {
        let m = InvariantMetric::constant(FlatTorusBase::new(1.0, 1.0).unwrap(), 0.5, 1.0).unwrap();
        let n = m.omega_norms().unwrap();
        assert!((n.chern_number - 1.0).abs() < 1e-12);
        assert!((n.omega_l2_sq - 4.0 * PI).abs() < 1e-10);
        assert!((m.scalar_curvature_total(0.3).unwrap() + 0.125).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_data() {
        let b = make_round_sphere(1.0).unwrap();
        assert!(InvariantMetric::constant(b.clone(), 0.0, 1.0).is_err());
        let tilted = crate::radial::CosineSeries::new(PI, vec![1.0]).unwrap();
        assert!(InvariantMetric::new(b.clone(), Arc::new(Constant(1.0)), Arc::new(tilted)).is_ok());
    }

    #[test]
    fn sign_changes_are_found() {
        let r = sign_changes(&|s: f64| s.cos(), PI, 50);
        assert_eq!(r.len(), 1);
        assert!((r[0] - 0.5 * PI).abs() < 1e-12);
    }
}
