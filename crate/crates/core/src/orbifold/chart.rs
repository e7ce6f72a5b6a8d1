use num_integer::Integer;

use crate::error::{Error, Result};
use crate::radial::Jet;

/// Chart data of the weighted projective line `CP^1(m1, m2)` with its
/// quotient metric from the round unit 3-sphere.
///
/// The radial parameter is `t = |z1|^2` on `(0, 1)`; `t = 0` is the pole
/// `z1 = 0` with isotropy `Z_{m2}`, `t = 1` the pole `z2 = 0` with isotropy
/// `Z_{m1}`. With `A(t) = (m1^2 - m2^2) t + m2^2`, `B(t) = (m1 - m2) t + m2`
/// and `q(t) = t (1 - t)`:
///
/// * `lambda1(t) = -sqrt(A / q)`, `lambda2(t) = -B / sqrt(q)` are the inverse
///   lengths of the two orthonormal frame fields,
/// * `gamma(r) = (1 - r)^m1 / r^m2` is the chart map `|z|^2 = gamma(|z1|^2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WpsChart {
    m1: u64,
    m2: u64,
}

impl WpsChart {
    pub fn new(m1: u64, m2: u64) -> Result<Self> {
        if m1 == 0 || m2 == 0 || m1.gcd(&m2) != 1 {
            return Err(Error::NotCoprime { m1, m2 });
        }
        Ok(Self { m1, m2 })
    }

    pub fn weights(&self) -> (u64, u64) {
        (self.m1, self.m2)
    }

    fn m(&self) -> (f64, f64) {
        (self.m1 as f64, self.m2 as f64)
    }

    /// `A(t)` and its slope.
    pub(crate) fn a(&self, t: f64) -> (f64, f64) {
        let (m1, m2) = self.m();
        let slope = m1 * m1 - m2 * m2;
        (slope * t + m2 * m2, slope)
    }

    /// `B(t)` and its slope.
    pub(crate) fn b(&self, t: f64) -> (f64, f64) {
        let (m1, m2) = self.m();
        ((m1 - m2) * t + m2, m1 - m2)
    }

    pub fn lambda1(&self, t: f64) -> Jet {
        self.lambda1_split(t, 1.0 - t)
    }

    /// `lambda1` with the complement `u = 1 - t` supplied separately, for
    /// accuracy near `t = 1`.
    pub(crate) fn lambda1_split(&self, t: f64, u: f64) -> Jet {
        let (a, da) = self.a(t);
        let q = t * u;
        let dq = u - t;
        // p = A / q
        let p = a / q;
        let dp = (da * q - a * dq) / (q * q);
        let ddp = (2.0 * a * q - 2.0 * dq * (da * q - a * dq)) / (q * q * q);
        let sp = p.sqrt();
        Jet::new(
            -sp,
            -0.5 * dp / sp,
            0.25 * dp * dp / (p * sp) - 0.5 * ddp / sp,
        )
    }

    pub fn lambda2(&self, t: f64) -> Jet {
        self.lambda2_split(t, 1.0 - t)
    }

    pub(crate) fn lambda2_split(&self, t: f64, u: f64) -> Jet {
        let (b, db) = self.b(t);
        let q = t * u;
        let dq = u - t;
        let sq = q.sqrt();
        let q32 = q * sq;
        let q52 = q32 * q;
        Jet::new(
            -b / sq,
            -db / sq + 0.5 * b * dq / q32,
            db * dq / q32 - 0.75 * b * dq * dq / q52 - b / q32,
        )
    }

    pub fn gamma(&self, r: f64) -> Jet {
        let (m1, m2) = self.m();
        let g = (1.0 - r).powf(m1) / r.powf(m2);
        let (l, dl) = self.gamma_log_derivative(r);
        Jet::new(g, g * l, g * (l * l + dl))
    }

    /// `gamma'/gamma` and its derivative. Used wherever only ratios of
    /// `gamma` and its derivatives enter, so large weights cannot overflow.
    pub fn gamma_log_derivative(&self, r: f64) -> (f64, f64) {
        self.gamma_log_derivative_split(r, 1.0 - r)
    }

    fn gamma_log_derivative_split(&self, r: f64, u: f64) -> (f64, f64) {
        let (m1, m2) = self.m();
        (-m1 / u - m2 / r, -m1 / (u * u) + m2 / (r * r))
    }

    /// Circumference radius `phi = 1/|lambda1|` as a function of `t`.
    pub fn circumference_radius(&self, t: f64) -> Jet {
        self.circumference_radius_split(t, 1.0 - t)
    }

    pub(crate) fn circumference_radius_split(&self, t: f64, u: f64) -> Jet {
        let l = self.lambda1_split(t, u);
        let l2 = l.value * l.value;
        Jet::new(
            -1.0 / l.value,
            l.d1 / l2,
            l.d2 / l2 - 2.0 * l.d1 * l.d1 / (l2 * l.value),
        )
    }

    /// Arclength element `ds/dt = |gamma'| / (2 gamma |lambda2|)` and its
    /// `t`-derivative.
    pub fn arclength_element(&self, t: f64) -> (f64, f64) {
        self.arclength_element_split(t, 1.0 - t)
    }

    pub(crate) fn arclength_element_split(&self, t: f64, u: f64) -> (f64, f64) {
        let (l, dl) = self.gamma_log_derivative_split(t, u);
        let lam = self.lambda2_split(t, u);
        let sigma = l / (2.0 * lam.value);
        let dsigma = (dl * lam.value - l * lam.d1) / (2.0 * lam.value * lam.value);
        (sigma, dsigma)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::check_derivative;

    const STEPS: [f64; 2] = [1e-5, 1e-6];

    #[test]
    fn rejects_non_coprime() {
        assert!(matches!(WpsChart::new(2, 4), Err(Error::NotCoprime { .. })));
        assert!(WpsChart::new(0, 1).is_err());
        assert!(WpsChart::new(3, 5).is_ok());
    }

    #[test]
    fn analytic_derivatives_match_central_differences() {
        for (m1, m2) in [(1, 1), (1, 2), (2, 3), (3, 5), (7, 11)] {
            let c = WpsChart::new(m1, m2).unwrap();
            for t in [0.1, 0.3, 0.5, 0.7, 0.9] {
                let checks = [
                    check_derivative(
                        |x| c.lambda1(x).value,
                        |x| c.lambda1(x).d1,
                        t,
                        &STEPS,
                        (0.0, 1.0),
                    ),
                    check_derivative(
                        |x| c.lambda1(x).d1,
                        |x| c.lambda1(x).d2,
                        t,
                        &STEPS,
                        (0.0, 1.0),
                    ),
                    check_derivative(
                        |x| c.lambda2(x).value,
                        |x| c.lambda2(x).d1,
                        t,
                        &STEPS,
                        (0.0, 1.0),
                    ),
                    check_derivative(
                        |x| c.lambda2(x).d1,
                        |x| c.lambda2(x).d2,
                        t,
                        &STEPS,
                        (0.0, 1.0),
                    ),
                    check_derivative(
                        |x| c.gamma(x).value,
                        |x| c.gamma(x).d1,
                        t,
                        &STEPS,
                        (0.0, 1.0),
                    ),
                    check_derivative(|x| c.gamma(x).d1, |x| c.gamma(x).d2, t, &STEPS, (0.0, 1.0)),
                    check_derivative(
                        |x| c.arclength_element(x).0,
                        |x| c.arclength_element(x).1,
                        t,
                        &STEPS,
                        (0.0, 1.0),
                    ),
                ];
                for (k, d) in checks.into_iter().enumerate() {
                    let d = d.unwrap();
                    assert!(d <= 1e-6, "({m1},{m2}) t={t} check {k}: {d}");
                }
            }
        }
    }

    #[test]
    fn lambda1_two_three_at_half() {
        let c = WpsChart::new(2, 3).unwrap();
        let d = check_derivative(
            |x| c.lambda1(x).value,
            |x| c.lambda1(x).d1,
            0.5,
            &[1e-4, 1e-5],
            (0.0, 1.0),
        )
        .unwrap();
        assert!(d <= 1e-6);
    }

    #[test]
    fn gamma_hopf_is_rational() {
        let c = WpsChart::new(1, 1).unwrap();
        let r = 0.25;
        let g = c.gamma(r);
        assert!((g.value - 3.0).abs() < 1e-14);
        assert!((g.d1 + 16.0).abs() < 1e-12);
        let d = check_derivative(
            |x| c.gamma(x).value,
            |x| -1.0 / (x * x),
            r,
            &[1e-5, 1e-6],
            (0.0, 1.0),
        )
        .unwrap();
        assert!(d <= 1e-8);
    }

    #[test]
    fn signs_and_monotonicity() {
        let c = WpsChart::new(3, 5).unwrap();
        let mut last = f64::INFINITY;
        for k in 1..100 {
            let t = k as f64 / 100.0;
            assert!(c.lambda1(t).value < 0.0 && c.lambda2(t).value < 0.0);
            let g = c.gamma(t).value;
            assert!(g < last);
            last = g;
        }
    }

    #[test]
    fn arclength_element_is_quarter_circle_density() {
        // ds/dt = 1 / (2 sqrt(t(1-t))) for every weight pair.
        let c = WpsChart::new(7, 11).unwrap();
        for t in [0.01f64, 0.2, 0.5, 0.93] {
            let want = 0.5 / (t * (1.0 - t)).sqrt();
            assert!((c.arclength_element(t).0 - want).abs() < 1e-12 * want);
        }
    }
}
