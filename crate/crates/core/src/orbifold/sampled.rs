use crate::error::{Error, Result};
use crate::numerics::solve_cyclic_tridiagonal;
use crate::radial::Jet;

/// Cubic spline through profile samples `(s_k, phi_k)` on `[0, L]`.
///
/// The samples are extended oddly about both poles, which makes the profile
/// `2L`-periodic, and the periodic spline of the extension is used. This
/// keeps `phi'' = 0` at the poles so `K = -phi''/phi` stays bounded there.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct OddPeriodicSpline {
    s: Vec<f64>,
    y: Vec<f64>,
    m: Vec<f64>,
}

impl OddPeriodicSpline {
    pub fn new(samples: &[(f64, f64)]) -> Result<Self> {
        let n = samples.len().saturating_sub(1);
        if n < 4 {
            return Err(Error::InvalidProfile(
                "need at least five profile samples".into(),
            ));
        }
        let s: Vec<f64> = samples.iter().map(|p| p.0).collect();
        let y: Vec<f64> = samples.iter().map(|p| p.1).collect();
        if s[0] != 0.0 {
            return Err(Error::InvalidProfile(
                "first sample must sit at s = 0".into(),
            ));
        }
        if s.windows(2).any(|w| !(w[1] > w[0])) || s.iter().chain(&y).any(|v| !v.is_finite()) {
            return Err(Error::InvalidProfile(
                "arclengths must be finite and strictly increasing".into(),
            ));
        }
        let scale = y.iter().map(|v| v.abs()).fold(0.0, f64::max);
        if y[0].abs() > 1e-12 * scale || y[n].abs() > 1e-12 * scale {
            return Err(Error::InvalidProfile(
                "phi must vanish at both poles".into(),
            ));
        }
        if let Some(k) = (1..n).find(|&k| !(y[k] > 0.0)) {
            return Err(Error::InvalidProfile(format!(
                "phi must be positive inside (sample {k})"
            )));
        }
        let len = s[n];
        // Extended knots x_0..x_{2n-1} = -s_n, ..., -s_1, s_0, ..., s_{n-1}.
        let mut x = Vec::with_capacity(2 * n);
        let mut v = Vec::with_capacity(2 * n);
        for k in (1..=n).rev() {
            x.push(-s[k]);
            v.push(-y[k]);
        }
        for k in 0..n {
            x.push(s[k]);
            v.push(y[k]);
        }
        let kk = x.len();
        let period = 2.0 * len;
        let h: Vec<f64> = (0..kk)
            .map(|k| {
                if k + 1 < kk {
                    x[k + 1] - x[k]
                } else {
                    x[0] + period - x[k]
                }
            })
            .collect();
        let slope = |k: usize| (v[(k + 1) % kk] - v[k]) / h[k];
        let diag: Vec<f64> = (0..kk)
            .map(|k| 2.0 * (h[(k + kk - 1) % kk] + h[k]))
            .collect();
        let lower: Vec<f64> = (1..kk).map(|k| h[k - 1]).collect();
        let upper: Vec<f64> = (0..kk - 1).map(|k| h[k]).collect();
        let rhs: Vec<f64> = (0..kk)
            .map(|k| 6.0 * (slope(k) - slope((k + kk - 1) % kk)))
            .collect();
        let mm = solve_cyclic_tridiagonal(&lower, &diag, &upper, h[kk - 1], h[kk - 1], &rhs)?;
        // Positive half: knots s_0..s_{n-1} at indices n..2n-1, and s_n = L
        // is the periodic image of x_0.
        let mut m: Vec<f64> = mm[n..].to_vec();
        m.push(mm[0]);
        Ok(Self { s, y, m })
    }

    pub fn length(&self) -> f64 {
        *self.s.last().unwrap()
    }

    pub fn cells(&self) -> usize {
        self.s.len() - 1
    }

    pub fn jet(&self, x: f64) -> Jet {
        let n = self.cells();
        let k = match self.s.partition_point(|&sk| sk <= x) {
            0 => 0,
            p => (p - 1).min(n - 1),
        };
        let h = self.s[k + 1] - self.s[k];
        let a = (self.s[k + 1] - x) / h;
        let b = 1.0 - a;
        let (y0, y1, m0, m1) = (self.y[k], self.y[k + 1], self.m[k], self.m[k + 1]);
        Jet::new(
            a * y0 + b * y1 + ((a * a * a - a) * m0 + (b * b * b - b) * m1) * h * h / 6.0,
            (y1 - y0) / h - (3.0 * a * a - 1.0) / 6.0 * h * m0 + (3.0 * b * b - 1.0) / 6.0 * h * m1,
            a * m0 + b * m1,
        )
    }
}
