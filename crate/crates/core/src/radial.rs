//! Functions of the arclength coordinate `s` of a base.
//!
//! Everything on the total space that the computations need (fibre length,
//! curvature density, conformal factors) is invariant under the rotation of
//! the base, so it is a function of `s` alone. [`Radial`] gives the value and
//! the first two `s`-derivatives at a point.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numerics::solve_tridiagonal;

/// Value with first and second derivative.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Jet {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

impl Jet {
    pub const fn new(value: f64, d1: f64, d2: f64) -> Self {
        Self { value, d1, d2 }
    }

    pub const fn constant(value: f64) -> Self {
        Self::new(value, 0.0, 0.0)
    }
}

pub trait Radial: fmt::Debug + Send + Sync {
    fn jet(&self, s: f64) -> Jet;

    fn value(&self, s: f64) -> f64 {
        self.jet(s).value
    }
}

impl<R: Radial + ?Sized> Radial for Arc<R> {
    fn jet(&self, s: f64) -> Jet {
        (**self).jet(s)
    }
}

impl<R: Radial + ?Sized> Radial for &R {
    fn jet(&self, s: f64) -> Jet {
        (**self).jet(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constant(pub f64);

impl Radial for Constant {
    fn jet(&self, _s: f64) -> Jet {
        Jet::constant(self.0)
    }
}

/// `sum_k c_k cos(k pi s / L)`. Every term has vanishing slope at `s = 0`
/// and `s = L`, which is what smoothness at a pole requires.
#[derive(Debug, Clone, PartialEq)]
pub struct CosineSeries {
    length: f64,
    coeffs: Vec<f64>,
}

impl CosineSeries {
    pub fn new(length: f64, coeffs: Vec<f64>) -> Result<Self> {
        if !(length > 0.0) || coeffs.is_empty() || coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidArgument(
                "cosine series needs a positive length and finite coefficients".into(),
            ));
        }
        Ok(Self { length, coeffs })
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }
}

impl Radial for CosineSeries {
    fn jet(&self, s: f64) -> Jet {
        let w = PI / self.length;
        let mut jet = Jet::default();
        for (k, &c) in self.coeffs.iter().enumerate() {
            let kw = k as f64 * w;
            let (sin, cos) = (kw * s).sin_cos();
            jet.value += c * cos;
            jet.d1 -= c * kw * sin;
            jet.d2 -= c * kw * kw * cos;
        }
        jet
    }
}

/// `factor * inner(s / stretch)`.
#[derive(Debug, Clone)]
pub struct Scaled {
    inner: Arc<dyn Radial>,
    stretch: f64,
    factor: f64,
}

impl Scaled {
    pub fn new(inner: Arc<dyn Radial>, stretch: f64, factor: f64) -> Self {
        Self {
            inner,
            stretch,
            factor,
        }
    }
}

impl Radial for Scaled {
    fn jet(&self, s: f64) -> Jet {
        let j = self.inner.jet(s / self.stretch);
        Jet::new(
            self.factor * j.value,
            self.factor * j.d1 / self.stretch,
            self.factor * j.d2 / (self.stretch * self.stretch),
        )
    }
}

/// `inner(s)^exponent` for positive `inner`.
#[derive(Debug, Clone)]
pub struct Power {
    inner: Arc<dyn Radial>,
    exponent: f64,
}

impl Power {
    pub fn new(inner: Arc<dyn Radial>, exponent: f64) -> Self {
        Self { inner, exponent }
    }
}

impl Radial for Power {
    fn jet(&self, s: f64) -> Jet {
        let j = self.inner.jet(s);
        let p = self.exponent;
        let v = j.value.powf(p);
        let vm1 = j.value.powf(p - 1.0);
        let vm2 = j.value.powf(p - 2.0);
        Jet::new(
            v,
            p * vm1 * j.d1,
            p * (p - 1.0) * vm2 * j.d1 * j.d1 + p * vm1 * j.d2,
        )
    }
}

/// Function on a uniform grid of `[0, L]` with value, slope and second
/// derivative at every node, interpolated by quintic Hermite polynomials.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialFunction {
    length: f64,
    values: Vec<f64>,
    d1: Vec<f64>,
    d2: Vec<f64>,
    mean_zero: bool,
}

impl RadialFunction {
    pub fn from_jets(length: f64, jets: &[Jet]) -> Result<Self> {
        if !(length > 0.0) || jets.len() < 2 {
            return Err(Error::InvalidArgument(
                "radial function needs a positive length and at least two nodes".into(),
            ));
        }
        if let Some((i, _)) = jets
            .iter()
            .enumerate()
            .find(|(_, j)| !(j.value.is_finite() && j.d1.is_finite() && j.d2.is_finite()))
        {
            return Err(Error::InvalidArgument(format!(
                "non-finite data at node {i}"
            )));
        }
        Ok(Self {
            length,
            values: jets.iter().map(|j| j.value).collect(),
            d1: jets.iter().map(|j| j.d1).collect(),
            d2: jets.iter().map(|j| j.d2).collect(),
            mean_zero: false,
        })
    }

    /// Cubic spline through `values` at uniformly spaced nodes with zero
    /// slope at both ends.
    pub fn from_samples(length: f64, values: &[f64]) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidArgument("need at least two samples".into()));
        }
        let h = length / (values.len() - 1) as f64;
        let m = clamped_spline_curvatures(values, h)?;
        let n = values.len() - 1;
        let jets: Vec<Jet> = (0..=n)
            .map(|i| {
                let d1 = if i < n {
                    (values[i + 1] - values[i]) / h - h * (2.0 * m[i] + m[i + 1]) / 6.0
                } else {
                    (values[n] - values[n - 1]) / h + h * (m[n - 1] + 2.0 * m[n]) / 6.0
                };
                Jet::new(values[i], d1, m[i])
            })
            .collect();
        Self::from_jets(length, &jets)
    }

    /// Samples `f` at `cells + 1` uniformly spaced nodes.
    pub fn sample(length: f64, cells: usize, f: &dyn Radial) -> Result<Self> {
        let h = length / cells as f64;
        let jets: Vec<Jet> = (0..=cells).map(|i| f.jet(h * i as f64)).collect();
        Self::from_jets(length, &jets)
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn cells(&self) -> usize {
        self.values.len() - 1
    }

    pub fn step(&self) -> f64 {
        self.length / self.cells() as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        if i == self.cells() {
            self.length
        } else {
            self.step() * i as f64
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn node_jet(&self, i: usize) -> Jet {
        Jet::new(self.values[i], self.d1[i], self.d2[i])
    }

    pub fn is_mean_zero(&self) -> bool {
        self.mean_zero
    }

    pub(crate) fn mark_mean_zero(mut self) -> Self {
        self.mean_zero = true;
        self
    }

    /// Adds a constant to every node value.
    pub fn shifted(&self, c: f64) -> Self {
        let mut out = self.clone();
        out.values.iter_mut().for_each(|v| *v += c);
        out.mean_zero = false;
        out
    }

    /// Multiplies the function by a constant.
    pub fn scaled(&self, c: f64) -> Self {
        Self {
            length: self.length,
            values: self.values.iter().map(|v| v * c).collect(),
            d1: self.d1.iter().map(|v| v * c).collect(),
            d2: self.d2.iter().map(|v| v * c).collect(),
            mean_zero: self.mean_zero,
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.abs()).fold(0.0, f64::max)
    }
}

impl Radial for RadialFunction {
    fn jet(&self, s: f64) -> Jet {
        let n = self.cells();
        let h = self.step();
        let i = ((s / h).floor().max(0.0) as usize).min(n - 1);
        let t = (s - h * i as f64) / h;
        let (p0, m0, a0) = (self.values[i], self.d1[i] * h, self.d2[i] * h * h);
        let (p1, m1, a1) = (
            self.values[i + 1],
            self.d1[i + 1] * h,
            self.d2[i + 1] * h * h,
        );
        let t2 = t * t;
        let t3 = t2 * t;
        let t4 = t3 * t;
        let t5 = t4 * t;
        // Quintic Hermite basis and its derivatives in t.
        let b = [
            1.0 - 10.0 * t3 + 15.0 * t4 - 6.0 * t5,
            t - 6.0 * t3 + 8.0 * t4 - 3.0 * t5,
            0.5 * t2 - 1.5 * t3 + 1.5 * t4 - 0.5 * t5,
            10.0 * t3 - 15.0 * t4 + 6.0 * t5,
            -4.0 * t3 + 7.0 * t4 - 3.0 * t5,
            0.5 * t3 - t4 + 0.5 * t5,
        ];
        let db = [
            -30.0 * t2 + 60.0 * t3 - 30.0 * t4,
            1.0 - 18.0 * t2 + 32.0 * t3 - 15.0 * t4,
            t - 4.5 * t2 + 6.0 * t3 - 2.5 * t4,
            30.0 * t2 - 60.0 * t3 + 30.0 * t4,
            -12.0 * t2 + 28.0 * t3 - 15.0 * t4,
            1.5 * t2 - 4.0 * t3 + 2.5 * t4,
        ];
        let ddb = [
            -60.0 * t + 180.0 * t2 - 120.0 * t3,
            -36.0 * t + 96.0 * t2 - 60.0 * t3,
            1.0 - 9.0 * t + 18.0 * t2 - 10.0 * t3,
            60.0 * t - 180.0 * t2 + 120.0 * t3,
            -24.0 * t + 84.0 * t2 - 60.0 * t3,
            3.0 * t - 12.0 * t2 + 10.0 * t3,
        ];
        let c = [p0, m0, a0, p1, m1, a1];
        let dot = |w: &[f64; 6]| c.iter().zip(w).map(|(x, y)| x * y).sum::<f64>();
        Jet::new(dot(&b), dot(&db) / h, dot(&ddb) / (h * h))
    }
}

/// Second derivatives at the nodes of the cubic spline through `values`
/// (spacing `h`) with zero end slopes.
pub fn clamped_spline_curvatures(values: &[f64], h: f64) -> Result<Vec<f64>> {
    let n = values.len();
    if n < 2 || !(h > 0.0) {
        return Err(Error::InvalidArgument(
            "spline needs two nodes and positive spacing".into(),
        ));
    }
    let c = 6.0 / (h * h);
    let mut diag = vec![4.0; n];
    diag[0] = 2.0;
    diag[n - 1] = 2.0;
    let off = vec![1.0; n - 1];
    let rhs: Vec<f64> = (0..n)
        .map(|i| {
            if i == 0 {
                c * (values[1] - values[0])
            } else if i == n - 1 {
                c * (values[n - 2] - values[n - 1])
            } else {
                c * (values[i + 1] - 2.0 * values[i] + values[i - 1])
            }
        })
        .collect();
    solve_tridiagonal(&off, &diag, &off, &rhs)
}
