//! Radial Laplace equation on a base, conformal change to positive
//! curvature, and minimization of the Yamabe functional over radial
//! conformal factors.

use std::f64::consts::PI;

use crate::bundle::InvariantMetric;
use crate::error::{Error, Result};
use crate::numerics::{solve_cyclic_tridiagonal, solve_tridiagonal, GaussRule, QuadratureConfig};
use crate::orbifold::Base;
use crate::radial::{clamped_spline_curvatures, Constant, Jet, Radial, RadialFunction};
use crate::yamabe::conformal_functional;

/// Relative size of the mean of a right-hand side that is still accepted as
/// zero.
pub const MEAN_ZERO_TOL: f64 = 1e-8;

/// Bound on `|Delta u - f|` relative to `max(1, max|f|)`.
pub const RESIDUAL_TOL: f64 = 1e-6;

const CELL_POINTS: usize = 16;

/// Per-cell Gauss data of a base: nodes, weights and `phi` at the nodes.
struct CellQuadrature {
    rule: GaussRule,
    cells: usize,
    h: f64,
}

impl CellQuadrature {
    fn new(base: &Base, cells: usize, points: usize) -> Self {
        Self {
            rule: GaussRule::new(points),
            cells,
            h: base.length() / cells as f64,
        }
    }

    fn node(&self, i: usize, len: f64) -> f64 {
        if i == self.cells {
            len
        } else {
            self.h * i as f64
        }
    }
}

/// `int f dv_g / int |f| dv_g` over the base, used for the solvability test.
fn mean_and_scale(base: &Base, f: &dyn Radial, q: &CellQuadrature) -> (f64, f64, f64) {
    let len = base.length();
    let (mut total, mut abs, mut area) = (0.0, 0.0, 0.0);
    for i in 0..q.cells {
        for (x, w) in q.rule.mapped(q.node(i, len), q.node(i + 1, len)) {
            let p = base.phi_jet(x).value;
            let v = f.value(x);
            total += w * v * p;
            abs += w * v.abs() * p;
            area += w * p;
        }
    }
    (2.0 * PI * total, 2.0 * PI * abs, 2.0 * PI * area)
}

/// Solves `Delta u = f` for the nonnegative Laplacian
/// `Delta u = -(phi u')' / phi` with `int u dv = 0`.
///
/// `phi u'` is obtained by integrating `-f phi` from the nearer pole and `u`
/// by a second quadrature; the result carries exact nodal values, slopes and
/// second derivatives on the grid of the base. On a torus a constant flux is
/// added so that `u` is periodic.
pub fn laplace_solve_radial(base: &Base, f: &dyn Radial) -> Result<RadialFunction> {
    let cells = base.grid();
    let len = base.length();
    let q = CellQuadrature::new(base, cells, CELL_POINTS);
    let (total, abs, area) = mean_and_scale(base, f, &q);
    // The absolute floor absorbs rounding when f itself is a difference of
    // nearly equal terms.
    if !(total.abs() <= MEAN_ZERO_TOL * abs + 1e-12 * area) {
        return Err(Error::NotMeanZero {
            mean: total / area,
            scale: abs / area,
        });
    }
    let shift = total / area;
    let g = |x: f64| f.value(x) - shift;
    let phi = |x: f64| base.phi_jet(x);
    let cell_integral = |a: f64, b: f64| -> f64 {
        q.rule
            .mapped(a, b)
            .map(|(x, w)| w * g(x) * phi(x).value)
            .sum()
    };
    // Flux G(s) = int_0^s g phi from the left and from the right.
    let mut left = vec![0.0; cells + 1];
    for i in 0..cells {
        left[i + 1] = left[i] + cell_integral(q.node(i, len), q.node(i + 1, len));
    }
    let mut right = vec![0.0; cells + 1];
    for i in (0..cells).rev() {
        right[i] = right[i + 1] + cell_integral(q.node(i, len), q.node(i + 1, len));
    }
    let periodic = base.is_periodic();
    let flux = |x: f64, i: usize| -> f64 {
        let (a, b) = (q.node(i, len), q.node(i + 1, len));
        if periodic || x <= 0.5 * len {
            left[i] + if x > a { cell_integral(a, x) } else { 0.0 }
        } else {
            -(right[i + 1] + if x < b { cell_integral(x, b) } else { 0.0 })
        }
    };
    let node_flux = |i: usize| -> f64 {
        if periodic || q.node(i, len) <= 0.5 * len {
            left[i]
        } else {
            -right[i]
        }
    };
    // Constant flux making u periodic on a torus (phi is constant there).
    let gauge = if periodic {
        let mut s = 0.0;
        for i in 0..cells {
            let (a, b) = (q.node(i, len), q.node(i + 1, len));
            s += q
                .rule
                .mapped(a, b)
                .map(|(x, w)| w * flux(x, i))
                .sum::<f64>();
        }
        s / len
    } else {
        0.0
    };
    let slope = |x: f64, i: usize| (gauge - flux(x, i)) / phi(x).value;
    let mut values = vec![0.0; cells + 1];
    for i in 0..cells {
        let (a, b) = (q.node(i, len), q.node(i + 1, len));
        values[i + 1] = values[i]
            + q.rule
                .mapped(a, b)
                .map(|(x, w)| w * slope(x, i))
                .sum::<f64>();
    }
    let jets: Vec<Jet> = (0..=cells)
        .map(|i| {
            let s = q.node(i, len);
            let p = phi(s);
            let fv = g(s);
            if p.value == 0.0 {
                Jet::new(values[i], 0.0, -0.5 * fv)
            } else {
                let d1 = (gauge - node_flux(i)) / p.value;
                Jet::new(values[i], d1, -fv - p.d1 * d1 / p.value)
            }
        })
        .collect();
    let u = RadialFunction::from_jets(len, &jets)?;
    let mean = base
        .integrate(|s| u.value(s), &QuadratureConfig::plain())?
        .value
        / area;
    let u = u.shifted(-mean).mark_mean_zero();
    let residual = laplace_residual(base, &u, &g);
    let fmax = (0..=4 * cells)
        .map(|k| g(len * k as f64 / (4 * cells) as f64).abs())
        .fold(0.0, f64::max);
    if !(residual <= RESIDUAL_TOL * fmax.max(1.0)) {
        return Err(Error::GridTooCoarse {
            grid: cells,
            reason: format!("Laplace residual {residual:e} above tolerance"),
        });
    }
    Ok(u)
}

/// Nonnegative Laplacian of a radial function at `s`, `-2 u''` at a pole.
pub fn radial_laplacian(base: &Base, u: &dyn Radial, s: f64) -> f64 {
    let p = base.phi_jet(s);
    let j = u.jet(s);
    if p.value == 0.0 {
        -2.0 * j.d2
    } else {
        -(j.d2 + p.d1 * j.d1 / p.value)
    }
}

/// `max |Delta u - f|` over the cell midpoints of the base grid.
pub fn laplace_residual(base: &Base, u: &dyn Radial, f: &dyn Fn(f64) -> f64) -> f64 {
    let cells = base.grid();
    let h = base.length() / cells as f64;
    (0..cells)
        .map(|i| {
            let s = h * (i as f64 + 0.5);
            (radial_laplacian(base, u, s) - f(s)).abs()
        })
        .fold(0.0, f64::max)
}

/// Second-order finite-volume solution of `Delta u = f` on `cells` uniform
/// cells, nodal values with zero weighted mean. Cross-check for
/// [`laplace_solve_radial`].
pub fn laplace_solve_fd(base: &Base, f: &dyn Radial, cells: usize) -> Result<Vec<f64>> {
    if cells < 3 {
        return Err(Error::GridTooCoarse {
            grid: cells,
            reason: "finite volumes need at least three cells".into(),
        });
    }
    let len = base.length();
    let h = len / cells as f64;
    let periodic = base.is_periodic();
    let n = if periodic { cells } else { cells + 1 };
    let node = |i: usize| h * i as f64;
    let half = |i: usize| base.phi_jet(h * (i as f64 + 0.5)).value;
    // Dual-cell volumes (without the 2 pi).
    let rule = GaussRule::new(4);
    let vol: Vec<f64> = (0..n)
        .map(|i| {
            let lo = if periodic || i > 0 {
                node(i) - 0.5 * h
            } else {
                0.0
            };
            let hi = if periodic || i < cells {
                node(i) + 0.5 * h
            } else {
                len
            };
            rule.apply(lo, hi, |x| base.phi_jet(x.rem_euclid(len)).value)
        })
        .collect();
    let rhs_raw: Vec<f64> = (0..n).map(|i| f.value(node(i)) * vol[i]).collect();
    let mean = rhs_raw.iter().sum::<f64>() / vol.iter().sum::<f64>();
    let mut rhs: Vec<f64> = (0..n).map(|i| rhs_raw[i] - mean * vol[i]).collect();
    // Row i: (k_{i-1/2} (u_i - u_{i-1}) + k_{i+1/2} (u_i - u_{i+1})) / h.
    let k = |i: usize| half(i) / h;
    let mut diag = vec![0.0; n];
    let mut lower = vec![0.0; n - 1];
    let mut upper = vec![0.0; n - 1];
    for i in 0..n {
        if periodic || i > 0 {
            let km = k((i + cells - 1) % cells);
            diag[i] += km;
            if i > 0 {
                lower[i - 1] = -km;
            }
        }
        if periodic || i < cells {
            let kp = k(i % cells);
            diag[i] += kp;
            if i + 1 < n {
                upper[i] = -kp;
            }
        }
    }
    // Pin u_0 = 0 to remove the constant kernel.
    diag[0] = 1.0;
    upper[0] = 0.0;
    rhs[0] = 0.0;
    let mut u = if periodic {
        let corner_high = -k(cells - 1);
        solve_cyclic_tridiagonal(&lower, &diag, &upper, 0.0, corner_high, &rhs)?
    } else {
        solve_tridiagonal(&lower, &diag, &upper, &rhs)?
    };
    let m = u.iter().zip(&vol).map(|(a, b)| a * b).sum::<f64>() / vol.iter().sum::<f64>();
    u.iter_mut().for_each(|v| *v -= m);
    Ok(u)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Uniformization {
    /// Conformal exponent: the metric `e^(2u) g` has positive curvature.
    pub u: RadialFunction,
    /// Minimum over the grid of `Scal_{g_u} = 2 e^(-2u) (Delta u + K)`.
    pub min_scal: f64,
    /// `4 pi chi / area`.
    pub target: f64,
    /// Largest relative deviation of `Scal_{g_u} e^(2u)` from `target`.
    pub max_relative_deviation: f64,
}

/// Conformal change `e^(2u) g` of a base with `chi > 0` whose scalar
/// curvature is `(4 pi chi / area) e^(-2u)`, from `Delta u = 2 pi chi / area
/// - K`.
pub fn uniformize_positive(base: &Base) -> Result<Uniformization> {
    let chi = base.euler_characteristic();
    if !(chi > 0.0) {
        return Err(Error::ChiNotPositive(chi));
    }
    let area = base.area()?;
    let c = 2.0 * PI * chi / area;
    let rhs = CurvatureGap {
        base: base.clone(),
        level: c,
    };
    let u = laplace_solve_radial(base, &rhs)?;
    let target = 2.0 * c;
    let mut min_scal = f64::INFINITY;
    let mut dev: f64 = 0.0;
    for i in 0..=u.cells() {
        let s = u.node(i);
        let lap = radial_laplacian(base, &u, s);
        let e = (-2.0 * u.value(s)).exp();
        let scal = 2.0 * e * (lap + base.curvature_or_limit(s));
        min_scal = min_scal.min(scal);
        dev = dev.max((scal / e - target).abs() / target);
    }
    Ok(Uniformization {
        u,
        min_scal,
        target,
        max_relative_deviation: dev,
    })
}

/// `level - K(s)` as a radial function.
#[derive(Debug)]
struct CurvatureGap {
    base: Base,
    level: f64,
}

impl Radial for CurvatureGap {
    fn jet(&self, s: f64) -> Jet {
        Jet::constant(self.level - self.base.curvature_or_limit(s))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinimizerConfig {
    /// Cells of the grid carrying the conformal factor.
    pub grid: usize,
    pub max_iterations: usize,
    /// Initial step length along the preconditioned descent direction.
    pub step: f64,
    pub armijo_shrink: f64,
    /// Sufficient-decrease constant of the Armijo test.
    pub armijo_c: f64,
    /// Stop when the relative decrease over `window` iterations falls
    /// below this.
    pub tolerance: f64,
    pub window: usize,
    pub u_floor: f64,
    /// Gauss points per cell for the discrete functional.
    pub points_per_cell: usize,
}

impl Default for MinimizerConfig {
    fn default() -> Self {
        Self {
            grid: 256,
            max_iterations: 2000,
            step: 1e-2,
            armijo_shrink: 0.5,
            armijo_c: 1e-4,
            tolerance: 1e-10,
            window: 50,
            u_floor: 1e-8,
            points_per_cell: 6,
        }
    }
}

impl MinimizerConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = self.grid >= 2
            && self.max_iterations > 0
            && self.step > 0.0
            && self.armijo_shrink > 0.0
            && self.armijo_shrink < 1.0
            && self.armijo_c > 0.0
            && self.armijo_c < 1.0
            && self.tolerance > 0.0
            && self.tolerance < 1.0
            && self.window > 0
            && self.u_floor > 0.0
            && self.points_per_cell >= 2;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidConfig(format!(
                "invalid minimizer configuration {self:?}"
            )))
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinimizerResult {
    /// Upper bound for the invariant Yamabe constant: the functional value
    /// at `u_star`.
    pub mu_upper: f64,
    pub u_star: RadialFunction,
    /// Functional values, non-increasing.
    pub trace: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

/// Quadrature point: cell, u-basis (v_i, v_i+1, M_i, M_i+1), u'-basis,
/// weight `4 pi^2 l phi w`, `Scal`.
type Point = (usize, [f64; 4], [f64; 4], f64, f64);

/// Discrete Yamabe functional over clamped cubic splines on a uniform grid.
struct Discrete {
    cells: usize,
    h: f64,
    periodic: bool,
    points: Vec<Point>,
}

impl Discrete {
    fn new(metric: &InvariantMetric, cfg: &MinimizerConfig) -> Self {
        let base = metric.base();
        let cells = cfg.grid;
        let len = base.length();
        let h = len / cells as f64;
        let rule = GaussRule::new(cfg.points_per_cell);
        let mut points = Vec::with_capacity(cells * cfg.points_per_cell);
        for i in 0..cells {
            let a = h * i as f64;
            for (x, w) in rule.mapped(a, a + h) {
                let t = (x - a) / h;
                let r = 1.0 - t;
                let ub = [
                    r,
                    t,
                    h * h / 6.0 * (r * r * r - r),
                    h * h / 6.0 * (t * t * t - t),
                ];
                let db = [
                    -1.0 / h,
                    1.0 / h,
                    -h / 6.0 * (3.0 * r * r - 1.0),
                    h / 6.0 * (3.0 * t * t - 1.0),
                ];
                let weight = 4.0 * PI * PI * metric.ell().value(x) * base.phi_jet(x).value * w;
                points.push((i, ub, db, weight, metric.scalar_curvature_or_limit(x)));
            }
        }
        Self {
            cells,
            h,
            periodic: base.is_periodic(),
            points,
        }
    }

    fn curvatures(&self, v: &[f64]) -> Result<Vec<f64>> {
        clamped_spline_curvatures(v, self.h)
    }

    /// Numerator and denominator sums.
    fn parts(&self, v: &[f64], m: &[f64]) -> (f64, f64) {
        let (mut num, mut den) = (0.0, 0.0);
        for (i, ub, db, w, scal) in &self.points {
            let i = *i;
            let c = [v[i], v[i + 1], m[i], m[i + 1]];
            let u: f64 = ub.iter().zip(&c).map(|(a, b)| a * b).sum();
            let du: f64 = db.iter().zip(&c).map(|(a, b)| a * b).sum();
            num += w * (8.0 * du * du + scal * u * u);
            den += w * u.powi(6);
        }
        (num, den)
    }

    fn value(&self, v: &[f64]) -> Result<f64> {
        let m = self.curvatures(v)?;
        let (num, den) = self.parts(v, &m);
        Ok(num / den.cbrt())
    }

    /// Value and gradient with respect to the nodal values.
    fn gradient(&self, v: &[f64]) -> Result<(f64, Vec<f64>)> {
        let n = v.len();
        let m = self.curvatures(v)?;
        let (num, den) = self.parts(v, &m);
        let d13 = den.cbrt();
        let e = num / d13;
        let mut gv = vec![0.0; n];
        let mut gm = vec![0.0; n];
        for (i, ub, db, w, scal) in &self.points {
            let i = *i;
            let c = [v[i], v[i + 1], m[i], m[i + 1]];
            let u: f64 = ub.iter().zip(&c).map(|(a, b)| a * b).sum();
            let du: f64 = db.iter().zip(&c).map(|(a, b)| a * b).sum();
            let gu = w * (2.0 * scal * u / d13 - 2.0 * num * u.powi(5) / (d13 * den));
            let gdu = 16.0 * w * du / d13;
            for k in 0..4 {
                let g = ub[k] * gu + db[k] * gdu;
                let idx = i + (k % 2);
                if k < 2 {
                    gv[idx] += g;
                } else {
                    gm[idx] += g;
                }
            }
        }
        // M = A^{-1} (6/h^2) D v with A, D symmetric.
        let mut diag = vec![4.0; n];
        diag[0] = 2.0;
        diag[n - 1] = 2.0;
        let off = vec![1.0; n - 1];
        let y = solve_tridiagonal(&off, &diag, &off, &gm)?;
        let c = 6.0 / (self.h * self.h);
        for i in 0..n {
            let dy = if i == 0 {
                y[1] - y[0]
            } else if i == n - 1 {
                y[n - 2] - y[n - 1]
            } else {
                y[i + 1] - 2.0 * y[i] + y[i - 1]
            };
            gv[i] += c * dy;
        }
        if self.periodic {
            gv[0] += gv[n - 1];
            gv[n - 1] = gv[0];
        }
        Ok((e, gv))
    }

    /// Weighted `H^1` preconditioner `8 K + c M` (lumped mass).
    fn precondition(&self, g: &[f64], shift: f64) -> Result<Vec<f64>> {
        let n = self.cells + 1;
        let mut stiff = vec![0.0; self.cells];
        let mut mass = vec![0.0; n];
        for (i, _, _, w, _) in &self.points {
            stiff[*i] += 8.0 * w / (self.h * self.h);
            mass[*i] += 0.5 * w;
            mass[*i + 1] += 0.5 * w;
        }
        if self.periodic {
            let cells = self.cells;
            let mut diag = vec![0.0; cells];
            let mut off = vec![0.0; cells - 1];
            for i in 0..cells {
                let prev = stiff[(i + cells - 1) % cells];
                diag[i] =
                    stiff[i] + prev + shift * (mass[i] + if i == 0 { mass[cells] } else { 0.0 });
                if i + 1 < cells {
                    off[i] = -stiff[i];
                }
            }
            let corner = -stiff[cells - 1];
            let p = solve_cyclic_tridiagonal(&off, &diag, &off, corner, corner, &g[..cells])?;
            let mut out = p;
            out.push(out[0]);
            Ok(out)
        } else {
            let mut diag = vec![0.0; n];
            let mut off = vec![0.0; n - 1];
            for i in 0..self.cells {
                diag[i] += stiff[i];
                diag[i + 1] += stiff[i];
                off[i] = -stiff[i];
            }
            for i in 0..n {
                diag[i] += shift * mass[i];
            }
            solve_tridiagonal(&off, &diag, &off, g)
        }
    }

    fn normalize(&self, v: &mut [f64]) -> Result<()> {
        let m = self.curvatures(v)?;
        let (_, den) = self.parts(v, &m);
        let k = den.powf(-1.0 / 6.0);
        v.iter_mut().for_each(|x| *x *= k);
        Ok(())
    }
}

/// Projected, preconditioned gradient descent with Armijo backtracking on
/// the Yamabe functional of `u^4 g~` over radial `u > 0`, starting from
/// `u = 1`.
pub fn minimize_conformal(
    metric: &InvariantMetric,
    cfg: &MinimizerConfig,
) -> Result<MinimizerResult> {
    minimize_conformal_from(metric, cfg, &vec![1.0; cfg.grid + 1])
}

/// [`minimize_conformal`] from the nodal values `initial` (length
/// `grid + 1`).
pub fn minimize_conformal_from(
    metric: &InvariantMetric,
    cfg: &MinimizerConfig,
    initial: &[f64],
) -> Result<MinimizerResult> {
    cfg.validate()?;
    if initial.len() != cfg.grid + 1 {
        return Err(Error::DimensionMismatch(format!(
            "initial values {} for a grid of {} cells",
            initial.len(),
            cfg.grid
        )));
    }
    if let Some((i, v)) = initial
        .iter()
        .enumerate()
        .find(|(_, v)| !(**v > 0.0 && v.is_finite()))
    {
        return Err(Error::NonPositiveU {
            value: *v,
            at: metric.base().length() * i as f64 / cfg.grid as f64,
        });
    }
    let disc = Discrete::new(metric, cfg);
    let mut v = initial.to_vec();
    if disc.periodic {
        let n = v.len();
        v[n - 1] = v[0];
    }
    disc.normalize(&mut v)?;
    let shift = disc
        .points
        .iter()
        .map(|p| p.4.abs())
        .fold(0.0, f64::max)
        .max(1.0);
    let (mut e, mut g) = disc.gradient(&v)?;
    let mut trace = vec![e];
    let mut alpha = cfg.step;
    let mut converged = false;
    let mut iterations = 0;
    while iterations < cfg.max_iterations {
        let d = disc.precondition(&g, shift)?;
        let slope: f64 = -g.iter().zip(&d).map(|(a, b)| a * b).sum::<f64>();
        if !(slope < 0.0) {
            converged = true;
            break;
        }
        let mut step = alpha;
        let mut accepted = None;
        while step > 1e-16 {
            let mut trial: Vec<f64> = v
                .iter()
                .zip(&d)
                .map(|(x, y)| (x - step * y).max(cfg.u_floor))
                .collect();
            if disc.periodic {
                let n = trial.len();
                trial[n - 1] = trial[0];
            }
            let val = disc.value(&trial)?;
            if val.is_finite() && val <= e + cfg.armijo_c * step * slope {
                accepted = Some((trial, val));
                break;
            }
            step *= cfg.armijo_shrink;
        }
        let Some((mut trial, _)) = accepted else {
            converged = true;
            break;
        };
        disc.normalize(&mut trial)?;
        let (new_e, new_g) = disc.gradient(&trial)?;
        iterations += 1;
        if new_e > e {
            // Rounding in the normalization; keep the previous iterate.
            converged = true;
            break;
        }
        v = trial;
        e = new_e;
        g = new_g;
        trace.push(e);
        alpha = (2.0 * step).min(1e6);
        if trace.len() > cfg.window {
            let old = trace[trace.len() - 1 - cfg.window];
            if (old - e).abs() <= cfg.tolerance * e.abs().max(1e-300) {
                converged = true;
                break;
            }
        }
    }
    let u_star = RadialFunction::from_samples(metric.base().length(), &v)?;
    let at_one = conformal_functional(metric, &Constant(1.0))?;
    let (mu_upper, u_star) = if e <= at_one {
        (e, u_star)
    } else {
        let ones = vec![1.0; cfg.grid + 1];
        (
            at_one,
            RadialFunction::from_samples(metric.base().length(), &ones)?,
        )
    };
    Ok(MinimizerResult {
        mu_upper,
        u_star,
        trace,
        iterations,
        converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbifold::make_round_sphere;
    use crate::radial::CosineSeries;

    #[test]
    fn zero_rhs_gives_zero() {
        let b = Base::from(make_round_sphere(1.0).unwrap());
        let u = laplace_solve_radial(&b, &Constant(0.0)).unwrap();
        assert!(u.max_abs() < 1e-14);
        assert!(u.is_mean_zero());
    }

    #[test]
    fn axial_harmonic_on_half_sphere() {
        let b = Base::from(make_round_sphere(0.5).unwrap());
        let f = CosineSeries::new(0.5 * PI, vec![0.0, 1.0]).unwrap();
        let u = laplace_solve_radial(&b, &f).unwrap();
        for k in 0..=20 {
            let s = 0.5 * PI * k as f64 / 20.0;
            assert!((u.value(s) - f.value(s) / 8.0).abs() < 1e-9);
        }
    }

    #[test]
    fn nonzero_mean_rejected() {
        let b = Base::from(make_round_sphere(1.0).unwrap());
        assert!(matches!(
            laplace_solve_radial(&b, &Constant(1.0)),
            Err(Error::NotMeanZero { .. })
        ));
    }

    #[test]
    fn round_sphere_is_already_uniform() {
        let b = Base::from(make_round_sphere(0.5).unwrap());
        let r = uniformize_positive(&b).unwrap();
        assert!(r.u.max_abs() < 1e-9);
        assert!((r.min_scal - 8.0).abs() < 1e-8);
    }

    #[test]
    fn gradient_matches_differences() {
        let b = make_round_sphere(0.5).unwrap();
        let m = InvariantMetric::constant(b, 0.7, 2.0).unwrap();
        let cfg = MinimizerConfig {
            grid: 16,
            ..MinimizerConfig::default()
        };
        let d = Discrete::new(&m, &cfg);
        let v: Vec<f64> = (0..=16)
            .map(|i| 1.0 + 0.2 * (i as f64 * 0.3).sin())
            .collect();
        let (_, g) = d.gradient(&v).unwrap();
        for i in [0, 5, 16] {
            let h = 1e-6;
            let mut p = v.clone();
            p[i] += h;
            let mut q = v.clone();
            q[i] -= h;
            let fd = (d.value(&p).unwrap() - d.value(&q).unwrap()) / (2.0 * h);
            assert!(
                (fd - g[i]).abs() < 1e-6 * fd.abs().max(1.0),
                "{i}: {fd} vs {}",
                g[i]
            );
        }
    }
}
