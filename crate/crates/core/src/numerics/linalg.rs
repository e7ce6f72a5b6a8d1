use crate::error::{Error, Result};

/// Thomas algorithm for a tridiagonal system.
///
/// `lower` and `upper` hold the `n - 1` sub- and super-diagonal entries.
/// One step of iterative refinement is applied; the returned solution has a
/// residual below `1e-12 * (|A| |x| + |b|)` in the max norm or the call fails.
pub fn solve_tridiagonal(
    lower: &[f64],
    diag: &[f64],
    upper: &[f64],
    rhs: &[f64],
) -> Result<Vec<f64>> {
    let n = diag.len();
    if n == 0 || rhs.len() != n || lower.len() + 1 != n || upper.len() + 1 != n {
        return Err(Error::DimensionMismatch(format!(
            "diag {n}, lower {}, upper {}, rhs {}",
            lower.len(),
            upper.len(),
            rhs.len()
        )));
    }
    let mut x = thomas(lower, diag, upper, rhs)?;
    let r = residual(lower, diag, upper, rhs, &x);
    let dx = thomas(lower, diag, upper, &r)?;
    for (xi, di) in x.iter_mut().zip(&dx) {
        *xi += di;
    }
    let r = residual(lower, diag, upper, rhs, &x);
    let a_norm = (0..n)
        .map(|i| {
            diag[i].abs()
                + if i > 0 { lower[i - 1].abs() } else { 0.0 }
                + if i + 1 < n { upper[i].abs() } else { 0.0 }
        })
        .fold(0.0, f64::max);
    let scale = a_norm * max_abs(&x) + max_abs(rhs);
    if max_abs(&r) > 1e-12 * scale {
        return Err(Error::Singular { row: n - 1 });
    }
    Ok(x)
}

/// Solves a cyclic tridiagonal system where row 0 also couples to `x[n-1]`
/// through `corner_low` and row `n-1` couples to `x[0]` through
/// `corner_high` (Sherman–Morrison on top of [`solve_tridiagonal`]).
pub fn solve_cyclic_tridiagonal(
    lower: &[f64],
    diag: &[f64],
    upper: &[f64],
    corner_low: f64,
    corner_high: f64,
    rhs: &[f64],
) -> Result<Vec<f64>> {
    let n = diag.len();
    if n < 3 {
        return Err(Error::DimensionMismatch(format!(
            "cyclic system needs n >= 3, got {n}"
        )));
    }
    let gamma = -diag[0];
    let mut d = diag.to_vec();
    d[0] -= gamma;
    d[n - 1] -= corner_high * corner_low / gamma;
    let x = solve_tridiagonal(lower, &d, upper, rhs)?;
    let mut u = vec![0.0; n];
    u[0] = gamma;
    u[n - 1] = corner_high;
    let z = solve_tridiagonal(lower, &d, upper, &u)?;
    let fact =
        (x[0] + corner_low * x[n - 1] / gamma) / (1.0 + z[0] + corner_low * z[n - 1] / gamma);
    Ok(x.iter().zip(&z).map(|(xi, zi)| xi - fact * zi).collect())
}

fn thomas(lower: &[f64], diag: &[f64], upper: &[f64], rhs: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    let scale = diag
        .iter()
        .map(|d| d.abs())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    let mut pivot = diag[0];
    if pivot.abs() <= 1e-14 * scale {
        return Err(Error::Singular { row: 0 });
    }
    if n > 1 {
        c[0] = upper[0] / pivot;
    }
    d[0] = rhs[0] / pivot;
    for i in 1..n {
        pivot = diag[i] - lower[i - 1] * c[i - 1];
        if pivot.abs() <= 1e-14 * scale {
            return Err(Error::Singular { row: i });
        }
        if i + 1 < n {
            c[i] = upper[i] / pivot;
        }
        d[i] = (rhs[i] - lower[i - 1] * d[i - 1]) / pivot;
    }
    for i in (0..n - 1).rev() {
        d[i] -= c[i] * d[i + 1];
    }
    Ok(d)
}

fn residual(lower: &[f64], diag: &[f64], upper: &[f64], rhs: &[f64], x: &[f64]) -> Vec<f64> {
    let n = diag.len();
    (0..n)
        .map(|i| {
            let mut ax = diag[i] * x[i];
            if i > 0 {
                ax += lower[i - 1] * x[i - 1];
            }
            if i + 1 < n {
                ax += upper[i] * x[i + 1];
            }
            rhs[i] - ax
        })
        .collect()
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().map(|x| x.abs()).fold(0.0, f64::max)
}
