//! Fibre-length scans: the maximum over `l` when `chi > 0` and the
//! curvature form is nonzero, growth without bound when it vanishes, and
//! collapse to zero when `chi <= 0`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::yamabe::{functional_j_closed, ClosedFormData};

/// Which regime a base and density fall into as the fibre length varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanFlag {
    /// `chi > 0`, `Omega != 0`: interior maximum.
    MaxInterior,
    /// `chi > 0`, `Omega = 0`: `J ~ l^(2/3)` grows without bound.
    DivergesAsEllGrows,
    /// `chi <= 0`: `J < 0` and `J -> 0` as `l -> 0`.
    SupZeroNotAttained,
}

impl ScanFlag {
    pub fn classify(data: &ClosedFormData) -> Self {
        if !(data.chi > 0.0) {
            ScanFlag::SupZeroNotAttained
        } else if data.omega_l2_sq > 0.0 {
            ScanFlag::MaxInterior
        } else {
            ScanFlag::DivergesAsEllGrows
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ScanFlag::MaxInterior => "MaxInterior",
            ScanFlag::DivergesAsEllGrows => "DivergesAsEllGrows",
            ScanFlag::SupZeroNotAttained => "SupZeroNotAttained",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub ell: f64,
    pub j: f64,
    /// Hoelder lower bound, present when `chi <= 0`.
    pub lower: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanTable {
    pub rows: Vec<ScanRow>,
    pub flag: ScanFlag,
    /// Least-squares fit `|J| ~ coefficient * l^exponent`, when at least
    /// four rows have nonzero `J`.
    pub fit: Option<(f64, f64)>,
}

/// `n` points from `lo` to `hi`, equally spaced in `log l`.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi >= lo && lo.is_finite() && hi.is_finite()) || n == 0 {
        return Err(Error::InvalidArgument(format!(
            "log grid needs 0 < lo <= hi and n > 0 (got {lo}, {hi}, {n})"
        )));
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    let (a, b) = (lo.ln(), hi.ln());
    Ok((0..n)
        .map(|k| match k {
            0 => lo,
            k if k == n - 1 => hi,
            k => (a + (b - a) * k as f64 / (n - 1) as f64).exp(),
        })
        .collect())
}

/// Log grid with three points per decade covering `[lo, hi]`.
pub fn default_log_grid(lo: f64, hi: f64) -> Result<Vec<f64>> {
    let decades = (hi / lo).log10().max(0.0);
    log_grid(lo, hi, (3.0 * decades).ceil() as usize + 1)
}

/// `-(2 pi l)^(2/3) (||Scal_g||_{3/2} + ||Omega||_3^2 / 4)`.
fn hoelder_lower(data: &ClosedFormData, ell: f64) -> f64 {
    -(2.0 * PI * ell).powf(2.0 / 3.0) * (data.scal_l32 + 0.25 * data.omega_l3_sq)
}

/// The closed-form functional over a list of constant fibre lengths.
pub fn ell_scan(data: &ClosedFormData, ells: &[f64]) -> Result<ScanTable> {
    if ells.is_empty() {
        return Err(Error::InvalidArgument("empty fibre-length list".into()));
    }
    let flag = ScanFlag::classify(data);
    let mut sorted = ells.to_vec();
    sorted.sort_by(f64::total_cmp);
    let rows = sorted
        .iter()
        .map(|&ell| {
            Ok(ScanRow {
                ell,
                j: functional_j_closed(data, ell)?,
                lower: (flag == ScanFlag::SupZeroNotAttained).then(|| hoelder_lower(data, ell)),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut table = ScanTable {
        rows,
        flag,
        fit: None,
    };
    table.fit = fit_exponent(&table).ok();
    Ok(table)
}

/// Upper bound `J(l)` and Hoelder lower bound for the collapse of a
/// `chi <= 0` model at fibre length `l <= 1`.
pub fn collapse_bounds(data: &ClosedFormData, ell: f64) -> Result<(f64, f64)> {
    if data.chi > 0.0 {
        return Err(Error::ChiPositive(data.chi));
    }
    if !(ell > 0.0 && ell <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "collapse bounds need 0 < l <= 1 (got {ell})"
        )));
    }
    Ok((functional_j_closed(data, ell)?, hoelder_lower(data, ell)))
}

/// Least-squares slope and intercept of `log|y|` against `log x`, returned
/// as `(exponent, coefficient)`. Pairs with `y = 0` are skipped.
pub fn fit_power_law(xs: &[f64], ys: &[f64]) -> Result<(f64, f64)> {
    let pts: Vec<(f64, f64)> = xs
        .iter()
        .zip(ys)
        .filter(|(x, y)| **x > 0.0 && **y != 0.0 && y.is_finite())
        .map(|(x, y)| (x.ln(), y.abs().ln()))
        .collect();
    if pts.len() < 4 {
        return Err(Error::DegenerateData(format!(
            "need four nonzero rows, have {}",
            pts.len()
        )));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if !(sxx > 0.0) {
        return Err(Error::DegenerateData("all fibre lengths coincide".into()));
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    Ok((slope, (my - slope * mx).exp()))
}

/// Power-law fit of `|J|` against `l`.
pub fn fit_exponent(table: &ScanTable) -> Result<(f64, f64)> {
    let xs: Vec<f64> = table.rows.iter().map(|r| r.ell).collect();
    let ys: Vec<f64> = table.rows.iter().map(|r| r.j).collect();
    fit_power_law(&xs, &ys)
}

/// Power-law fit of the Hoelder lower bound against `l`.
pub fn fit_lower_exponent(table: &ScanTable) -> Result<(f64, f64)> {
    let (xs, ys): (Vec<f64>, Vec<f64>) = table
        .rows
        .iter()
        .filter_map(|r| r.lower.map(|l| (r.ell, l)))
        .unzip();
    fit_power_law(&xs, &ys)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_endpoints() {
        let g = log_grid(0.25, 2.0, 13).unwrap();
        assert_eq!(g[0], 0.25);
        assert_eq!(g[12], 2.0);
        assert_eq!(default_log_grid(1.0, 1000.0).unwrap().len(), 10);
    }

    #[test]
    fn constant_table_has_zero_exponent() {
        let (e, c) = fit_power_law(&[1.0, 2.0, 3.0, 4.0], &[5.0; 4]).unwrap();
        assert!(e.abs() < 1e-12 && (c - 5.0).abs() < 1e-12);
        assert!(fit_power_law(&[1.0, 2.0], &[1.0, 2.0]).is_err());
    }
}
