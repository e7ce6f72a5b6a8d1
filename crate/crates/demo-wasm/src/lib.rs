//! WebAssembly bindings for the static page in `www/`.
//!
//! Each export returns a flat `Float64Array`; the `*_values` functions are
//! the same computations with Rust errors, used by the native tests.

use wasm_bindgen::prelude::*;

use s1_yamabe::bundle::InvariantMetric;
use s1_yamabe::invariants::{c1_closed, chi_closed, ratio_to_f64};
use s1_yamabe::orbifold::wps_profile;
use s1_yamabe::scaling::log_grid;
use s1_yamabe::yamabe::{
    bound_cauchy_schwarz, bound_theorem_main, functional_j_closed, optimal_ell, ClosedFormData,
};

const GRID: usize = 256;

fn weighted_hopf_data(m1: u32, m2: u32) -> s1_yamabe::Result<ClosedFormData> {
    let metric = InvariantMetric::weighted_hopf(wps_profile(m1 as u64, m2 as u64, GRID)?, 1.0)?;
    ClosedFormData::from_metric(&metric)
}

/// `[c1, chi, main bound, Cauchy-Schwarz bound, optimal l, J at optimal l]`.
pub fn weighted_hopf_values(m1: u32, m2: u32) -> s1_yamabe::Result<Vec<f64>> {
    let c1 = ratio_to_f64(c1_closed(m1 as u64, m2 as u64)?);
    let chi = ratio_to_f64(chi_closed(m1 as u64, m2 as u64)?);
    let data = weighted_hopf_data(m1, m2)?;
    let (ell, j) = optimal_ell(&data)?;
    Ok(vec![
        c1,
        chi,
        bound_theorem_main(chi, c1)?,
        bound_cauchy_schwarz(&data)?,
        ell,
        j,
    ])
}

/// Interleaved `[l, J(l), ...]` over `n` log-spaced constant fibre lengths.
pub fn ell_curve_values(m1: u32, m2: u32, lo: f64, hi: f64, n: u32) -> s1_yamabe::Result<Vec<f64>> {
    let data = weighted_hopf_data(m1, m2)?;
    let mut out = Vec::with_capacity(2 * n as usize);
    for ell in log_grid(lo, hi, n as usize)? {
        out.push(ell);
        out.push(functional_j_closed(&data, ell)?);
    }
    Ok(out)
}

/// Interleaved `[s, phi(s), ...]` of the weighted projective line profile.
pub fn wps_profile_values(m1: u32, m2: u32, n: u32) -> s1_yamabe::Result<Vec<f64>> {
    let p = wps_profile(m1 as u64, m2 as u64, GRID)?;
    let n = n.max(2) as usize;
    let len = p.length();
    Ok((0..=n)
        .flat_map(|i| {
            let s = len * i as f64 / n as f64;
            [s, p.phi(s)]
        })
        .collect())
}

fn js(e: s1_yamabe::Error) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen]
pub fn weighted_hopf(m1: u32, m2: u32) -> Result<Vec<f64>, JsError> {
    weighted_hopf_values(m1, m2).map_err(js)
}

#[wasm_bindgen]
pub fn ell_curve(m1: u32, m2: u32, lo: f64, hi: f64, n: u32) -> Result<Vec<f64>, JsError> {
    ell_curve_values(m1, m2, lo, hi, n).map_err(js)
}

#[wasm_bindgen]
pub fn wps_profile_samples(m1: u32, m2: u32, n: u32) -> Result<Vec<f64>, JsError> {
    wps_profile_values(m1, m2, n).map_err(js)
}
