//! Yamabe-type functionals of circle-invariant metrics on 3-dimensional
//! circle (orbi)bundles over rotationally symmetric 2-orbifolds.
//!
//! The crate is organised bottom-up:
//!
//! * [`numerics`]: Gauss–Legendre quadrature with endpoint treatments,
//!   finite-difference derivative checks, golden-section search and
//!   tridiagonal solves.
//! * [`radial`]: functions of the arclength coordinate of a base (fibre
//!   lengths, curvature densities, conformal factors).
//! * [`orbifold`]: rotationally symmetric bases `ds^2 + phi(s)^2 dtheta^2`
//!   with cone points, flat tori and the weighted projective line chart.
//! * [`invariants`]: Chern number and orbifold Euler characteristic of
//!   `CP^1(m1, m2)` by quadrature, boundary terms and closed forms.
//! * [`bundle`]: invariant metrics on the total space, O'Neill scalar
//!   curvature and norms of the curvature form.
//! * [`yamabe`]: the Einstein–Hilbert and Yamabe functionals, the optimal
//!   fibre length and the upper bounds.
//! * [`conformal`]: radial Laplace solver, uniformization to positive
//!   curvature and a projected gradient minimizer for the Yamabe functional.
//! * [`scaling`]: fibre-length scans, collapse bounds and power-law fits.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bundle;
pub mod conformal;
pub mod error;
pub mod invariants;
pub mod numerics;
pub mod orbifold;
pub mod radial;
pub mod scaling;
pub mod yamabe;

pub use error::{Error, Result};
