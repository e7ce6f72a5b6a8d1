//! Quadrature, derivative checking, scalar minimization and tridiagonal
//! solves shared by the geometric modules.

mod derivative;
mod extrapolate;
mod gauss;
mod linalg;
mod minimize;
mod quadrature;

pub use derivative::check_derivative;
pub use extrapolate::polynomial_extrapolate;
pub use gauss::GaussRule;
pub use linalg::{solve_cyclic_tridiagonal, solve_tridiagonal};
pub use minimize::minimize_scalar;
pub use quadrature::{integrate, EndpointMode, IntegralResult, QuadratureConfig};
