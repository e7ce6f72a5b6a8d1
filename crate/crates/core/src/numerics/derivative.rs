use crate::error::{Error, Result};

/// Largest relative discrepancy between central differences of `f` and the
/// claimed derivative `df` at `t`, over the step sizes in `steps`.
///
/// The discrepancy is `|(f(t+h) - f(t-h))/2h - df(t)| / max(1, |df(t)|)`.
/// `domain` is the open interval on which `f` is defined.
pub fn check_derivative<F, D>(f: F, df: D, t: f64, steps: &[f64], domain: (f64, f64)) -> Result<f64>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let (lo, hi) = domain;
    let inside = |x: f64| x > lo && x < hi;
    if !inside(t) {
        return Err(Error::Domain {
            point: t,
            context: "derivative check point",
        });
    }
    let exact = df(t);
    let scale = exact.abs().max(1.0);
    let mut worst: f64 = 0.0;
    for &h in steps {
        if !(h > 0.0) {
            return Err(Error::InvalidArgument(format!("step {h} must be positive")));
        }
        for x in [t - h, t + h] {
            if !inside(x) {
                return Err(Error::Domain {
                    point: x,
                    context: "derivative check stencil",
                });
            }
        }
        let central = (f(t + h) - f(t - h)) / (2.0 * h);
        worst = worst.max((central - exact).abs() / scale);
    }
    Ok(worst)
}
