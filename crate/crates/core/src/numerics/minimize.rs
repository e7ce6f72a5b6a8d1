use crate::error::{Error, Result};

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for a local minimizer of `f` on `[lo, hi]`.
///
/// Stops once the bracket is narrower than `tol`. The bracket ends are
/// compared against the interior estimate at the end so a minimizer on the
/// boundary is reported as the boundary point itself.
pub fn minimize_scalar<F>(f: F, lo: f64, hi: f64, tol: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> f64,
{
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::InvalidBracket { lo, hi });
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tolerance {tol} must be positive"
        )));
    }
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a) > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    let mut best = (x, f(x));
    for end in [lo, hi] {
        let fe = f(end);
        if fe < best.1 {
            best = (end, fe);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parabola() {
        let (x, fx) = minimize_scalar(|x| (x - 2.0).powi(2), 0.0, 5.0, 1e-9).unwrap();
        assert!((x - 2.0).abs() < 1e-8);
        assert!(fx < 1e-15);
    }

    #[test]
    fn boundary_minimizer() {
        let (x, fx) = minimize_scalar(|x| x, 0.0, 1.0, 1e-10).unwrap();
        assert_eq!(x, 0.0);
        assert_eq!(fx, 0.0);
    }

    #[test]
    fn invalid_bracket() {
        assert!(matches!(
            minimize_scalar(|x| x, 1.0, 1.0, 1e-6),
            Err(Error::InvalidBracket { .. })
        ));
    }
}
