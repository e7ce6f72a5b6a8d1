/// Value at `x` of the polynomial interpolating `(xs, ys)`, by Neville's
/// scheme. With `x` outside the sample range this is polynomial
/// (Richardson-type) extrapolation.
pub fn polynomial_extrapolate(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    assert_eq!(xs.len(), ys.len(), "abscissae and values must pair up");
    let mut p = ys.to_vec();
    let n = xs.len();
    for k in 1..n {
        for i in 0..n - k {
            p[i] = ((x - xs[i + k]) * p[i] + (xs[i] - x) * p[i + 1]) / (xs[i] - xs[i + k]);
        }
    }
    p[0]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_on_polynomials() {
        let f = |x: f64| 2.0 - x + 3.0 * x * x - 0.5 * x.powi(3);
        let xs = [0.1, 0.2, 0.3, 0.4];
        let ys: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
        assert!((polynomial_extrapolate(&xs, &ys, 0.0) - 2.0).abs() < 1e-12);
    }
}
