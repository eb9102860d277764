//! Central finite differences with one Richardson extrapolation step.

/// Default step for first derivatives.
pub const H_FIRST: f64 = 1e-4;
/// Default step for second derivatives (roundoff grows like `eps/h²`).
pub const H_SECOND: f64 = 1e-3;

fn five_point_first<F: Fn(f64) -> f64>(f: &F, x: f64, h: f64) -> f64 {
    (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h)
}

fn five_point_second<F: Fn(f64) -> f64>(f: &F, x: f64, h: f64) -> f64 {
    (-f(x - 2.0 * h) + 16.0 * f(x - h) - 30.0 * f(x) + 16.0 * f(x + h) - f(x + 2.0 * h))
        / (12.0 * h * h)
}

/// `f'(x)`; the O(h⁴) stencil at `h` and `h/2` combined to O(h⁶).
pub fn first<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    let coarse = five_point_first(&f, x, h);
    let fine = five_point_first(&f, x, 0.5 * h);
    (16.0 * fine - coarse) / 15.0
}

/// `f''(x)`, same extrapolation as [`first`].
pub fn second<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    let coarse = five_point_second(&f, x, h);
    let fine = five_point_second(&f, x, 0.5 * h);
    (16.0 * fine - coarse) / 15.0
}

/// Plain five-point second difference of uniformly spaced samples.
///
/// Returns `None` at the two points nearest each end.
pub fn second_on_samples(y: &[f64], h: f64) -> Vec<Option<f64>> {
    let n = y.len();
    (0..n)
        .map(|i| {
            if i < 2 || i + 2 >= n {
                None
            } else {
                Some(
                    (-y[i - 2] + 16.0 * y[i - 1] - 30.0 * y[i] + 16.0 * y[i + 1] - y[i + 2])
                        / (12.0 * h * h),
                )
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_derivatives_are_exact_to_roundoff() {
        let p = |x: f64| x.powi(5) - 3.0 * x * x + 1.0;
        assert!((first(p, 1.3, 1e-2) - (5.0 * 1.3f64.powi(4) - 6.0 * 1.3)).abs() < 1e-10);
        assert!((second(p, 1.3, 1e-2) - (20.0 * 1.3f64.powi(3) - 6.0)).abs() < 1e-9);
    }

    #[test]
    fn sampled_stencil_skips_boundary() {
        let h = 0.1;
        let y: Vec<f64> = (0..7).map(|i| (i as f64 * h).powi(2)).collect();
        let d = second_on_samples(&y, h);
        assert!(d[0].is_none() && d[1].is_none() && d[5].is_none() && d[6].is_none());
        for v in d.iter().flatten() {
            assert!((v - 2.0).abs() < 1e-10);
        }
    }
}
