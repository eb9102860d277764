//! Bracketed scalar root finding.

/// Bisection on a sign-changing bracket until the bracket is narrower than `xtol`.
///
/// Returns the midpoint of the final bracket. Exact zeros short-circuit.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, xtol: f64) -> f64 {
    let mut flo = f(lo);
    if flo == 0.0 {
        return lo;
    }
    if f(hi) == 0.0 {
        return hi;
    }
    for _ in 0..200 {
        if (hi - lo).abs() <= xtol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Sign changes of `f` on `[a, b]`, scanned at `step` and refined to machine precision.
pub fn sign_changes<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, step: f64) -> Vec<f64> {
    let mut out = Vec::new();
    if a >= b {
        return out;
    }
    let n = ((b - a) / step).ceil().max(1.0) as usize;
    let h = (b - a) / n as f64;
    let mut x0 = a;
    let mut f0 = f(a);
    for i in 1..=n {
        let x1 = if i == n { b } else { a + i as f64 * h };
        let f1 = f(x1);
        if f0 == 0.0 {
            if out.last().is_none_or(|&z: &f64| z != x0) {
                out.push(x0);
            }
        } else if f1 != 0.0 && (f0 < 0.0) != (f1 < 0.0) {
            out.push(bisect(&f, x0, x1, 0.0));
        }
        x0 = x1;
        f0 = f1;
    }
    if f0 == 0.0 && out.last().is_none_or(|&z: &f64| z != x0) {
        out.push(x0);
    }
    out
}
