//! Truncated Taylor jets: a value together with its first three derivatives.
//!
//! Closed-form wavefunctions are written once in terms of [`Jet`] arithmetic and
//! every consumer gets exact derivatives for free. An order that cannot be
//! produced analytically (for instance after applying `d/dx` to a jet) is
//! stored as `NaN`; [`SmoothFn::jet`] fills such slots by Richardson-extrapolated
//! finite differences of the next lower order.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use crate::numerics::diff;

/// `(f, f', f'', f''')` at a point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    pub v: f64,
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
}

impl Jet {
    pub const fn new(v: f64, d1: f64, d2: f64, d3: f64) -> Self {
        Jet { v, d1, d2, d3 }
    }

    pub const fn constant(c: f64) -> Self {
        Jet::new(c, 0.0, 0.0, 0.0)
    }

    /// The independent variable evaluated at `x`.
    pub const fn var(x: f64) -> Self {
        Jet::new(x, 1.0, 0.0, 0.0)
    }

    /// Jet of the derivative. The third-order slot becomes unknown.
    pub fn derivative(self) -> Self {
        Jet::new(self.d1, self.d2, self.d3, f64::NAN)
    }

    /// Chain rule for `g(self)` given `g, g', g'', g'''` at `self.v`.
    pub fn compose(self, g0: f64, g1: f64, g2: f64, g3: f64) -> Self {
        let (f1, f2, f3) = (self.d1, self.d2, self.d3);
        Jet::new(
            g0,
            g1 * f1,
            g2 * f1 * f1 + g1 * f2,
            g3 * f1 * f1 * f1 + 3.0 * g2 * f1 * f2 + g1 * f3,
        )
    }

    pub fn recip(self) -> Self {
        let r = 1.0 / self.v;
        self.compose(r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r)
    }

    pub fn sqrt(self) -> Self {
        let s = self.v.sqrt();
        let r = 1.0 / self.v;
        let g1 = 0.5 / s;
        self.compose(s, g1, -0.5 * g1 * r, 0.75 * g1 * r * r)
    }

    pub fn exp(self) -> Self {
        let e = self.v.exp();
        self.compose(e, e, e, e)
    }

    pub fn ln(self) -> Self {
        let r = 1.0 / self.v;
        self.compose(self.v.ln(), r, -r * r, 2.0 * r * r * r)
    }

    pub fn sin(self) -> Self {
        let (s, c) = self.v.sin_cos();
        self.compose(s, c, -s, -c)
    }

    pub fn cos(self) -> Self {
        let (s, c) = self.v.sin_cos();
        self.compose(c, -s, -c, s)
    }

    pub fn sinh(self) -> Self {
        let (s, c) = (self.v.sinh(), self.v.cosh());
        self.compose(s, c, s, c)
    }

    pub fn cosh(self) -> Self {
        let (s, c) = (self.v.sinh(), self.v.cosh());
        self.compose(c, s, c, s)
    }

    pub fn tanh(self) -> Self {
        let t = self.v.tanh();
        let s2 = 1.0 - t * t;
        self.compose(t, s2, -2.0 * t * s2, s2 * (6.0 * t * t - 2.0))
    }

    /// Hyperbolic secant, stable for large arguments.
    pub fn sech(self) -> Self {
        let s = 1.0 / self.v.cosh();
        let t = self.v.tanh();
        self.compose(s, -s * t, s * (2.0 * t * t - 1.0), s * t * (5.0 - 6.0 * t * t))
    }

    pub fn atan(self) -> Self {
        let x = self.v;
        let q = 1.0 / (1.0 + x * x);
        self.compose(
            x.atan(),
            q,
            -2.0 * x * q * q,
            (6.0 * x * x - 2.0) * q * q * q,
        )
    }

    pub fn powi(self, n: i32) -> Self {
        let x = self.v;
        let nf = n as f64;
        self.compose(
            x.powi(n),
            nf * x.powi(n - 1),
            nf * (nf - 1.0) * x.powi(n - 2),
            nf * (nf - 1.0) * (nf - 2.0) * x.powi(n - 3),
        )
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        Jet::new(self.v + o.v, self.d1 + o.d1, self.d2 + o.d2, self.d3 + o.d3)
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        Jet::new(self.v - o.v, self.d1 - o.d1, self.d2 - o.d2, self.d3 - o.d3)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet::new(-self.v, -self.d1, -self.d2, -self.d3)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        Jet::new(
            self.v * o.v,
            self.d1 * o.v + self.v * o.d1,
            self.d2 * o.v + 2.0 * self.d1 * o.d1 + self.v * o.d2,
            self.d3 * o.v + 3.0 * self.d2 * o.d1 + 3.0 * self.d1 * o.d2 + self.v * o.d3,
        )
    }
}

impl Div for Jet {
    type Output = Jet;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Jet) -> Jet {
        self * o.recip()
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(self, c: f64) -> Jet {
        Jet::new(self.v + c, self.d1, self.d2, self.d3)
    }
}

impl Sub<f64> for Jet {
    type Output = Jet;
    fn sub(self, c: f64) -> Jet {
        Jet::new(self.v - c, self.d1, self.d2, self.d3)
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, c: f64) -> Jet {
        Jet::new(self.v * c, self.d1 * c, self.d2 * c, self.d3 * c)
    }
}

impl Div<f64> for Jet {
    type Output = Jet;
    fn div(self, c: f64) -> Jet {
        self * (1.0 / c)
    }
}

impl Mul<Jet> for f64 {
    type Output = Jet;
    fn mul(self, j: Jet) -> Jet {
        j * self
    }
}

impl Add<Jet> for f64 {
    type Output = Jet;
    fn add(self, j: Jet) -> Jet {
        j + self
    }
}

impl Sub<Jet> for f64 {
    type Output = Jet;
    fn sub(self, j: Jet) -> Jet {
        -j + self
    }
}

/// A real function of one variable that knows how to produce its [`Jet`].
///
/// Cloning is cheap; the closure is shared.
#[derive(Clone)]
pub struct SmoothFn {
    f: Arc<dyn Fn(f64) -> Jet + Send + Sync>,
}

impl fmt::Debug for SmoothFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("SmoothFn")
    }
}

impl SmoothFn {
    pub fn new<F>(f: F) -> Self
    where
        F: Fn(f64) -> Jet + Send + Sync + 'static,
    {
        SmoothFn { f: Arc::new(f) }
    }

    /// Wraps a value-only function; all derivatives come from finite differences.
    pub fn from_values<F>(f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        SmoothFn::new(move |x| Jet::new(f(x), f64::NAN, f64::NAN, f64::NAN))
    }

    pub fn constant(c: f64) -> Self {
        SmoothFn::new(move |_| Jet::constant(c))
    }

    /// The jet as produced by the underlying closure, unknown orders left as `NaN`.
    pub fn raw(&self, x: f64) -> Jet {
        (self.f)(x)
    }

    /// Full jet with every unknown order filled numerically.
    pub fn jet(&self, x: f64) -> Jet {
        let mut j = self.raw(x);
        if j.d1.is_nan() {
            j.d1 = diff::first(|s| self.raw(s).v, x, diff::H_FIRST);
        }
        if j.d2.is_nan() {
            j.d2 = if self.raw(x).d1.is_nan() {
                diff::second(|s| self.raw(s).v, x, diff::H_SECOND)
            } else {
                diff::first(|s| self.raw(s).d1, x, diff::H_FIRST)
            };
        }
        if j.d3.is_nan() {
            j.d3 = diff::first(|s| self.d2(s), x, diff::H_SECOND);
        }
        j
    }

    pub fn value(&self, x: f64) -> f64 {
        self.raw(x).v
    }

    pub fn d1(&self, x: f64) -> f64 {
        let j = self.raw(x);
        if j.d1.is_nan() {
            diff::first(|s| self.raw(s).v, x, diff::H_FIRST)
        } else {
            j.d1
        }
    }

    pub fn d2(&self, x: f64) -> f64 {
        let j = self.raw(x);
        if !j.d2.is_nan() {
            j.d2
        } else if !j.d1.is_nan() {
            diff::first(|s| self.raw(s).d1, x, diff::H_FIRST)
        } else {
            diff::second(|s| self.raw(s).v, x, diff::H_SECOND)
        }
    }

    /// Derivative as a new function.
    pub fn derivative(&self) -> SmoothFn {
        let this = self.clone();
        SmoothFn::new(move |x| {
            let j = this.raw(x);
            if j.d1.is_nan() {
                Jet::new(this.d1(x), f64::NAN, f64::NAN, f64::NAN)
            } else {
                j.derivative()
            }
        })
    }

    /// Pointwise combination of two functions at the jet level.
    pub fn zip_with<F>(&self, other: &SmoothFn, op: F) -> SmoothFn
    where
        F: Fn(Jet, Jet) -> Jet + Send + Sync + 'static,
    {
        let (a, b) = (self.clone(), other.clone());
        SmoothFn::new(move |x| op(a.raw(x), b.raw(x)))
    }

    pub fn map<F>(&self, op: F) -> SmoothFn
    where
        F: Fn(Jet) -> Jet + Send + Sync + 'static,
    {
        let a = self.clone();
        SmoothFn::new(move |x| op(a.raw(x)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + b.abs())
    }

    #[test]
    fn product_and_quotient_rules() {
        let x = Jet::var(0.7);
        let j = x.sin() * x.exp() / (x * x + 1.0);
        let f = |s: f64| s.sin() * s.exp() / (s * s + 1.0);
        assert!(close(j.v, f(0.7), 1e-15));
        assert!(close(j.d1, diff::first(f, 0.7, 1e-3), 1e-9));
        assert!(close(j.d2, diff::second(f, 0.7, 1e-3), 1e-8));
        let d2 = |s: f64| {
            let y = Jet::var(s);
            (y.sin() * y.exp() / (y * y + 1.0)).d2
        };
        assert!(close(j.d3, diff::first(d2, 0.7, 1e-3), 1e-8));
    }

    #[test]
    fn elementary_functions_match_finite_differences() {
        type Case = (fn(Jet) -> Jet, fn(f64) -> f64);
        let cases: [Case; 7] = [
            (|j| j.tanh(), f64::tanh),
            (|j| j.sech(), |s| 1.0 / s.cosh()),
            (|j| j.atan(), f64::atan),
            (|j| j.sqrt(), f64::sqrt),
            (|j| j.ln(), f64::ln),
            (|j| j.powi(3), |s| s * s * s),
            (|j| j.cosh(), f64::cosh),
        ];
        for (jf, f) in cases {
            for &x in &[0.3, 1.1, 2.5] {
                let j = jf(Jet::var(x));
                assert!(close(j.d1, diff::first(f, x, 1e-3), 1e-9));
                assert!(close(j.d2, diff::second(f, x, 1e-3), 1e-7));
                let d2 = |s: f64| jf(Jet::var(s)).d2;
                assert!(close(j.d3, diff::first(d2, x, 1e-3), 1e-7), "x={x}");
            }
        }
    }

    #[test]
    fn smooth_fn_fills_missing_orders() {
        let f = SmoothFn::from_values(|x: f64| x.cos());
        let j = f.jet(0.4);
        assert!((j.d1 + 0.4f64.sin()).abs() < 1e-10);
        assert!((j.d2 + 0.4f64.cos()).abs() < 1e-8);
        assert!((j.d3 - 0.4f64.sin()).abs() < 1e-6);

        let g = SmoothFn::new(|x| Jet::var(x).sinh()).derivative();
        assert_eq!(g.raw(0.3).v, 0.3f64.cosh());
        assert!(g.raw(0.3).d3.is_nan());
        assert!((g.jet(0.3).d3 - 0.3f64.sinh()).abs() < 1e-7);
    }
}
