//! Stationary solutions of the reduced equation `−U'' + g₀U³ = E U`.
//!
//! Two families: the elliptic soliton `U = η sn(μX, k)/dn(μX, k)` with
//!
//! ```text
//! μ² = E / (1 − 2k²)        η² = 2k²(k² − 1) μ² / g₀
//! ```
//!
//! and the kink `U = √(E/g₀) tanh(√(E/2) X)`.
//!
//! `η²` carries `g₀` with its sign. For `E > 0` and `k² < 1/2` that makes the
//! elliptic family real only for `g₀ < 0`.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::numerics::diff;
use crate::numerics::roots::bisect;
use crate::specialfn::{complete_elliptic_k, sn_cn_dn, EllipticModulus};

/// Distance kept from the ends of `(0, 1/√2)` when bracketing the modulus.
const MODULUS_MARGIN: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SdSoliton {
    pub energy: f64,
    pub g0: f64,
    pub k: EllipticModulus,
    pub mu: f64,
    pub eta: f64,
    /// Requested mode `n` in `μξ₁ = 2nK`; 0 when built directly.
    pub mode_n: u32,
    /// Zero spacings `2K/μ` across the whole domain; 0 when built directly.
    pub half_periods: u32,
    /// Shift `u₀` in `U = η w(μX + u₀)`; `K` when `half_periods` is odd, else 0.
    pub phase: f64,
}

/// `w = sn/dn` and its first three derivatives with respect to `u`.
fn sn_over_dn(u: f64, k: EllipticModulus) -> [f64; 4] {
    let t = sn_cn_dn(u, k);
    let k2 = k.k() * k.k();
    let w = t.sn / t.dn;
    let w1 = t.cn / (t.dn * t.dn);
    let a = 2.0 * k2 - 1.0;
    let c = 2.0 * k2 * (k2 - 1.0);
    let w2 = a * w + c * w * w * w;
    let w3 = (a + 3.0 * c * w * w) * w1;
    [w, w1, w2, w3]
}

impl SdSoliton {
    pub fn value(&self, x: f64) -> f64 {
        self.eta * sn_over_dn(self.mu * x + self.phase, self.k)[0]
    }

    /// `U'(X) = ημ cn/dn²`.
    pub fn derivative(&self, x: f64) -> f64 {
        self.eta * self.mu * sn_over_dn(self.mu * x + self.phase, self.k)[1]
    }

    /// `U` composed with an inner jet.
    pub fn jet(&self, x: Jet) -> Jet {
        let [w, w1, w2, w3] = sn_over_dn(self.mu * x.v + self.phase, self.k);
        let (e, m) = (self.eta, self.mu);
        x.compose(e * w, e * m * w1, e * m * m * w2, e * m * m * m * w3)
    }

    /// Zeros `μX + u₀ = 2jK` in `[a, b]`.
    pub fn zeros_in(&self, a: f64, b: f64) -> Vec<f64> {
        let spacing = 2.0 * complete_elliptic_k(self.k).expect("k² < 1/2") / self.mu;
        let x0 = -self.phase / self.mu;
        let first = ((a - x0) / spacing - 1e-9).ceil() as i64;
        let last = ((b - x0) / spacing + 1e-9).floor() as i64;
        (first..=last).map(|j| x0 + j as f64 * spacing).collect()
    }
}

/// Elliptic soliton for a given modulus.
pub fn make_sd_soliton(energy: f64, k: EllipticModulus, g0: f64) -> Result<SdSoliton> {
    if !(energy > 0.0) {
        return Err(Error::Domain(format!("reduced energy must be positive, got E = {energy}")));
    }
    let k2 = k.k() * k.k();
    let mu2 = energy / (1.0 - 2.0 * k2);
    if !(1.0 - 2.0 * k2 > 0.0) || !mu2.is_finite() {
        return Err(Error::Unrealizable(format!(
            "μ² negative: modulus outside realizable regime (k = {}, k² = {k2} ≥ 1/2)",
            k.k()
        )));
    }
    let eta2 = 2.0 * k2 * (k2 - 1.0) * mu2 / g0;
    if k2 > 0.0 && !(eta2 > 0.0) {
        return Err(Error::Unrealizable(format!(
            "amplitude not real: require g₀<0 in this regime (g₀ = {g0} is {}, η² = {eta2})",
            if g0 > 0.0 { "positive" } else { "zero" }
        )));
    }
    Ok(SdSoliton {
        energy,
        g0,
        k,
        mu: mu2.sqrt(),
        eta: eta2.max(0.0).sqrt(),
        mode_n: 0,
        half_periods: 0,
        phase: 0.0,
    })
}

/// Modulus with `μ(k) ξ₁ = 2n K(k)`, so that `U(±ξ₁) = 0`.
pub fn solve_modulus(energy: f64, xi1: f64, mode_n: u32, g0: f64) -> Result<EllipticModulus> {
    if mode_n == 0 {
        return Err(Error::Domain("mode n must be ≥ 1".into()));
    }
    solve_modulus_spacing(energy, xi1, 2 * mode_n, g0)
}

/// Modulus with `μ(k) ξ = m K(k)`: `m` zero spacings `2K/μ` across `[−ξ, ξ]`.
pub fn solve_modulus_spacing(energy: f64, xi1: f64, half_periods: u32, g0: f64) -> Result<EllipticModulus> {
    let m = half_periods;
    if !(energy > 0.0) || !(xi1 > 0.0) || !xi1.is_finite() || m == 0 {
        return Err(Error::Domain(format!(
            "need E > 0, finite ξ₁ > 0 and a positive spacing count (E = {energy}, ξ₁ = {xi1}, m = {m})"
        )));
    }
    if !(g0 < 0.0) {
        return Err(Error::Unrealizable(format!(
            "amplitude not real: require g₀<0 in this regime (g₀ = {g0} is {})",
            if g0 > 0.0 { "positive" } else { "zero" }
        )));
    }
    let h = |k: f64| {
        let mu = (energy / (1.0 - 2.0 * k * k)).sqrt();
        mu * xi1 - m as f64 * complete_elliptic_k(EllipticModulus::new(k).expect("bracket inside (0, 1/√2)")).expect("k < 1")
    };
    let (k_lo, k_hi) = (MODULUS_MARGIN, FRAC_1_SQRT_2 - MODULUS_MARGIN);
    let (h_lo, h_hi) = (h(k_lo), h(k_hi));
    if h_lo == 0.0 {
        return EllipticModulus::new(k_lo);
    }
    if !(h_lo < 0.0 && h_hi > 0.0) {
        return Err(Error::NoRoot { k_lo, h_lo, k_hi, h_hi });
    }

    let coarse = bisect(h, k_lo, k_hi, 1e-6);
    let (mut a, mut b) = (coarse - 5e-7, coarse + 5e-7);
    let (mut fa, mut fb) = (h(a), h(b));
    for _ in 0..50 {
        if fb == fa {
            break;
        }
        let c = b - fb * (b - a) / (fb - fa);
        if !(c > k_lo && c < k_hi) {
            break;
        }
        a = b;
        fa = fb;
        b = c;
        fb = h(c);
        if fb.abs() < 1e-13 || (b - a).abs() < 1e-15 {
            break;
        }
    }
    let k = if fb.abs() <= h(coarse).abs() { b } else { coarse };
    EllipticModulus::new(k)
}

/// Elliptic soliton pinned to zeros at `X = ±ξ₁`.
pub fn quantized_sd_soliton(energy: f64, xi1: f64, mode_n: u32, g0: f64) -> Result<SdSoliton> {
    let k = solve_modulus(energy, xi1, mode_n, g0)?;
    let mut s = make_sd_soliton(energy, k, g0)?;
    s.mode_n = mode_n;
    s.half_periods = 2 * mode_n;
    Ok(s)
}

/// Elliptic soliton with `m` zero spacings across `[−ξ, ξ]` and zeros at both
/// ends. Odd `m` shifts the argument by a quarter period `K`.
pub fn fitted_sd_soliton(energy: f64, half_width: f64, half_periods: u32, g0: f64) -> Result<SdSoliton> {
    let k = solve_modulus_spacing(energy, half_width, half_periods, g0)?;
    let mut s = make_sd_soliton(energy, k, g0)?;
    s.half_periods = half_periods;
    if half_periods % 2 == 1 {
        s.phase = complete_elliptic_k(k)?;
    }
    Ok(s)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DarkKink {
    pub energy: f64,
    pub g0: f64,
    /// `√(E/g₀)`
    pub amplitude: f64,
    /// `√(E/2)`
    pub width: f64,
}

impl DarkKink {
    pub fn value(&self, x: f64) -> f64 {
        self.amplitude * (self.width * x).tanh()
    }

    pub fn derivative(&self, x: f64) -> f64 {
        let s = 1.0 / (self.width * x).cosh();
        self.amplitude * self.width * s * s
    }

    pub fn jet(&self, x: Jet) -> Jet {
        (x * self.width).tanh() * self.amplitude
    }
}

pub fn make_dark_kink(energy: f64, g0: f64) -> Result<DarkKink> {
    if !(energy > 0.0) {
        return Err(Error::Domain(format!("reduced energy must be positive, got E = {energy}")));
    }
    if !(g0 > 0.0) {
        return Err(Error::Unrealizable(format!(
            "kink amplitude not real: require g₀>0 (g₀ = {g0} is {})",
            if g0 < 0.0 { "negative" } else { "zero" }
        )));
    }
    Ok(DarkKink {
        energy,
        g0,
        amplitude: (energy / g0).sqrt(),
        width: (0.5 * energy).sqrt(),
    })
}

/// Either stationary family.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ReducedSolution {
    Sd(SdSoliton),
    Kink(DarkKink),
}

impl ReducedSolution {
    pub fn value(&self, x: f64) -> f64 {
        match self {
            ReducedSolution::Sd(s) => s.value(x),
            ReducedSolution::Kink(k) => k.value(x),
        }
    }

    pub fn jet(&self, x: Jet) -> Jet {
        match self {
            ReducedSolution::Sd(s) => s.jet(x),
            ReducedSolution::Kink(k) => k.jet(x),
        }
    }

    pub fn energy(&self) -> f64 {
        match self {
            ReducedSolution::Sd(s) => s.energy,
            ReducedSolution::Kink(k) => k.energy,
        }
    }

    pub fn g0(&self) -> f64 {
        match self {
            ReducedSolution::Sd(s) => s.g0,
            ReducedSolution::Kink(k) => k.g0,
        }
    }
}

/// `max |−U'' + g₀U³ − EU|` over `xs`, with `U''` from Richardson finite differences.
pub fn nlse_residual<F: Fn(f64) -> f64>(u: F, energy: f64, g0: f64, xs: &[f64]) -> f64 {
    xs.iter()
        .map(|&x| {
            let v = u(x);
            let d2 = diff::second(&u, x, diff::H_SECOND);
            (-d2 + g0 * v * v * v - energy * v).abs()
        })
        .fold(0.0, f64::max)
}
