//! Ermakov–Pinney reduction of the stationary INLSE to the constant-coefficient
//! NLSE.
//!
//! For two independent solutions `φ₁, φ₂` at energy `λ` with Wronskian `Λ`,
//!
//! ```text
//! b = ρ² = α φ₁² + 2β φ₁φ₂ + γ φ₂²      ρ'' + (λ − V) ρ = E / ρ³
//! E = Γ Λ²,  Γ = αγ − β²               g = g₀ / b³
//! X = f(x),  f' = 1/b                  U = b^{-1/2} φ
//! ```
//!
//! The canonical coordinate has the closed form
//! `f = atan[(γφ₂ + βφ₁) / (√Γ φ₁)] / (Λ√Γ)` on each interval between nodes of
//! `φ₁`; consecutive branches are joined by adding `π/(|Λ|√Γ)` at every node.
//! The branch containing `x = 0⁺` carries no offset.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::jet::{Jet, SmoothFn};
use crate::numerics::grid::UniformGrid;
use crate::numerics::quad;
use crate::schrodinger::{Potential, SolutionPair};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PinneyCoefficients {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    /// Nonlinearity scale `g₀` in `g(x) = g₀/b³`.
    pub g0: f64,
}

impl PinneyCoefficients {
    /// Requires `γ > 0` and `Γ = αγ − β² > 0`, i.e. a positive-definite form.
    pub fn new(alpha: f64, beta: f64, gamma: f64, g0: f64) -> Result<Self> {
        let det = alpha * gamma - beta * beta;
        if !(gamma > 0.0) || !(det > 0.0) || !det.is_finite() || !g0.is_finite() {
            return Err(Error::IndefiniteForm { gamma_det: det, gamma });
        }
        Ok(PinneyCoefficients { alpha, beta, gamma, g0 })
    }

    /// `Γ = αγ − β²`.
    pub fn big_gamma(&self) -> f64 {
        self.alpha * self.gamma - self.beta * self.beta
    }

    /// `Θ = √(α/γ − β²/γ²)`.
    pub fn theta(&self) -> f64 {
        (self.alpha / self.gamma - (self.beta / self.gamma).powi(2)).sqrt()
    }

    /// The quadratic form at jet level.
    pub fn form(&self, p1: Jet, p2: Jet) -> Jet {
        p1 * p1 * self.alpha + p1 * p2 * (2.0 * self.beta) + p2 * p2 * self.gamma
    }
}

#[derive(Clone, Debug)]
pub struct PinneyReduction {
    pub pair: SolutionPair,
    pub coeffs: PinneyCoefficients,
    /// `ρ = √b`
    pub rho: SmoothFn,
    /// `b = ρ²`, the Lie-symmetry generator coefficient.
    pub b: SmoothFn,
    /// `g = g₀ / b³`
    pub g: SmoothFn,
    /// Reduced energy `E = ΓΛ²`.
    pub energy: f64,
}

/// Builds `ρ, b, g, E`. The potential is the one the pair solves.
pub fn build_reduction(pair: &SolutionPair, coeffs: PinneyCoefficients) -> Result<PinneyReduction> {
    let coeffs = PinneyCoefficients::new(coeffs.alpha, coeffs.beta, coeffs.gamma, coeffs.g0)?;
    if pair.wronskian == 0.0 || !pair.wronskian.is_finite() {
        return Err(Error::DegeneratePair(format!("Wronskian is {}", pair.wronskian)));
    }
    let b = pair.phi1.zip_with(&pair.phi2, move |p1, p2| coeffs.form(p1, p2));
    let rho = b.map(Jet::sqrt);
    let g0 = coeffs.g0;
    let g = b.map(move |b| b.powi(3).recip() * g0);
    let energy = coeffs.big_gamma() * pair.wronskian * pair.wronskian;
    Ok(PinneyReduction { pair: pair.clone(), coeffs, rho, b, g, energy })
}

impl PinneyReduction {
    pub fn potential(&self) -> Potential {
        self.pair.potential
    }

    pub fn lambda(&self) -> f64 {
        self.pair.lambda
    }

    /// `E` recomputed from `b`: `(λ − V)b² − b'²/4 + b b''/2`.
    pub fn energy_from_b(&self, x: f64) -> f64 {
        let b = self.b.jet(x);
        (self.lambda() - self.potential().eval(x)) * b.v * b.v - 0.25 * b.d1 * b.d1
            + 0.5 * b.v * b.d2
    }

    /// Amplitude factor `n = b^{-1/2}`.
    pub fn amplitude(&self, x: f64) -> f64 {
        1.0 / self.b.value(x).sqrt()
    }

    /// Whether `1/b` is integrable at both ends, i.e. `f` has a bounded image.
    /// Solutions are non-oscillatory at infinity exactly when `λ ≤ V(±∞)`.
    pub fn has_bounded_image(&self) -> bool {
        self.lambda() <= self.potential().asymptotic_value()
    }
}

/// `max |ρ'' + (λ − V)ρ − E/ρ³|` over the grid with analytic derivatives.
pub fn pinney_residual(red: &PinneyReduction, grid: &UniformGrid) -> f64 {
    grid.points()
        .into_iter()
        .map(|x| {
            let r = red.rho.jet(x);
            let v = red.potential().eval(x);
            (r.d2 + (red.lambda() - v) * r.v - red.energy / r.v.powi(3)).abs()
        })
        .fold(0.0, f64::max)
}

/// Scan step for locating nodes of `φ₁`.
const NODE_SCAN_STEP: f64 = 0.01;

/// The canonical transformation `X = f(x)`, `U = n(x) φ`.
#[derive(Clone, Debug)]
pub struct CanonicalMap {
    red: PinneyReduction,
    /// `1/(Λ√Γ)`, signed.
    scale: f64,
    /// Offset added per node, `π/(|Λ|√Γ)`.
    period: f64,
    /// Right edges of the nodes of `φ₁` inside `[scan_lo, scan_hi]`.
    nodes: Vec<f64>,
    scan_lo: f64,
    scan_hi: f64,
    /// `ξ₁ = π/(2|Λ|√Γ)`, `None` when `f` is unbounded.
    pub xi1: Option<f64>,
    /// `(f(−∞), f(+∞))` when bounded.
    image: Option<(f64, f64)>,
    /// Sign of `Λ`.
    pub orientation: f64,
}

/// Smallest float at which `f` has the sign it has at `hi`, given a sign change on `[lo, hi]`.
fn node_right_edge<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64) -> f64 {
    let flo = f(lo);
    if f(hi) == 0.0 {
        // Pull hi back to the first exact zero, if several floats vanish.
        while hi > lo {
            let mid = 0.5 * (lo + hi);
            if mid == lo || mid == hi {
                break;
            }
            if f(mid) == 0.0 || (f(mid) < 0.0) != (flo < 0.0) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        return hi;
    }
    loop {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            return hi;
        }
        let fm = f(mid);
        if fm != 0.0 && (fm < 0.0) == (flo < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

fn scan_nodes<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Vec<f64> {
    let mut out = Vec::new();
    if a >= b {
        return out;
    }
    let n = ((b - a) / NODE_SCAN_STEP).ceil().max(1.0) as usize;
    let h = (b - a) / n as f64;
    let mut x0 = a;
    let mut f0 = f(a);
    if f0 == 0.0 {
        out.push(a);
    }
    for i in 1..=n {
        let x1 = if i == n { b } else { a + i as f64 * h };
        let f1 = f(x1);
        if f0 != 0.0 && (f1 == 0.0 || (f1 < 0.0) != (f0 < 0.0)) {
            out.push(node_right_edge(f, x0, x1));
        }
        x0 = x1;
        f0 = f1;
    }
    out
}

impl CanonicalMap {
    fn closed_branch(&self, x: f64) -> f64 {
        let c = &self.red.coeffs;
        let p1 = self.red.pair.phi1.value(x);
        let p2 = self.red.pair.phi2.value(x);
        if p1 == 0.0 {
            // Right-hand limit at a node.
            return -0.5 * self.period;
        }
        let t = (c.gamma * p2 + c.beta * p1) / (c.big_gamma().sqrt() * p1);
        self.scale * t.atan()
    }

    fn nodes_in(&self, a: f64, b: f64) -> Vec<f64> {
        let phi1 = |s: f64| self.red.pair.phi1.value(s);
        let mut out: Vec<f64> = Vec::new();
        if a < self.scan_lo {
            out.extend(scan_nodes(&phi1, a, self.scan_lo.min(b)));
        }
        out.extend(self.nodes.iter().copied().filter(|&z| z >= a && z <= b));
        if b > self.scan_hi {
            out.extend(
                scan_nodes(&phi1, self.scan_hi.max(a), b)
                    .into_iter()
                    .filter(|&z| z > self.scan_hi),
            );
        }
        out
    }

    /// Net number of node offsets between the reference branch and `x`.
    fn branch_index(&self, x: f64) -> f64 {
        if x > 0.0 {
            self.nodes_in(0.0, x).into_iter().filter(|&z| z > 0.0 && z <= x).count() as f64
        } else {
            -(self.nodes_in(x, 0.0).into_iter().filter(|&z| z > x && z <= 0.0).count() as f64)
        }
    }

    /// `X = f(x)`, continuous and strictly increasing.
    pub fn f(&self, x: f64) -> f64 {
        self.closed_branch(x) + self.period * self.branch_index(x)
    }

    /// `f'(x)` differentiated from the closed form, using `atan t = ±π/2 − atan(1/t)`
    /// where `|t| > 1` so that nodes of `φ₁` are regular points.
    pub fn f_prime(&self, x: f64) -> f64 {
        let c = &self.red.coeffs;
        let p1 = self.red.pair.phi1.jet(x);
        let p2 = self.red.pair.phi2.jet(x);
        let num = p2 * c.gamma + p1 * c.beta;
        let den = p1 * c.big_gamma().sqrt();
        let d = if num.v.abs() <= den.v.abs() {
            (num / den).atan().d1
        } else {
            -(den / num).atan().d1
        };
        self.scale * d
    }

    /// `f(0) + ∫₀ˣ ds / b(s)` by adaptive quadrature; independent of the
    /// closed form away from `x = 0`.
    pub fn f_quadrature(&self, x: f64) -> f64 {
        let b = &self.red.b;
        self.f(0.0) + quad::integrate(|s| 1.0 / b.value(s), 0.0, x, 1e-14, 1e-13)
    }

    /// `f(±∞)` as `f(x₀) ± ∫ ds/b` over the tail, mapped to `[0, 1)` by `s = x₀ ± t/(1 − t)`.
    fn limit(&self, x0: f64, dir: f64) -> f64 {
        let b = &self.red.b;
        let tail = quad::integrate(
            |t| {
                let w = 1.0 / (1.0 - t);
                let v = w * w / b.value(x0 + dir * t * w);
                if v.is_finite() { v } else { 0.0 }
            },
            0.0,
            1.0,
            1e-15,
            1e-13,
        );
        self.f(x0) + dir * tail
    }

    /// `(f(−∞), f(+∞))` when `f` is bounded.
    ///
    /// This equals `(−ξ₁, ξ₁)` only when `φ₁` is subdominant at both ends
    /// (Case 1); with nodes or finite limits of `φ₂/φ₁` it is wider or narrower.
    pub fn image(&self) -> Option<(f64, f64)> {
        self.image
    }

    /// `n(x) = b(x)^{-1/2}`.
    pub fn n(&self, x: f64) -> f64 {
        self.red.amplitude(x)
    }

    pub fn reduction(&self) -> &PinneyReduction {
        &self.red
    }

    /// Nodes of `φ₁` located in the scan window.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }
}

/// Builds `f` with node offsets located on `window` (extended on demand).
pub fn canonical_map(red: &PinneyReduction, window: &UniformGrid) -> Result<CanonicalMap> {
    let lambda_w = red.pair.wronskian;
    let root = red.coeffs.big_gamma().sqrt();
    let denom = lambda_w * root;
    if denom == 0.0 || !denom.is_finite() {
        return Err(Error::DegeneratePair(format!("Λ√Γ = {denom}")));
    }
    let scan_lo = window.xmin().min(0.0);
    let scan_hi = window.xmax().max(0.0);
    let phi1 = |s: f64| red.pair.phi1.value(s);
    let nodes = scan_nodes(&phi1, scan_lo, scan_hi);
    let period = PI / denom.abs();
    let mut map = CanonicalMap {
        red: red.clone(),
        scale: 1.0 / denom,
        period,
        nodes,
        scan_lo,
        scan_hi,
        xi1: red.has_bounded_image().then_some(0.5 * period),
        image: None,
        orientation: lambda_w.signum(),
    };
    if map.xi1.is_some() {
        map.image = Some((map.limit(scan_lo, -1.0), map.limit(scan_hi, 1.0)));
    }
    Ok(map)
}
