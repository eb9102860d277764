//! First-order Darboux (SUSY) transformation.
//!
//! A nodeless seed `u₀` solving `−u₀'' + V₀u₀ = εu₀` gives the superpotential
//! `α₁ = u₀'/u₀`, the partner `V₁ = V₀ − 2α₁'` and the intertwiners
//! `A₁∓ = ±d/dx + α₁` with `H₁A₁⁺ = A₁⁺H₀`.

use crate::error::{Error, Result};
use crate::jet::SmoothFn;
use crate::numerics::diff;
use crate::numerics::grid::UniformGrid;
use crate::schrodinger::Potential;

/// Factorization solution `u₀` at energy `ε`, with the domain it must be nodeless on.
#[derive(Clone, Debug)]
pub struct SeedSolution {
    pub u0: SmoothFn,
    pub epsilon: f64,
    pub domain: UniformGrid,
}

impl SeedSolution {
    pub fn new(u0: SmoothFn, epsilon: f64, domain: UniformGrid) -> Self {
        SeedSolution { u0, epsilon, domain }
    }

    /// Sign scan over the domain plus a one-step look-ahead past each end.
    pub fn find_node(&self) -> Option<f64> {
        let xs = self.domain.points();
        let h = self.domain.step();
        let mut prev: Option<(f64, f64)> = None;
        for &x in &xs {
            let u = self.u0.value(x);
            if u == 0.0 || !u.is_finite() {
                return Some(x);
            }
            if let Some((xp, up)) = prev {
                if (up < 0.0) != (u < 0.0) {
                    return Some(crate::numerics::roots::bisect(|s| self.u0.value(s), xp, x, 0.0));
                }
            }
            prev = Some((x, u));
        }
        for (x, dir) in [(self.domain.xmin(), -1.0), (self.domain.xmax(), 1.0)] {
            let u = self.u0.value(x);
            let ahead = u + dir * h * self.u0.d1(x);
            if (ahead < 0.0) != (u < 0.0) {
                return Some(x + dir * h);
            }
        }
        None
    }

    /// `max |−u₀'' + (V₀ − ε)u₀|` on the domain.
    pub fn residual(&self, v0: &Potential) -> f64 {
        self.domain
            .points()
            .into_iter()
            .map(|x| {
                let j = self.u0.jet(x);
                (-j.d2 + (v0.eval(x) - self.epsilon) * j.v).abs()
            })
            .fold(0.0, f64::max)
    }

    fn require_nodeless(&self) -> Result<()> {
        match self.find_node() {
            Some(location) => Err(Error::Singular { location }),
            None => Ok(()),
        }
    }
}

/// `α₁ = u₀'/u₀`.
pub fn superpotential(seed: &SeedSolution) -> Result<SmoothFn> {
    seed.require_nodeless()?;
    Ok(seed.u0.map(|u| u.derivative() / u))
}

/// The partner pair `(V₀, V₁)` with its superpotential.
#[derive(Clone, Debug)]
pub struct DarbouxPair {
    pub v0: Potential,
    pub v1: SmoothFn,
    pub alpha1: SmoothFn,
    pub epsilon: f64,
}

impl DarbouxPair {
    /// `max |α₁² + α₁' − V₀ + ε|` over the grid.
    pub fn riccati_residual(&self, grid: &UniformGrid) -> f64 {
        grid.points()
            .into_iter()
            .map(|x| {
                let a = self.alpha1.jet(x);
                (a.v * a.v + a.d1 - self.v0.eval(x) + self.epsilon).abs()
            })
            .fold(0.0, f64::max)
    }

    pub fn h0(&self, psi: &SmoothFn) -> SmoothFn {
        psi.zip_with(&self.v0.to_fn(), |p, v| -p.derivative().derivative() + v * p)
    }

    pub fn h1(&self, psi: &SmoothFn) -> SmoothFn {
        psi.zip_with(&self.v1, |p, v| -p.derivative().derivative() + v * p)
    }
}

/// `V₁ = V₀ − 2 (ln u₀)''`.
pub fn darboux_partner(v0: Potential, seed: &SeedSolution) -> Result<DarbouxPair> {
    let alpha1 = superpotential(seed)?;
    let v1 = v0.to_fn().zip_with(&alpha1, |v, a| v - a.derivative() * 2.0);
    Ok(DarbouxPair { v0, v1, alpha1, epsilon: seed.epsilon })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `A₁⁺ψ = −ψ' + α₁ψ`, maps `H₀` solutions to `H₁` solutions.
    Raise,
    /// `A₁⁻ψ = ψ' + α₁ψ`.
    Lower,
}

pub fn apply_intertwiner(direction: Direction, alpha1: &SmoothFn, psi: &SmoothFn) -> SmoothFn {
    match direction {
        Direction::Raise => psi.zip_with(alpha1, |p, a| a * p - p.derivative()),
        Direction::Lower => psi.zip_with(alpha1, |p, a| a * p + p.derivative()),
    }
}

/// `ψ_ε ∝ 1/u₀`, annihilated by `A₁⁻`.
#[derive(Clone, Debug)]
pub struct MissingState {
    pub psi: SmoothFn,
    pub epsilon: f64,
    pub normalizable: bool,
}

/// Logarithmic decay rate outward from the domain centre, times the distance.
/// Tails `|ψ|² ~ |x|^{-2p}` are integrable for `p > 1/2`; exponential decay
/// grows without bound in this measure.
fn decays_square_integrably(psi: &SmoothFn, domain: &UniformGrid) -> bool {
    let mid = 0.5 * (domain.xmin() + domain.xmax());
    [(domain.xmin(), -1.0), (domain.xmax(), 1.0)].iter().all(|&(x, dir)| {
        let j = psi.jet(x);
        if j.v == 0.0 {
            return true;
        }
        let rate = -dir * j.d1 / j.v;
        rate > 0.0 && rate * (x - mid).abs() > 0.5
    })
}

pub fn missing_state(seed: &SeedSolution) -> Result<MissingState> {
    seed.require_nodeless()?;
    let psi = seed.u0.map(|u| u.recip());
    let normalizable = decays_square_integrably(&psi, &seed.domain);
    Ok(MissingState { psi, epsilon: seed.epsilon, normalizable })
}

/// `max |H₁(A₁⁺ψ) − A₁⁺(H₀ψ)|` over the grid.
///
/// Both compositions are differentiated by Richardson-extrapolated central
/// differences, so the check does not trust any jet algebra beyond `ψ'`, `ψ''`.
pub fn intertwining_residual(pair: &DarbouxPair, psi: &SmoothFn, grid: &UniformGrid) -> f64 {
    let raised = |x: f64| -psi.d1(x) + pair.alpha1.value(x) * psi.value(x);
    let h0psi = |x: f64| -psi.d2(x) + pair.v0.eval(x) * psi.value(x);
    grid.points()
        .into_iter()
        .map(|x| {
            let lhs = -diff::second(raised, x, diff::H_SECOND) + pair.v1.value(x) * raised(x);
            let rhs = -diff::first(h0psi, x, diff::H_FIRST) + pair.alpha1.value(x) * h0psi(x);
            (lhs - rhs).abs()
        })
        .fold(0.0, f64::max)
}

/// `max |H₁(A₁⁺ψ) − λ A₁⁺ψ|`: the raised function solves the partner equation.
pub fn raised_residual(pair: &DarbouxPair, psi: &SmoothFn, lambda: f64, grid: &UniformGrid) -> f64 {
    let raised = |x: f64| -psi.d1(x) + pair.alpha1.value(x) * psi.value(x);
    grid.points()
        .into_iter()
        .map(|x| {
            let g = raised(x);
            (-diff::second(raised, x, diff::H_SECOND) + (pair.v1.value(x) - lambda) * g).abs()
        })
        .fold(0.0, f64::max)
}

/// Residuals of `H₀ = A₁⁻A₁⁺ + ε` and `H₁ = A₁⁺A₁⁻ + ε` applied to `f`.
pub fn factorization_residuals(pair: &DarbouxPair, f: &SmoothFn, grid: &UniformGrid) -> (f64, f64) {
    let a = &pair.alpha1;
    let up = |x: f64| -f.d1(x) + a.value(x) * f.value(x);
    let down = |x: f64| f.d1(x) + a.value(x) * f.value(x);
    let mut r0 = 0.0f64;
    let mut r1 = 0.0f64;
    for x in grid.points() {
        let fx = f.value(x);
        let f2 = f.d2(x);
        let h0 = -f2 + pair.v0.eval(x) * fx;
        let h1 = -f2 + pair.v1.value(x) * fx;
        let lower_up = diff::first(up, x, diff::H_FIRST) + a.value(x) * up(x) + pair.epsilon * fx;
        let raise_down = -diff::first(down, x, diff::H_FIRST) + a.value(x) * down(x) + pair.epsilon * fx;
        r0 = r0.max((lower_up - h0).abs());
        r1 = r1.max((raise_down - h1).abs());
    }
    (r0, r1)
}
