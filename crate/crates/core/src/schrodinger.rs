//! Stationary Schrödinger equation `−φ'' + V φ = λ φ`: the potential catalog,
//! closed-form solution pairs for the Pöschl–Teller partner of the free
//! particle, a reduction-of-order second solution and an RK4 integrator that
//! serves as the independent oracle for all of them.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::jet::{Jet, SmoothFn};
use crate::numerics::grid::UniformGrid;
use crate::numerics::{diff, quad, roots};

/// Largest step accepted by [`integrate_schrodinger`].
pub const MAX_INTEGRATION_STEP: f64 = 0.01;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Potential {
    FreeParticle,
    /// `V(x) = −2 k₀² sech²(k₀ x)`.
    PoeschlTeller { k0: f64 },
}

impl Potential {
    pub fn poeschl_teller(k0: f64) -> Result<Self> {
        if !(k0 > 0.0 && k0.is_finite()) {
            return Err(Error::Domain(format!("k0 must be positive, got {k0}")));
        }
        Ok(Potential::PoeschlTeller { k0 })
    }

    pub fn jet(&self, x: f64) -> Jet {
        match *self {
            Potential::FreeParticle => Jet::constant(0.0),
            Potential::PoeschlTeller { k0 } => {
                let s = (Jet::var(x) * k0).sech();
                s * s * (-2.0 * k0 * k0)
            }
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.jet(x).v
    }

    pub fn eval_dv(&self, x: f64) -> f64 {
        self.jet(x).d1
    }

    /// `lim V(x)` for `|x| → ∞`.
    pub fn asymptotic_value(&self) -> f64 {
        0.0
    }

    pub fn to_fn(self) -> SmoothFn {
        SmoothFn::new(move |x| self.jet(x))
    }

    pub fn name(&self) -> &'static str {
        match self {
            Potential::FreeParticle => "free particle",
            Potential::PoeschlTeller { .. } => "Pöschl–Teller",
        }
    }
}

/// Energy class of a free-particle seed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LambdaClass {
    /// `λ₀ = 0`
    Zero,
    /// `λ₀ = −k₀²`
    NegativeKsq,
    /// `λ₀ = +k₀²`
    PositiveKsq,
}

impl FromStr for LambdaClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zero" | "0" => Ok(LambdaClass::Zero),
            "negative" | "neg" | "-k2" => Ok(LambdaClass::NegativeKsq),
            "positive" | "pos" | "+k2" => Ok(LambdaClass::PositiveKsq),
            _ => Err(Error::Domain(format!(
                "unknown lambda class '{s}' (expected zero, negative, positive)"
            ))),
        }
    }
}

/// A free-particle solution offered as a possible factorization seed.
#[derive(Clone, Debug)]
pub struct SeedCandidate {
    pub label: &'static str,
    pub function: SmoothFn,
    pub lambda: f64,
    pub nodeless: bool,
}

/// The two free-particle solutions for each energy class.
pub fn free_particle_seeds(class: LambdaClass, k0: f64) -> Result<Vec<SeedCandidate>> {
    if !(k0 > 0.0 && k0.is_finite()) {
        return Err(Error::Domain(format!("k0 must be positive, got {k0}")));
    }
    let seeds = match class {
        LambdaClass::Zero => vec![
            SeedCandidate {
                label: "1",
                function: SmoothFn::constant(1.0),
                lambda: 0.0,
                nodeless: true,
            },
            SeedCandidate {
                label: "x",
                function: SmoothFn::new(Jet::var),
                lambda: 0.0,
                nodeless: false,
            },
        ],
        LambdaClass::NegativeKsq => vec![
            SeedCandidate {
                label: "sinh(k0 x)",
                function: SmoothFn::new(move |x| (Jet::var(x) * k0).sinh()),
                lambda: -k0 * k0,
                nodeless: false,
            },
            SeedCandidate {
                label: "cosh(k0 x)",
                function: SmoothFn::new(move |x| (Jet::var(x) * k0).cosh()),
                lambda: -k0 * k0,
                nodeless: true,
            },
        ],
        LambdaClass::PositiveKsq => vec![
            SeedCandidate {
                label: "sin(k0 x)",
                function: SmoothFn::new(move |x| (Jet::var(x) * k0).sin()),
                lambda: k0 * k0,
                nodeless: false,
            },
            SeedCandidate {
                label: "cos(k0 x)",
                function: SmoothFn::new(move |x| (Jet::var(x) * k0).cos()),
                lambda: k0 * k0,
                nodeless: false,
            },
        ],
    };
    Ok(seeds)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseTag {
    /// `λ₁ = λ₀ = −k₀²`
    Case1,
    /// `λ₁ = 0`
    Case2a,
    /// `λ₁ = −k₁²`
    Case2b,
    /// `λ₁ = +k₁²`
    Case2c,
}

impl CaseTag {
    pub fn needs_k1(self) -> bool {
        matches!(self, CaseTag::Case2b | CaseTag::Case2c)
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseTag::Case1 => "1",
            CaseTag::Case2a => "2a",
            CaseTag::Case2b => "2b",
            CaseTag::Case2c => "2c",
        })
    }
}

impl FromStr for CaseTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" => Ok(CaseTag::Case1),
            "2a" => Ok(CaseTag::Case2a),
            "2b" => Ok(CaseTag::Case2b),
            "2c" => Ok(CaseTag::Case2c),
            _ => Err(Error::Domain(format!("unknown case '{s}' (expected 1, 2a, 2b, 2c)"))),
        }
    }
}

/// A closed-form case of the Pöschl–Teller partner problem.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CaseId {
    pub tag: CaseTag,
    pub k0: f64,
    /// Only meaningful for 2b and 2c.
    pub k1: f64,
}

impl CaseId {
    pub fn new(tag: CaseTag, k0: f64, k1: f64) -> Result<Self> {
        if !(k0 > 0.0 && k0.is_finite()) {
            return Err(Error::Domain(format!("k0 must be positive, got {k0}")));
        }
        if tag.needs_k1() && !(k1 > 0.0 && k1.is_finite()) {
            return Err(Error::Domain(format!("case {tag} needs k1 > 0, got {k1}")));
        }
        Ok(CaseId { tag, k0, k1 })
    }

    pub fn case1(k0: f64) -> Result<Self> {
        CaseId::new(CaseTag::Case1, k0, 0.0)
    }

    pub fn case2a(k0: f64) -> Result<Self> {
        CaseId::new(CaseTag::Case2a, k0, 0.0)
    }

    pub fn case2b(k0: f64, k1: f64) -> Result<Self> {
        CaseId::new(CaseTag::Case2b, k0, k1)
    }

    pub fn case2c(k0: f64, k1: f64) -> Result<Self> {
        CaseId::new(CaseTag::Case2c, k0, k1)
    }

    /// `λ₁` for this case.
    pub fn lambda(&self) -> f64 {
        match self.tag {
            CaseTag::Case1 => -self.k0 * self.k0,
            CaseTag::Case2a => 0.0,
            CaseTag::Case2b => -self.k1 * self.k1,
            CaseTag::Case2c => self.k1 * self.k1,
        }
    }

    pub fn potential(&self) -> Potential {
        Potential::PoeschlTeller { k0: self.k0 }
    }
}

/// Two independent solutions at a common energy, with their Wronskian.
#[derive(Clone, Debug)]
pub struct SolutionPair {
    pub lambda: f64,
    pub phi1: SmoothFn,
    pub phi2: SmoothFn,
    pub wronskian: f64,
    pub potential: Potential,
}

impl SolutionPair {
    /// `max |−φ'' + (V − λ) φ|` over the grid for both members, analytic derivatives.
    pub fn schrodinger_residual(&self, grid: &UniformGrid) -> f64 {
        let mut worst = 0.0f64;
        for x in grid.points() {
            let v = self.potential.eval(x);
            for phi in [&self.phi1, &self.phi2] {
                let j = phi.jet(x);
                worst = worst.max((-j.d2 + (v - self.lambda) * j.v).abs());
            }
        }
        worst
    }

    /// `(max W − min W) / |Λ|` over the grid.
    pub fn wronskian_spread(&self, grid: &UniformGrid) -> f64 {
        let ws = grid.map(|x| wronskian(self, x));
        let (lo, hi) = ws
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &w| (lo.min(w), hi.max(w)));
        (hi - lo) / self.wronskian.abs()
    }
}

/// `φ₁ φ₂' − φ₂ φ₁'` at `x`.
pub fn wronskian(pair: &SolutionPair, x: f64) -> f64 {
    let a = pair.phi1.jet(x);
    let b = pair.phi2.jet(x);
    a.v * b.d1 - b.v * a.d1
}

/// The closed-form pair for one case.
///
/// Case 1 uses the reduction-of-order result
/// `φ₂ = sech(k₀x)·[x/2 + sinh(2k₀x)/(4k₀)]`, which has `W = 1` exactly.
pub fn closed_pair(case: CaseId) -> Result<SolutionPair> {
    let CaseId { tag, k0, k1 } = case;
    let potential = case.potential();
    let lambda = case.lambda();
    let th = move |x: f64| (Jet::var(x) * k0).tanh() * k0;
    let (phi1, phi2, wronskian) = match tag {
        CaseTag::Case1 => (
            SmoothFn::new(move |x| (Jet::var(x) * k0).sech()),
            SmoothFn::new(move |x| {
                let s = Jet::var(x);
                (s * k0).sech() * (s * 0.5 + (s * (2.0 * k0)).sinh() / (4.0 * k0))
            }),
            1.0,
        ),
        CaseTag::Case2a => (
            SmoothFn::new(th),
            SmoothFn::new(move |x| Jet::var(x) * th(x) - 1.0),
            k0 * k0,
        ),
        CaseTag::Case2b => {
            let w = k1 * (k1 * k1 - k0 * k0);
            if w == 0.0 {
                return Err(Error::DegeneratePair(format!(
                    "case 2b needs k1 ≠ k0 (k0 = k1 = {k0})"
                )));
            }
            (
                SmoothFn::new(move |x| {
                    let s = Jet::var(x) * k1;
                    s.cosh() * (-k1) + th(x) * s.sinh()
                }),
                SmoothFn::new(move |x| {
                    let s = Jet::var(x) * k1;
                    s.sinh() * (-k1) + th(x) * s.cosh()
                }),
                w,
            )
        }
        CaseTag::Case2c => (
            SmoothFn::new(move |x| {
                let s = Jet::var(x) * k1;
                s.sin() * k1 + th(x) * s.cos()
            }),
            SmoothFn::new(move |x| {
                let s = Jet::var(x) * k1;
                s.cos() * (-k1) + th(x) * s.sin()
            }),
            k1 * (k1 * k1 + k0 * k0),
        ),
    };
    Ok(SolutionPair { lambda, phi1, phi2, wronskian, potential })
}

/// Sampled output of [`integrate_schrodinger`].
#[derive(Clone, Debug)]
pub struct SampledSolution {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub dy: Vec<f64>,
}

/// Classical RK4 for `y'' = (V − λ) y` on a uniform grid, started at the grid
/// point `x0` and swept outward in both directions.
pub fn integrate_schrodinger(
    v: &Potential,
    lambda: f64,
    x0: f64,
    y0: f64,
    dy0: f64,
    grid: &UniformGrid,
) -> Result<SampledSolution> {
    let h = grid.step();
    if h > MAX_INTEGRATION_STEP * (1.0 + 1e-9) {
        return Err(Error::Grid(format!(
            "step {h} exceeds the integrator limit {MAX_INTEGRATION_STEP}"
        )));
    }
    let start = grid
        .index_of(x0)
        .ok_or_else(|| Error::Grid(format!("initial point {x0} is not a grid point")))?;
    let n = grid.len();
    let mut y = vec![0.0; n];
    let mut dy = vec![0.0; n];
    y[start] = y0;
    dy[start] = dy0;

    let rhs = |x: f64, (u, p): (f64, f64)| (p, (v.eval(x) - lambda) * u);
    let step = |x: f64, s: (f64, f64), h: f64| {
        let k1 = rhs(x, s);
        let k2 = rhs(x + 0.5 * h, (s.0 + 0.5 * h * k1.0, s.1 + 0.5 * h * k1.1));
        let k3 = rhs(x + 0.5 * h, (s.0 + 0.5 * h * k2.0, s.1 + 0.5 * h * k2.1));
        let k4 = rhs(x + h, (s.0 + h * k3.0, s.1 + h * k3.1));
        (
            s.0 + h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0),
            s.1 + h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1),
        )
    };

    for i in start..n - 1 {
        let (a, b) = step(grid.point(i), (y[i], dy[i]), h);
        y[i + 1] = a;
        dy[i + 1] = b;
    }
    for i in (1..=start).rev() {
        let (a, b) = step(grid.point(i), (y[i], dy[i]), -h);
        y[i - 1] = a;
        dy[i - 1] = b;
    }
    Ok(SampledSolution { x: grid.points(), y, dy })
}

/// Reduction of order: `φ₂(x) = φ₁(x) ∫_{anchor}^{x} ds / φ₁(s)²`, so that
/// `W(φ₁, φ₂) = 1` and `φ₂(anchor) = 0`.
///
/// Nodes of `φ₁` between the anchor and `x` are crossed with the finite-part
/// (Hadamard) value of the integral, which is the smooth continuation of `φ₂`.
#[derive(Clone, Debug)]
pub struct SecondSolution {
    phi1: SmoothFn,
    anchor: f64,
}

const NODE_SCAN_STEP: f64 = 0.01;
const NODE_HALF_WIDTH: f64 = 1e-3;

pub fn second_solution(phi1: &SmoothFn, x_anchor: f64) -> Result<SecondSolution> {
    let p = phi1.value(x_anchor);
    if !p.is_finite() || p == 0.0 {
        return Err(Error::Domain(format!(
            "φ₁ must be nonzero at the anchor, got φ₁({x_anchor}) = {p}"
        )));
    }
    Ok(SecondSolution { phi1: phi1.clone(), anchor: x_anchor })
}

impl SecondSolution {
    pub fn anchor(&self) -> f64 {
        self.anchor
    }

    fn nodes_between(&self, a: f64, b: f64) -> Result<Vec<f64>> {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let f = |s: f64| self.phi1.value(s);
        // Two consecutive exact zeros on the scan means φ₁ vanishes on an interval.
        let n = ((hi - lo) / NODE_SCAN_STEP).ceil() as usize;
        let mut prev_zero = false;
        for i in 0..=n {
            let x = (lo + i as f64 * NODE_SCAN_STEP).min(hi);
            let z = f(x) == 0.0;
            if z && prev_zero {
                return Err(Error::IdenticallyZero(x));
            }
            prev_zero = z;
        }
        let nodes = roots::sign_changes(f, lo, hi, NODE_SCAN_STEP);
        for &z in &nodes {
            if self.phi1.d1(z).abs() < 1e-12 {
                return Err(Error::IdenticallyZero(z));
            }
        }
        Ok(nodes)
    }

    /// Finite-part integral of `1/φ₁²` over `[z − δ, z + δ]`, from the local
    /// Taylor expansion `φ₁ = a₁t + a₂t² + a₃t³ + …`.
    fn node_piece(&self, z: f64, delta: f64) -> f64 {
        let j = self.phi1.jet(z);
        let a1 = j.d1;
        let p = 0.5 * j.d2 / a1;
        let q = j.d3 / (6.0 * a1);
        let g0 = (3.0 * p * p - 2.0 * q) / (a1 * a1);
        -2.0 / (a1 * a1 * delta) + 2.0 * delta * g0
    }

    /// `FP ∫_{anchor}^{x} ds/φ₁(s)²`.
    fn integral(&self, x: f64) -> Result<f64> {
        let a = self.anchor;
        let sign = if x >= a { 1.0 } else { -1.0 };
        let (lo, hi) = if x >= a { (a, x) } else { (x, a) };
        let nodes: Vec<f64> = self
            .nodes_between(lo, hi)?
            .into_iter()
            .filter(|&z| z > lo && z < hi)
            .collect();
        let inv_sq = |s: f64| {
            let p = self.phi1.value(s);
            1.0 / (p * p)
        };
        let mut total = 0.0;
        let mut left = lo;
        for (i, &z) in nodes.iter().enumerate() {
            let right_limit = nodes.get(i + 1).copied().unwrap_or(hi);
            let delta = NODE_HALF_WIDTH
                .min(0.5 * (z - left))
                .min(0.5 * (right_limit - z));
            total += quad::integrate(inv_sq, left, z - delta, 1e-15, 1e-13);
            total += self.node_piece(z, delta);
            left = z + delta;
        }
        total += quad::integrate(inv_sq, left, hi, 1e-15, 1e-13);
        Ok(sign * total)
    }

    pub fn value(&self, x: f64) -> Result<f64> {
        let p = self.phi1.value(x);
        if p.abs() > 1e-7 * (1.0 + self.phi1.d1(x).abs()) {
            return Ok(p * self.integral(x)?);
        }
        // On (or numerically on) a node: 4-point Lagrange interpolation from
        // symmetric neighbours, error O(h⁴).
        let h = 2e-3;
        let mut acc = 0.0;
        let offsets = [-2.0, -1.0, 1.0, 2.0];
        for (i, &oi) in offsets.iter().enumerate() {
            let mut w = 1.0;
            for (k, &ok) in offsets.iter().enumerate() {
                if k != i {
                    w *= (0.0 - ok) / (oi - ok);
                }
            }
            let s = x + oi * h;
            acc += w * self.phi1.value(s) * self.integral(s)?;
        }
        Ok(acc)
    }

    /// `φ₂'` from `W = 1` away from nodes, numerically near them.
    pub fn derivative(&self, x: f64) -> Result<f64> {
        let j = self.phi1.jet(x);
        if j.v.abs() > 1e-3 {
            let y = self.value(x)?;
            Ok((1.0 + j.d1 * y) / j.v)
        } else {
            let err = std::cell::RefCell::new(None);
            let d = diff::first(
                |s| {
                    self.value(s).unwrap_or_else(|e| {
                        *err.borrow_mut() = Some(e);
                        f64::NAN
                    })
                },
                x,
                diff::H_FIRST,
            );
            match err.into_inner() {
                Some(e) => Err(e),
                None => Ok(d),
            }
        }
    }

    /// As a [`SmoothFn`]; evaluation failures surface as `NaN`.
    pub fn to_fn(&self) -> SmoothFn {
        let this = self.clone();
        SmoothFn::new(move |x| {
            let v = this.value(x).unwrap_or(f64::NAN);
            let d = this.derivative(x).unwrap_or(f64::NAN);
            Jet::new(v, d, f64::NAN, f64::NAN)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> UniformGrid {
        UniformGrid::standard()
    }

    #[test]
    fn poeschl_teller_shape() {
        let v = Potential::poeschl_teller(0.5).unwrap();
        assert_eq!(v.eval(0.0), -0.5);
        assert!((v.eval(1.3) - v.eval(-1.3)).abs() < 1e-16);
        let c = 1.0 / (0.5f64 * 0.7).cosh();
        assert!((v.eval(0.7) + 0.5 * c * c).abs() < 1e-15);
        assert_eq!(Potential::FreeParticle.eval(3.0), 0.0);
        assert!(Potential::poeschl_teller(0.0).is_err());
    }

    #[test]
    fn seed_nodelessness_flags() {
        let s = free_particle_seeds(LambdaClass::NegativeKsq, 0.5).unwrap();
        assert!(!s[0].nodeless && s[0].label.starts_with("sinh"));
        assert!(s[1].nodeless && s[1].label.starts_with("cosh"));
        let s = free_particle_seeds(LambdaClass::Zero, 0.5).unwrap();
        assert!(s[0].nodeless && !s[1].nodeless);
        let s = free_particle_seeds(LambdaClass::PositiveKsq, 0.5).unwrap();
        assert!(s.iter().all(|c| !c.nodeless));
        for c in free_particle_seeds(LambdaClass::NegativeKsq, 0.5).unwrap() {
            for x in [-3.0, 0.2, 4.0] {
                let j = c.function.jet(x);
                assert!((-j.d2 - c.lambda * j.v).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn printed_wronskians() {
        let p = closed_pair(CaseId::case2a(0.5).unwrap()).unwrap();
        assert_eq!(p.wronskian, 0.25);
        assert!((wronskian(&p, 1.3) - 0.25).abs() < 1e-12);
        let p = closed_pair(CaseId::case2b(0.5, 0.4).unwrap()).unwrap();
        assert!((p.wronskian + 0.036).abs() < 1e-15);
        assert!((wronskian(&p, 0.0) + 0.036).abs() < 1e-12);
        let p = closed_pair(CaseId::case2c(0.5, 0.4).unwrap()).unwrap();
        assert!((p.wronskian - 0.164).abs() < 1e-15);
        let p = closed_pair(CaseId::case1(0.5).unwrap()).unwrap();
        assert!((wronskian(&p, -2.2) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_case_2b() {
        let e = closed_pair(CaseId::case2b(0.5, 0.5).unwrap()).unwrap_err();
        assert!(matches!(e, Error::DegeneratePair(_)));
    }

    #[test]
    fn all_cases_solve_the_equation() {
        for case in [
            CaseId::case1(0.5).unwrap(),
            CaseId::case2a(0.5).unwrap(),
            CaseId::case2b(0.5, 0.4).unwrap(),
            CaseId::case2c(0.5, 0.4).unwrap(),
        ] {
            let p = closed_pair(case).unwrap();
            assert!(p.schrodinger_residual(&grid()) < 1e-8, "{:?}", case.tag);
            assert!(p.wronskian_spread(&grid()) < 1e-9, "{:?}", case.tag);
        }
    }

    #[test]
    fn integrator_reproduces_closed_forms() {
        let g = grid();
        let s = integrate_schrodinger(&Potential::FreeParticle, -0.25, 0.0, 1.0, 0.0, &g).unwrap();
        for (x, y) in s.x.iter().zip(&s.y) {
            assert!((y - (0.5 * x).cosh()).abs() < 1e-8);
        }
        let v = Potential::poeschl_teller(0.5).unwrap();
        let s = integrate_schrodinger(&v, -0.25, 0.0, 1.0, 0.0, &g).unwrap();
        for (x, y) in s.x.iter().zip(&s.y) {
            assert!((y - 1.0 / (0.5 * x).cosh()).abs() < 1e-8);
        }
    }

    #[test]
    fn integrator_validates_grid() {
        let coarse = UniformGrid::new(-10.0, 10.0, 101).unwrap();
        assert!(integrate_schrodinger(&Potential::FreeParticle, 0.0, 0.0, 1.0, 0.0, &coarse).is_err());
        let g = grid();
        assert!(integrate_schrodinger(&Potential::FreeParticle, 0.0, 0.005, 1.0, 0.0, &g).is_err());
    }

    #[test]
    fn second_solution_of_constant_is_linear() {
        let s = second_solution(&SmoothFn::constant(1.0), 0.5).unwrap();
        for x in [-3.0, 0.5, 2.0] {
            assert!((s.value(x).unwrap() - (x - 0.5)).abs() < 1e-13);
        }
    }

    #[test]
    fn second_solution_of_cosh() {
        let phi1 = SmoothFn::new(|x| (Jet::var(x) * 0.5).cosh());
        let s = second_solution(&phi1, 0.0).unwrap();
        for x in [-6.0f64, -1.0, 0.7, 4.0] {
            // ∫₀ˣ sech²(s/2) ds = 2 tanh(x/2)
            let expect = (0.5 * x).cosh() * 2.0 * (0.5 * x).tanh();
            assert!((s.value(x).unwrap() - expect).abs() < 1e-12);
            let d = diff::first(|t| s.value(t).unwrap(), x, 1e-3);
            let w = phi1.value(x) * d - s.value(x).unwrap() * phi1.d1(x);
            assert!((w - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn second_solution_of_cos_crosses_nodes() {
        let phi1 = SmoothFn::new(|x| Jet::var(x).cos());
        let s = second_solution(&phi1, 0.0).unwrap();
        for x in [-1.2f64, 0.4, 1.5, 2.0, 3.0, 5.0, -4.0, std::f64::consts::FRAC_PI_2] {
            assert!((s.value(x).unwrap() - x.sin()).abs() < 1e-8, "x = {x}");
        }
        let zero_anchor = SmoothFn::new(Jet::var);
        assert!(second_solution(&zero_anchor, 0.0).is_err());
    }

    #[test]
    fn second_solution_detects_vanishing_interval() {
        let phi1 = SmoothFn::from_values(|x: f64| if x > 1.0 { 0.0 } else { 1.0 - x });
        let s = second_solution(&phi1, 0.0).unwrap();
        assert!(matches!(s.value(2.0), Err(Error::IdenticallyZero(_))));
    }
}
