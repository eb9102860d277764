//! Composition `φ(x) = b(x)^{1/2} U(f(x))`, its residual against the full
//! stationary INLSE `−φ'' + V₁φ + gφ³ = λ₁φ`, and a split-step propagation
//! check of stationarity.

use std::f64::consts::PI;

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::ermakov::{build_reduction, canonical_map, CanonicalMap, PinneyCoefficients};
use crate::error::{Error, Result};
use crate::jet::{Jet, SmoothFn};
use crate::nlse::{fitted_sd_soliton, make_dark_kink, ReducedSolution};
use crate::numerics::diff;
use crate::numerics::grid::UniformGrid;
use crate::schrodinger::{closed_pair, CaseId, Potential, SolutionPair};
use crate::susy::{darboux_partner, SeedSolution};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolutionChoice {
    /// Elliptic soliton with `μξ₁ = 2nK`.
    SdSoliton(u32),
    DarkKink,
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Diagnostics {
    pub inlse_residual: f64,
    /// `max(|φ(x_min)|, |φ(x_max)|) / max|φ|`.
    pub boundary_decay: f64,
    pub wronskian_spread: f64,
}

/// A composed profile sampled on a grid, with the pieces needed to resample it.
#[derive(Clone, Debug)]
pub struct SolitonProfile {
    pub case: Option<CaseId>,
    pub coeffs: PinneyCoefficients,
    pub lambda: f64,
    pub grid: UniformGrid,
    pub x: Vec<f64>,
    pub v: Vec<f64>,
    pub g: Vec<f64>,
    pub phi: Vec<f64>,
    /// Canonical coordinate `X = f(x) − x_shift`.
    pub big_x: Vec<f64>,
    /// Centre of the image of `f`, subtracted so the canonical domain is symmetric.
    pub x_shift: f64,
    /// Half-width of the image of `f` the soliton is quantized on.
    pub xi_image: Option<f64>,
    pub diagnostics: Diagnostics,
    pub solution: ReducedSolution,
    pub energy: f64,
    pub wronskian: f64,
    pub xi1: Option<f64>,
    /// Scales every sampled and resampled `φ`; 1 for the exact profile.
    pub amplitude_scale: f64,
    map: CanonicalMap,
    v1: SmoothFn,
}

impl SolitonProfile {
    pub fn phi_at(&self, x: f64) -> f64 {
        let b = self.map.reduction().b.value(x);
        self.amplitude_scale * b.sqrt() * self.solution.value(self.map.f(x) - self.x_shift)
    }

    pub fn v_at(&self, x: f64) -> f64 {
        self.v1.value(x)
    }

    pub fn g_at(&self, x: f64) -> f64 {
        self.map.reduction().g.value(x)
    }

    pub fn map(&self) -> &CanonicalMap {
        &self.map
    }

    /// The same construction with `φ` multiplied by `s`; no longer a solution unless `s = ±1`.
    pub fn scaled(&self, s: f64) -> SolitonProfile {
        let mut p = self.clone();
        p.amplitude_scale *= s;
        p.phi.iter_mut().for_each(|v| *v *= s);
        p.diagnostics.inlse_residual = inlse_residual(&p);
        p
    }
}

/// Zero spacings across an image of half-width `xi_image` for mode `n`:
/// `m = ⌈2n ξ_image/ξ₁⌉`. This is `2n` on a single full branch (`μξ₁ = 2nK`)
/// and keeps the same density of zeros on wider or partial images.
pub fn spacing_count(mode_n: u32, xi_image: f64, xi1: f64) -> u32 {
    ((2.0 * mode_n as f64 * xi_image / xi1) - 1e-9).ceil().max(1.0) as u32
}

fn reduced_solution(
    choice: SolutionChoice,
    energy: f64,
    domain: Option<(f64, f64)>,
    g0: f64,
) -> Result<ReducedSolution> {
    match choice {
        SolutionChoice::SdSoliton(n) => {
            let (xi_image, xi1) = domain.ok_or_else(|| {
                Error::Unrealizable(
                    "elliptic soliton needs a bounded canonical domain, but ξ₁ is infinite for this case; use the kink".into(),
                )
            })?;
            if n == 0 {
                return Err(Error::Domain("mode n must be ≥ 1".into()));
            }
            let m = spacing_count(n, xi_image, xi1);
            let mut s = fitted_sd_soliton(energy, xi_image, m, g0)?;
            s.mode_n = n;
            Ok(ReducedSolution::Sd(s))
        }
        SolutionChoice::DarkKink => Ok(ReducedSolution::Kink(make_dark_kink(energy, g0)?)),
    }
}

/// Composes a profile from an explicit pair and partner potential.
pub fn compose_profile(
    pair: &SolutionPair,
    v1: SmoothFn,
    coeffs: PinneyCoefficients,
    choice: SolutionChoice,
    grid: &UniformGrid,
) -> Result<SolitonProfile> {
    let red = build_reduction(pair, coeffs)?;
    let map = canonical_map(&red, grid)?;
    // The soliton must vanish at both ends of the image of f, so it is
    // quantized on the image's half-width and centred on it.
    let image = map.image();
    let (x_shift, xi_image) = match (choice, image) {
        (SolutionChoice::SdSoliton(_), Some((lo, hi))) => (0.5 * (lo + hi), Some(0.5 * (hi - lo))),
        (_, img) => (0.0, img.map(|(lo, hi)| 0.5 * (hi - lo))),
    };
    let solution = reduced_solution(choice, red.energy, xi_image.zip(map.xi1), coeffs.g0)?;
    let x = grid.points();
    let big_x: Vec<f64> = x.iter().map(|&s| map.f(s) - x_shift).collect();
    let phi: Vec<f64> = x
        .iter()
        .zip(&big_x)
        .map(|(&s, &xx)| red.b.value(s).sqrt() * solution.value(xx))
        .collect();
    let v = x.iter().map(|&s| v1.value(s)).collect();
    let g = x.iter().map(|&s| red.g.value(s)).collect();
    let mut profile = SolitonProfile {
        case: None,
        coeffs,
        lambda: pair.lambda,
        grid: *grid,
        x,
        v,
        g,
        phi,
        big_x,
        x_shift,
        xi_image,
        diagnostics: Diagnostics::default(),
        solution,
        energy: red.energy,
        wronskian: pair.wronskian,
        xi1: map.xi1,
        amplitude_scale: 1.0,
        map,
        v1,
    };
    let peak = profile.phi.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let ends = profile.phi[0].abs().max(profile.phi[profile.phi.len() - 1].abs());
    profile.diagnostics = Diagnostics {
        inlse_residual: inlse_residual(&profile),
        boundary_decay: if peak > 0.0 { ends / peak } else { 0.0 },
        wronskian_spread: pair.wronskian_spread(grid),
    };
    Ok(profile)
}

/// Builds the profile for one of the Pöschl–Teller cases. `V₁` comes from the
/// Darboux construction on the seed `cosh(k₀x)` at `ε = −k₀²`.
pub fn build_profile(
    case: CaseId,
    coeffs: PinneyCoefficients,
    choice: SolutionChoice,
    grid: &UniformGrid,
) -> Result<SolitonProfile> {
    let pair = closed_pair(case)?;
    let k0 = case.k0;
    let seed = SeedSolution::new(SmoothFn::new(move |x| (Jet::var(x) * k0).cosh()), -k0 * k0, *grid);
    let partner = darboux_partner(Potential::FreeParticle, &seed)?;
    let mut profile = compose_profile(&pair, partner.v1, coeffs, choice, grid)?;
    profile.case = Some(case);
    Ok(profile)
}

/// `max |−φ'' + V₁φ + gφ³ − λ₁φ|` over interior samples, five-point second differences.
pub fn inlse_residual(profile: &SolitonProfile) -> f64 {
    let h = profile.grid.step();
    diff::second_on_samples(&profile.phi, h)
        .into_iter()
        .enumerate()
        .filter_map(|(i, d2)| {
            let d2 = d2?;
            let p = profile.phi[i];
            Some((-d2 + profile.v[i] * p + profile.g[i] * p * p * p - profile.lambda * p).abs())
        })
        .fold(0.0, f64::max)
}

/// Settings for [`propagate_and_check_with`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Propagation {
    pub modes: usize,
    /// The box is widened until `|φ|` at its ends falls below this fraction of the peak.
    pub tail: f64,
    pub max_half_width: f64,
}

impl Default for Propagation {
    fn default() -> Self {
        Propagation { modes: 2048, tail: 1e-6, max_half_width: 200.0 }
    }
}

pub const MAX_DT: f64 = 1e-3;

/// Evolves `iψ_t = −ψ_xx + V₁ψ + g|ψ|²ψ` from `ψ(x,0) = φ(x)` to `T` and
/// returns `max_x ||ψ(x,T)| − |φ(x)||`, with default settings.
pub fn propagate_and_check(profile: &SolitonProfile, t_final: f64, dt: f64) -> Result<f64> {
    propagate_and_check_with(profile, t_final, dt, Propagation::default())
}

/// Second-order Strang splitting with a spectral kinetic step on a periodic box.
pub fn propagate_and_check_with(
    profile: &SolitonProfile,
    t_final: f64,
    dt: f64,
    settings: Propagation,
) -> Result<f64> {
    if !(dt > 0.0 && dt <= MAX_DT) {
        return Err(Error::Resolution(format!("time step {dt} outside (0, {MAX_DT}]")));
    }
    if !(t_final >= 0.0) || !t_final.is_finite() {
        return Err(Error::Resolution(format!("final time {t_final} must be finite and ≥ 0")));
    }
    let n = settings.modes;
    if n < 64 {
        return Err(Error::Resolution(format!("{n} modes is too few")));
    }
    let peak = profile.phi.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if peak == 0.0 {
        return Ok(0.0);
    }

    let centre = 0.5 * (profile.grid.xmin() + profile.grid.xmax());
    let mut half = 0.5 * (profile.grid.xmax() - profile.grid.xmin());
    let decayed = |l: f64| {
        profile.phi_at(centre - l).abs() < settings.tail * peak
            && profile.phi_at(centre + l).abs() < settings.tail * peak
    };
    while !decayed(half) {
        half += 0.5;
        if half > settings.max_half_width {
            return Err(Error::Resolution(format!(
                "profile does not decay to {:e} of its peak within |x − {centre}| ≤ {}; a periodic box would misrepresent its tails",
                settings.tail, settings.max_half_width
            )));
        }
    }

    let length = 2.0 * half;
    let dx = length / n as f64;
    let xs: Vec<f64> = (0..n).map(|j| centre - half + j as f64 * dx).collect();
    let phi0: Vec<f64> = xs.iter().map(|&x| profile.phi_at(x)).collect();
    let v: Vec<f64> = xs.iter().map(|&x| profile.v_at(x)).collect();
    let g: Vec<f64> = xs.iter().map(|&x| profile.g_at(x)).collect();

    let mut planner = FftPlanner::<f64>::new();
    let fwd = planner.plan_fft_forward(n);
    let inv = planner.plan_fft_inverse(n);

    let mut psi: Vec<Complex<f64>> = phi0.iter().map(|&p| Complex::new(p, 0.0)).collect();

    // The initial spectrum must have decayed well before the Nyquist band.
    let mut spec = psi.clone();
    fwd.process(&mut spec);
    let spec_peak = spec.iter().fold(0.0f64, |m, c| m.max(c.norm()));
    let band = n / 16;
    let top = spec[n / 2 - band..n / 2 + band].iter().fold(0.0f64, |m, c| m.max(c.norm()));
    if top > settings.tail * spec_peak {
        return Err(Error::Resolution(format!(
            "initial spectrum not resolved: {:e} of peak near Nyquist with dx = {dx}",
            top / spec_peak
        )));
    }

    let wave = |j: usize| {
        let m = if j <= n / 2 { j as f64 } else { j as f64 - n as f64 };
        2.0 * PI * m / length
    };
    let kinetic: Vec<Complex<f64>> = (0..n)
        .map(|j| {
            let k = wave(j);
            Complex::from_polar(1.0 / n as f64, -k * k * dt)
        })
        .collect();

    let steps = (t_final / dt).round() as usize;
    let half_step = |psi: &mut [Complex<f64>]| {
        for ((p, &vj), &gj) in psi.iter_mut().zip(&v).zip(&g) {
            let phase = -(vj + gj * p.norm_sqr()) * 0.5 * dt;
            *p *= Complex::from_polar(1.0, phase);
        }
    };
    for _ in 0..steps {
        half_step(&mut psi);
        fwd.process(&mut psi);
        for (p, k) in psi.iter_mut().zip(&kinetic) {
            *p *= k;
        }
        inv.process(&mut psi);
        half_step(&mut psi);
    }

    Ok(psi
        .iter()
        .zip(&phi0)
        .map(|(p, &f)| (p.norm() - f.abs()).abs())
        .fold(0.0, f64::max))
}
