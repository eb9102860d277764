//! The four subcommands.

use std::path::Path;

use serde_json::{Map, Value};

use super::config::{ConfigError, RunConfig};
use super::output::{emit, num, render_csv, render_json, sidecar_path};
use crate::assemble::{build_profile, SolitonProfile};
use crate::ermakov::{build_reduction, canonical_map, pinney_residual, PinneyCoefficients};
use crate::jet::{Jet, SmoothFn};
use crate::nlse::{nlse_residual, ReducedSolution};
use crate::numerics::grid::UniformGrid;
use crate::schrodinger::{closed_pair, free_particle_seeds, CaseId, CaseTag, Potential};
use crate::specialfn::complete_elliptic_k;
use crate::susy::{darboux_partner, intertwining_residual, SeedSolution};

/// Named tolerances for `verify` with their defaults.
pub const TOLERANCES: &[(&str, f64)] = &[
    ("partner", 1e-12),
    ("riccati", 1e-10),
    ("intertwining", 1e-6),
    ("schrodinger", 1e-8),
    ("wronskian", 1e-9),
    ("pinney", 1e-7),
    ("energy", 1e-7),
    ("map_derivative", 1e-8),
    ("map_quadrature", 1e-8),
    ("modulus", 1e-10),
    ("edge_zero", 1e-10),
    ("nlse", 1e-6),
    ("inlse", 1e-5),
];

pub const SD_FIGURE_WARNING: &str = "realizability: eta^2>0 requires g0<0";

#[derive(Debug)]
pub enum CommandError {
    /// Exit code 2.
    Config(String),
    /// Exit code 1.
    Failed(String),
}

impl CommandError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CommandError::Config(_) => 2,
            CommandError::Failed(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CommandError::Config(m) | CommandError::Failed(m) => m,
        }
    }
}

impl From<ConfigError> for CommandError {
    fn from(e: ConfigError) -> Self {
        CommandError::Config(e.0)
    }
}

fn config_err(e: crate::Error) -> CommandError {
    CommandError::Config(e.to_string())
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), CommandError> {
    emit(path, text).map_err(|e| {
        CommandError::Config(format!(
            "cannot write {}: {e}",
            path.map_or("stdout".into(), |p| p.display().to_string())
        ))
    })
}

fn write_sidecar(path: Option<&Path>, fields: Map<String, Value>) -> Result<(), CommandError> {
    match path {
        Some(p) => write_out(Some(&sidecar_path(p)), &render_json(&fields)),
        None => Ok(()),
    }
}

fn warnings(list: &[String]) -> Value {
    Value::Array(list.iter().cloned().map(Value::String).collect())
}

fn grid_fields(m: &mut Map<String, Value>, g: &UniformGrid) {
    m.insert("xmin".into(), num(g.xmin()));
    m.insert("xmax".into(), num(g.xmax()));
    m.insert("npoints".into(), Value::from(g.len()));
}

/// `x,V0,V1,alpha1` for the nodeless free-particle seed of the chosen energy class.
pub fn cmd_partner(cfg: &RunConfig) -> Result<(), CommandError> {
    let grid = cfg.grid();
    let seeds = free_particle_seeds(cfg.lambda_class, cfg.k0).map_err(config_err)?;
    let mut rejected = Vec::new();
    let mut chosen = None;
    for cand in seeds {
        let seed = SeedSolution::new(cand.function.clone(), cand.lambda, grid);
        match seed.find_node() {
            None => {
                chosen = Some((cand.label, seed));
                break;
            }
            Some(z) => rejected.push(format!("{} has a node at x = {z}", cand.label)),
        }
    }
    let (label, seed) = chosen.ok_or_else(|| {
        CommandError::Config(format!(
            "no nodeless seed in this energy class: {}",
            rejected.join("; ")
        ))
    })?;
    let pair = darboux_partner(Potential::FreeParticle, &seed).map_err(config_err)?;
    let x = grid.points();
    let cols = vec![
        x.clone(),
        x.iter().map(|&s| pair.v0.eval(s)).collect(),
        x.iter().map(|&s| pair.v1.value(s)).collect(),
        x.iter().map(|&s| pair.alpha1.value(s)).collect(),
    ];
    write_out(cfg.out.as_deref(), &render_csv(&["x", "V0", "V1", "alpha1"], &cols))?;
    let mut m = Map::new();
    m.insert("seed".into(), Value::String(label.into()));
    m.insert("epsilon".into(), num(seed.epsilon));
    m.insert("k0".into(), num(cfg.k0));
    m.insert("riccati_residual".into(), num(pair.riccati_residual(&grid)));
    grid_fields(&mut m, &grid);
    let w: Vec<String> = rejected.iter().map(|r| format!("seed rejected: {r}")).collect();
    m.insert("warnings".into(), warnings(&w));
    write_sidecar(cfg.out.as_deref(), m)
}

fn profile_fields(p: &SolitonProfile, cfg: &RunConfig) -> Map<String, Value> {
    let mut m = Map::new();
    let case = p.case.expect("built from a case");
    m.insert("case".into(), Value::String(case.tag.to_string()));
    m.insert("k0".into(), num(case.k0));
    if case.tag.needs_k1() {
        m.insert("k1".into(), num(case.k1));
    }
    m.insert("alpha".into(), num(p.coeffs.alpha));
    m.insert("beta".into(), num(p.coeffs.beta));
    m.insert("gamma".into(), num(p.coeffs.gamma));
    m.insert("g0".into(), num(p.coeffs.g0));
    m.insert("lambda".into(), num(p.lambda));
    m.insert("E".into(), num(p.energy));
    m.insert("Gamma".into(), num(p.coeffs.big_gamma()));
    m.insert("Lambda".into(), num(p.wronskian));
    m.insert("xi1".into(), num(p.xi1.unwrap_or(f64::INFINITY)));
    m.insert("xi_image".into(), num(p.xi_image.unwrap_or(f64::INFINITY)));
    m.insert("X_shift".into(), num(p.x_shift));
    match p.solution {
        ReducedSolution::Sd(s) => {
            m.insert("solution".into(), Value::String("sd".into()));
            m.insert("mode".into(), Value::from(s.mode_n));
            m.insert("half_periods".into(), Value::from(s.half_periods));
            m.insert("phase".into(), num(s.phase));
            m.insert("k_modulus".into(), num(s.k.k()));
            m.insert("mu".into(), num(s.mu));
            m.insert("eta".into(), num(s.eta));
        }
        ReducedSolution::Kink(k) => {
            m.insert("solution".into(), Value::String("kink".into()));
            m.insert("k_modulus".into(), Value::Null);
            m.insert("mu".into(), num(k.width));
            m.insert("eta".into(), num(k.amplitude));
        }
    }
    m.insert("inlse_residual".into(), num(p.diagnostics.inlse_residual));
    m.insert("boundary_decay".into(), num(p.diagnostics.boundary_decay));
    m.insert("wronskian_spread".into(), num(p.diagnostics.wronskian_spread));
    let red = p.map().reduction();
    m.insert("pinney_residual".into(), num(pinney_residual(red, &p.grid)));
    grid_fields(&mut m, &cfg.grid());
    m
}

fn profile_warnings(p: &SolitonProfile) -> Vec<String> {
    let mut w = Vec::new();
    if p.xi1.is_some() && p.diagnostics.boundary_decay > 1e-3 {
        w.push(format!(
            "phi at the domain ends is {:.3e} of its peak; the profile has not decayed on this domain",
            p.diagnostics.boundary_decay
        ));
    }
    if p.xi1.is_none() {
        w.push("canonical coordinate is unbounded; tails do not decay".into());
    }
    w
}

/// `x,V,g,phi,X` plus a JSON sidecar.
pub fn cmd_soliton(cfg: &RunConfig) -> Result<(), CommandError> {
    let case = cfg.case_id()?;
    let coeffs = cfg.coeffs()?;
    let profile = build_profile(case, coeffs, cfg.choice(), &cfg.grid()).map_err(config_err)?;
    let cols = vec![
        profile.x.clone(),
        profile.v.clone(),
        profile.g.clone(),
        profile.phi.clone(),
        profile.big_x.clone(),
    ];
    write_out(cfg.out.as_deref(), &render_csv(&["x", "V", "g", "phi", "X"], &cols))?;
    let mut m = profile_fields(&profile, cfg);
    m.insert("warnings".into(), warnings(&profile_warnings(&profile)));
    write_sidecar(cfg.out.as_deref(), m)
}

/// One verified quantity.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.value.is_finite() && self.value < self.tolerance
    }
}

fn probe_functions() -> Vec<SmoothFn> {
    vec![
        SmoothFn::new(Jet::var),
        SmoothFn::new(|x| (Jet::var(x) * 0.4).sinh()),
        SmoothFn::new(|x| (Jet::var(x) * 0.4).cos()),
    ]
}

/// Every residual contract for the configured case.
pub fn verify_suite(cfg: &RunConfig) -> crate::Result<Vec<Check>> {
    let grid = cfg.grid();
    let case = CaseId::new(cfg.case, cfg.k0, cfg.k1)?;
    let coeffs = PinneyCoefficients::new(cfg.alpha, cfg.beta, cfg.gamma, cfg.g0)?;
    let mut checks = Vec::new();
    let mut push = |name: &'static str, value: f64| {
        checks.push(Check { name, value, tolerance: cfg.tolerance(name) });
    };

    let k0 = cfg.k0;
    let seed = SeedSolution::new(SmoothFn::new(move |x| (Jet::var(x) * k0).cosh()), -k0 * k0, grid);
    let partner = darboux_partner(Potential::FreeParticle, &seed)?;
    let exact = case.potential();
    push(
        "partner",
        grid.points().iter().map(|&x| (partner.v1.value(x) - exact.eval(x)).abs()).fold(0.0, f64::max),
    );
    push("riccati", partner.riccati_residual(&grid));
    push(
        "intertwining",
        probe_functions().iter().map(|p| intertwining_residual(&partner, p, &grid)).fold(0.0, f64::max),
    );

    let pair = closed_pair(case)?;
    push("schrodinger", pair.schrodinger_residual(&grid));
    push("wronskian", pair.wronskian_spread(&grid));

    let red = build_reduction(&pair, coeffs)?;
    push("pinney", pinney_residual(&red, &grid));
    push(
        "energy",
        grid.points().iter().map(|&x| ((red.energy_from_b(x) - red.energy) / red.energy).abs()).fold(0.0, f64::max),
    );
    let map = canonical_map(&red, &grid)?;
    push(
        "map_derivative",
        grid.points().iter().map(|&x| (map.f_prime(x) * red.b.value(x) - 1.0).abs()).fold(0.0, f64::max),
    );
    let mut probes: Vec<f64> = grid.points().into_iter().step_by(50).collect();
    probes.push(grid.xmax());
    probes.extend_from_slice(map.nodes());
    push(
        "map_quadrature",
        probes.iter().map(|&x| (map.f(x) - map.f_quadrature(x)).abs()).fold(0.0, f64::max),
    );

    let profile = build_profile(case, coeffs, cfg.choice(), &grid)?;
    match profile.solution {
        ReducedSolution::Sd(s) => {
            let xi1 = profile.xi_image.expect("elliptic soliton has a bounded image");
            let kk = complete_elliptic_k(s.k)?;
            push("modulus", (s.mu * xi1 - s.half_periods as f64 * kk).abs());
            push("edge_zero", s.value(xi1).abs().max(s.value(-xi1).abs()));
            let xs: Vec<f64> = (0..=400).map(|i| -xi1 + 2.0 * xi1 * i as f64 / 400.0).collect();
            push("nlse", nlse_residual(|x| s.value(x), s.energy, s.g0, &xs));
        }
        ReducedSolution::Kink(k) => {
            let lo = profile.big_x[0];
            let hi = profile.big_x[profile.big_x.len() - 1];
            let xs: Vec<f64> = (0..=400).map(|i| lo + (hi - lo) * i as f64 / 400.0).collect();
            push("nlse", nlse_residual(|x| k.value(x), k.energy, k.g0, &xs));
        }
    }
    push("inlse", profile.diagnostics.inlse_residual);
    Ok(checks)
}

pub fn render_checks(checks: &[Check]) -> String {
    let mut out = format!("{:<16} {:>24} {:>12}  {}\n", "check", "value", "tolerance", "status");
    for c in checks {
        out.push_str(&format!(
            "{:<16} {:>24.6e} {:>12.1e}  {}\n",
            c.name,
            c.value,
            c.tolerance,
            if c.passed() { "pass" } else { "FAIL" }
        ));
    }
    out
}

/// Prints the residual table; fails when any contract fails.
pub fn cmd_verify(cfg: &RunConfig) -> Result<(), CommandError> {
    let checks = verify_suite(cfg).map_err(|e| CommandError::Failed(e.to_string()))?;
    let table = render_checks(&checks);
    write_out(cfg.out.as_deref(), &table)?;
    if cfg.out.is_some() {
        print!("{table}");
    }
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed()).map(|c| c.name).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CommandError::Failed(format!("failed checks: {}", failed.join(", "))))
    }
}

/// A two-column figure panel.
#[derive(Clone, Debug)]
pub struct FigureData {
    pub header: [&'static str; 2],
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub fields: Map<String, Value>,
    pub warnings: Vec<String>,
}

pub const FIGURE_IDS: [&str; 8] = ["1a", "1b", "2a", "2b", "3a", "3b", "4a", "4b"];

/// Dataset for a figure panel with the caption parameters
/// `k₀ = 0.5, k₁ = 0.4, α = 2, β = 1, γ = 3`. Figures 1–3 use the elliptic
/// soliton with `g₀ = −1` instead of the caption's `g₀ = 1`; figure 4 uses the
/// kink with `g₀ = 1`.
pub fn figure_dataset(id: &str, grid: &UniformGrid) -> Result<FigureData, CommandError> {
    if !FIGURE_IDS.contains(&id) {
        return Err(CommandError::Config(format!(
            "unknown figure '{id}' (expected one of {})",
            FIGURE_IDS.join(", ")
        )));
    }
    let (tag, panel) = id.split_at(1);
    let case = match tag {
        "1" => CaseId::case1(0.5),
        "2" => CaseId::case2a(0.5),
        "3" => CaseId::case2b(0.5, 0.4),
        _ => CaseId::case2c(0.5, 0.4),
    }
    .map_err(config_err)?;
    let (choice, g0, mut warn) = if case.tag == CaseTag::Case2c {
        (crate::assemble::SolutionChoice::DarkKink, 1.0, Vec::new())
    } else {
        (crate::assemble::SolutionChoice::SdSoliton(1), -1.0, vec![SD_FIGURE_WARNING.to_string()])
    };
    let coeffs = PinneyCoefficients::new(2.0, 1.0, 3.0, g0).map_err(config_err)?;
    let profile = build_profile(case, coeffs, choice, grid).map_err(config_err)?;
    let (header, y) = if panel == "a" {
        (["x", "g"], profile.g.clone())
    } else {
        warn.extend(profile_warnings(&profile));
        (["x", "phi"], profile.phi.clone())
    };
    let cfg = RunConfig::resolve(Default::default()).expect("defaults are valid");
    let mut fields = profile_fields(&profile, &cfg);
    grid_fields(&mut fields, grid);
    fields.insert("figure".into(), Value::String(id.into()));
    Ok(FigureData { header, x: profile.x.clone(), y, fields, warnings: warn })
}

pub fn cmd_figure(id: &str, cfg: &RunConfig) -> Result<(), CommandError> {
    let data = figure_dataset(id, &cfg.grid())?;
    write_out(cfg.out.as_deref(), &render_csv(&data.header, &[data.x, data.y]))?;
    let mut m = data.fields;
    m.insert("warnings".into(), warnings(&data.warnings));
    write_sidecar(cfg.out.as_deref(), m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::config::PartialConfig;

    fn cfg(p: PartialConfig) -> RunConfig {
        RunConfig::resolve(p).unwrap()
    }

    #[test]
    fn tolerance_names_are_unique() {
        let mut names: Vec<&str> = TOLERANCES.iter().map(|(n, _)| *n).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), TOLERANCES.len());
    }

    #[test]
    fn case1_suite_passes() {
        let checks = verify_suite(&cfg(PartialConfig::default())).unwrap();
        for c in &checks {
            assert!(c.passed(), "{c:?}");
        }
    }

    #[test]
    fn degenerate_suite_fails() {
        let c = cfg(PartialConfig { case: Some("2b".into()), k1: Some(0.5), ..Default::default() });
        let e = cmd_verify(&c).unwrap_err();
        assert_eq!(e.exit_code(), 1);
        assert!(e.message().contains("degenerate pair: Λ=0"));
    }

    #[test]
    fn figure_ids() {
        let g = UniformGrid::new(-10.0, 10.0, 201).unwrap();
        assert_eq!(figure_dataset("9z", &g).unwrap_err().exit_code(), 2);
        let d = figure_dataset("1b", &g).unwrap();
        assert_eq!(d.header, ["x", "phi"]);
        assert!(d.warnings.iter().any(|w| w == SD_FIGURE_WARNING));
        let d = figure_dataset("4a", &g).unwrap();
        assert_eq!(d.header, ["x", "g"]);
        assert!(d.warnings.is_empty());
    }
}
