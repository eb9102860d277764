//! Run configuration: defaults, then an optional JSON file, then flags.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::assemble::SolutionChoice;
use crate::ermakov::PinneyCoefficients;
use crate::numerics::grid::UniformGrid;
use crate::schrodinger::{CaseId, CaseTag, LambdaClass};

/// Error in the command line or configuration file; maps to exit code 2.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolutionKind {
    Sd,
    Kink,
}

impl std::str::FromStr for SolutionKind {
    type Err = ConfigError;
    fn from_str(s: &str) -> Result<Self, ConfigError> {
        match s {
            "sd" => Ok(SolutionKind::Sd),
            "kink" => Ok(SolutionKind::Kink),
            _ => Err(ConfigError(format!("unknown solution '{s}' (expected sd or kink)"))),
        }
    }
}

/// Every setting optional, as read from a file or from flags.
#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PartialConfig {
    pub case: Option<String>,
    pub k0: Option<f64>,
    pub k1: Option<f64>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub gamma: Option<f64>,
    pub g0: Option<f64>,
    pub lambda_class: Option<String>,
    pub mode: Option<u32>,
    pub solution: Option<String>,
    pub xmin: Option<f64>,
    pub xmax: Option<f64>,
    pub npoints: Option<usize>,
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub tol: BTreeMap<String, f64>,
}

impl PartialConfig {
    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = fs::read_to_string(path)
            .map_err(|e| ConfigError(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| ConfigError(format!("invalid config {}: {e}", path.display())))
    }

    /// Fields set in `over` replace those in `self`; tolerance maps are merged.
    pub fn overlay(mut self, over: PartialConfig) -> Self {
        macro_rules! take {
            ($($f:ident),*) => { $( if over.$f.is_some() { self.$f = over.$f; } )* };
        }
        take!(case, k0, k1, alpha, beta, gamma, g0, lambda_class, mode, solution, xmin, xmax, npoints, out);
        self.tol.extend(over.tol);
        self
    }
}

/// Validated configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub case: CaseTag,
    pub k0: f64,
    pub k1: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub g0: f64,
    pub lambda_class: LambdaClass,
    pub mode: u32,
    pub solution: SolutionKind,
    pub xmin: f64,
    pub xmax: f64,
    pub npoints: usize,
    pub out: Option<PathBuf>,
    pub tol: BTreeMap<String, f64>,
}

pub const DEFAULT_K0: f64 = 0.5;
pub const DEFAULT_K1: f64 = 0.4;

impl RunConfig {
    /// Fills defaults and validates. The solution defaults to the kink for
    /// case 2c and to the elliptic soliton otherwise; `g₀` defaults to the
    /// sign each family needs (−1 elliptic, +1 kink).
    pub fn resolve(p: PartialConfig) -> Result<Self, ConfigError> {
        let case: CaseTag = p
            .case
            .as_deref()
            .unwrap_or("1")
            .parse()
            .map_err(|e: crate::Error| ConfigError(e.to_string()))?;
        let solution = match p.solution.as_deref() {
            Some(s) => s.parse()?,
            None if case == CaseTag::Case2c => SolutionKind::Kink,
            None => SolutionKind::Sd,
        };
        let g0 = p.g0.unwrap_or(match solution {
            SolutionKind::Sd => -1.0,
            SolutionKind::Kink => 1.0,
        });
        let lambda_class = p
            .lambda_class
            .as_deref()
            .unwrap_or("negative")
            .parse()
            .map_err(|e: crate::Error| ConfigError(e.to_string()))?;
        let cfg = RunConfig {
            case,
            k0: p.k0.unwrap_or(DEFAULT_K0),
            k1: p.k1.unwrap_or(DEFAULT_K1),
            alpha: p.alpha.unwrap_or(2.0),
            beta: p.beta.unwrap_or(1.0),
            gamma: p.gamma.unwrap_or(3.0),
            g0,
            lambda_class,
            mode: p.mode.unwrap_or(1),
            solution,
            xmin: p.xmin.unwrap_or(-10.0),
            xmax: p.xmax.unwrap_or(10.0),
            npoints: p.npoints.unwrap_or(2001),
            out: p.out,
            tol: p.tol,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), ConfigError> {
        if self.npoints < 3 || self.npoints.is_multiple_of(2) {
            return Err(ConfigError(format!("npoints must be ≥ 3 and odd (got {})", self.npoints)));
        }
        if !(self.xmin < self.xmax) || !self.xmin.is_finite() || !self.xmax.is_finite() {
            return Err(ConfigError(format!(
                "need finite xmin < xmax (got {} and {})",
                self.xmin, self.xmax
            )));
        }
        for (name, v) in [("k0", self.k0), ("k1", self.k1)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(ConfigError(format!("{name} must be positive, got {v}")));
            }
        }
        if self.mode == 0 {
            return Err(ConfigError("mode must be ≥ 1".into()));
        }
        self.coeffs()?;
        for (name, v) in &self.tol {
            if !crate::cli::commands::TOLERANCES.iter().any(|(n, _)| n == name) {
                return Err(ConfigError(format!("unknown tolerance '{name}'")));
            }
            if !(*v > 0.0) {
                return Err(ConfigError(format!("tolerance {name} must be positive, got {v}")));
            }
        }
        Ok(())
    }

    pub fn grid(&self) -> UniformGrid {
        UniformGrid::new(self.xmin, self.xmax, self.npoints).expect("validated grid")
    }

    pub fn coeffs(&self) -> Result<PinneyCoefficients, ConfigError> {
        PinneyCoefficients::new(self.alpha, self.beta, self.gamma, self.g0)
            .map_err(|e| ConfigError(e.to_string()))
    }

    pub fn case_id(&self) -> Result<CaseId, ConfigError> {
        CaseId::new(self.case, self.k0, self.k1).map_err(|e| ConfigError(e.to_string()))
    }

    pub fn choice(&self) -> SolutionChoice {
        match self.solution {
            SolutionKind::Sd => SolutionChoice::SdSoliton(self.mode),
            SolutionKind::Kink => SolutionChoice::DarkKink,
        }
    }

    pub fn tolerance(&self, name: &str) -> f64 {
        self.tol.get(name).copied().unwrap_or_else(|| {
            crate::cli::commands::TOLERANCES
                .iter()
                .find(|(n, _)| *n == name)
                .map(|(_, v)| *v)
                .expect("known tolerance name")
        })
    }
}

/// Parses `name=value`.
pub fn parse_tol(s: &str) -> Result<(String, f64), String> {
    let (name, value) = s.split_once('=').ok_or_else(|| format!("expected name=value, got '{s}'"))?;
    let v: f64 = value.trim().parse().map_err(|_| format!("bad tolerance value '{value}'"))?;
    Ok((name.trim().to_string(), v))
}
