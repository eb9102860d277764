//! The `forge` command line.

pub mod commands;
pub mod config;
pub mod output;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use commands::CommandError;
use config::{parse_tol, PartialConfig, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "forge", version, about = "Exact INLSE solitons from SUSY partner potentials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Partner potential of the free particle, as CSV `x,V0,V1,alpha1`.
    Partner(Flags),
    /// Soliton profile, as CSV `x,V,g,phi,X` with a JSON sidecar.
    Soliton(Flags),
    /// Run every residual check for a case and print the table.
    Verify(Flags),
    /// Dataset for a figure panel (1a, 1b, …, 4b).
    Figure {
        id: String,
        #[command(flatten)]
        flags: Flags,
    },
}

#[derive(Args, Debug, Default)]
struct Flags {
    /// 1, 2a, 2b or 2c
    #[arg(long)]
    case: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    k0: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    k1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    beta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    gamma: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    g0: Option<f64>,
    /// Seed energy class for `partner`: zero, negative or positive
    #[arg(long)]
    lambda_class: Option<String>,
    #[arg(long)]
    mode: Option<u32>,
    /// sd or kink
    #[arg(long)]
    solution: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    xmin: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    xmax: Option<f64>,
    #[arg(long)]
    npoints: Option<usize>,
    /// Output file; stdout when omitted (no sidecar then)
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON file with any of the settings above; flags take precedence
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override a verification tolerance, e.g. `--tol inlse=1e-6`
    #[arg(long, value_parser = parse_tol)]
    tol: Vec<(String, f64)>,
}

impl Flags {
    fn into_config(self) -> Result<RunConfig, CommandError> {
        let file = match &self.config {
            Some(p) => PartialConfig::from_file(p)?,
            None => PartialConfig::default(),
        };
        let flags = PartialConfig {
            case: self.case,
            k0: self.k0,
            k1: self.k1,
            alpha: self.alpha,
            beta: self.beta,
            gamma: self.gamma,
            g0: self.g0,
            lambda_class: self.lambda_class,
            mode: self.mode,
            solution: self.solution,
            xmin: self.xmin,
            xmax: self.xmax,
            npoints: self.npoints,
            out: self.out,
            tol: self.tol.into_iter().collect(),
        };
        Ok(RunConfig::resolve(file.overlay(flags))?)
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Partner(f) => f.into_config().and_then(|c| commands::cmd_partner(&c)),
        Command::Soliton(f) => f.into_config().and_then(|c| commands::cmd_soliton(&c)),
        Command::Verify(f) => f.into_config().and_then(|c| commands::cmd_verify(&c)),
        Command::Figure { id, flags } => flags.into_config().and_then(|c| commands::cmd_figure(&id, &c)),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("forge: {}", e.message());
            e.exit_code()
        }
    }
}
