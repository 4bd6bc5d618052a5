//! Argument parsing and dispatch.

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use zerorange_core::UnitSystem;

use crate::commands::{self, SolverFailure};
use crate::config::{Format, RunConfig};
use crate::output::{emit, Report};

#[derive(Debug, Parser)]
#[command(name = "zerorange", version, about = "Three-body bound states with zero-range interactions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Configuration file, or the name of a bundled one (he4_trimer, he4he4he3).
    #[arg(long)]
    pub config: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output path, `-` for standard output. Overrides `[output] path`.
    #[arg(long)]
    pub out: Option<String>,
    /// Overrides `[output] format`.
    #[arg(long, value_parser = ["csv", "json"])]
    pub format: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lowest angular eigenvalue and effective potential on the grid.
    Eigenvalue(Common),
    /// Bound-state energies.
    Solve(Common),
    /// Lowest two energies as the shape parameter varies.
    ScanP {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0.10)]
        p_min: f64,
        #[arg(long, default_value_t = 0.16)]
        p_max: f64,
        #[arg(long, default_value_t = 0.005)]
        p_step: f64,
    },
    /// Spectrum of the bare unitary potential between hard walls.
    ThomasDemo {
        /// Defaults to the Efimov constant.
        #[arg(long)]
        g: Option<f64>,
        #[arg(long, default_value_t = 1.0)]
        cutoff: f64,
        #[arg(long, default_value_t = 1e10)]
        outer: f64,
        /// Optional configuration supplying the units.
        #[arg(long)]
        config: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Radial wave function of one bound state.
    Wavefunction {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        state: usize,
    },
}

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_SOLVER: i32 = 2;

/// Exit code for a failed run.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    if err.downcast_ref::<zerorange_core::Error>().is_some() || err.downcast_ref::<SolverFailure>().is_some() {
        EXIT_SOLVER
    } else {
        EXIT_USAGE
    }
}

fn resolve(args: &OutputArgs, cfg: Option<&RunConfig>, default: Format) -> Result<(Format, String)> {
    let format = match &args.format {
        Some(f) => f.parse()?,
        None => cfg.and_then(|c| c.output.format).unwrap_or(default),
    };
    let path = args
        .out
        .clone()
        .or_else(|| cfg.and_then(|c| c.output.path.clone()))
        .unwrap_or_else(|| "-".to_string());
    Ok((format, path))
}

pub fn run(cli: Cli) -> Result<()> {
    let (report, format, path) = match cli.command {
        Command::Eigenvalue(common) => {
            let cfg = RunConfig::load(&common.config)?;
            let (format, path) = resolve(&common.output, Some(&cfg), Format::Csv)?;
            (Report::Table(commands::eigenvalue(&cfg)?), format, path)
        }
        Command::Solve(common) => {
            let cfg = RunConfig::load(&common.config)?;
            let (format, path) = resolve(&common.output, Some(&cfg), Format::Json)?;
            (Report::Solve(commands::solve(&cfg)?), format, path)
        }
        Command::ScanP { common, p_min, p_max, p_step } => {
            let cfg = RunConfig::load(&common.config)?;
            let (format, path) = resolve(&common.output, Some(&cfg), Format::Csv)?;
            (Report::Table(commands::scan_p(&cfg, p_min, p_max, p_step)?), format, path)
        }
        Command::ThomasDemo { g, cutoff, outer, config, output } => {
            let cfg = config.as_deref().map(RunConfig::load).transpose()?;
            let units = cfg.as_ref().map_or_else(UnitSystem::default, |c| c.system.units());
            let (format, path) = resolve(&output, cfg.as_ref(), Format::Csv)?;
            let sha = cfg.map(|c| c.sha256);
            (Report::Table(commands::thomas_demo(g, cutoff, outer, &units, sha)?), format, path)
        }
        Command::Wavefunction { common, state } => {
            let cfg = RunConfig::load(&common.config)?;
            let (format, path) = resolve(&common.output, Some(&cfg), Format::Csv)?;
            (Report::Table(commands::wavefunction(&cfg, state)?), format, path)
        }
    };
    emit(&report.render(format), &path)?;
    Ok(())
}
