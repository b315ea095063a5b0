//! Command-line front end: catalog dumps, curvature and invariant profiles,
//! constancy / smoothness / matching checks, constraint-system root
//! searches, and a reproduction pipeline that runs every check in sequence.
//!
//! Exit codes: 0 when the requested check comes back positive (constant
//! components, smooth or orbifold closure, catalog match, roots as
//! expected), 1 when it comes back negative, 2 on usage or input errors.

pub mod commands;
pub mod config;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use curvhom_core::defaults::{
    CH_SAMPLES, CH_TOL, GRID_PER_AXIS, MATCH_TOL, SMOOTH_ORDER, SWEEP_DRAWS,
};
use curvhom_core::{Error, Result};

pub const EXIT_POSITIVE: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser)]
#[command(
    name = "curvhom",
    version,
    about = "Invariant checks for cohomogeneity-one metrics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Print the built-in metric catalog as JSON
    Catalog {
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sample the frame curvature components along the normal geodesic
    Curvature {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        scale: ScaleArg,
        /// Sample points across the window
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Decide whether the curvature components are constant along the geodesic
    CheckCh {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        scale: ScaleArg,
        /// Sample points across the window
        #[arg(long, default_value_t = CH_SAMPLES)]
        samples: usize,
        /// Relative constancy tolerance
        #[arg(long, default_value_t = CH_TOL)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check smooth closure over the collapsing orbits
    CheckSmooth {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        scale: ScaleArg,
        /// Restrict the check to one end
        #[arg(long, value_enum)]
        end: Option<EndArg>,
        /// Taylor order the closure conditions are tested through
        #[arg(long, default_value_t = SMOOTH_ORDER)]
        order: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Match a metric against the catalog up to scaling and frame relabeling
    Classify {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        scale: ScaleArg,
        /// Componentwise match tolerance
        #[arg(long, default_value_t = MATCH_TOL)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Search a constraint system for roots in a box
    Solve {
        /// Constraint system id
        #[arg(long)]
        system: String,
        /// Per-parameter ranges `lo:hi,lo:hi,...` overriding the default box
        #[arg(long, value_name = "RANGES")]
        r#box: Option<String>,
        /// Grid seeds per axis
        #[arg(long, default_value_t = GRID_PER_AXIS)]
        samples: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sample curvature-derivative invariants and Ricci eigenvalues
    Invariants {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        scale: ScaleArg,
        /// Sample points across the window
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run every check in sequence and emit a pass/fail table
    Reproduce {
        /// Random draw count for the exponential sweep
        #[arg(long, default_value_t = SWEEP_DRAWS)]
        samples: usize,
        /// Seed for the exponential sweep
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

/// Metric source: exactly one of a catalog id or a config file.
#[derive(Args)]
#[group(required = true, multiple = false)]
pub struct InputArgs {
    /// Catalog id (see `curvhom catalog`)
    #[arg(long)]
    pub catalog: Option<String>,
    /// Path to a JSON metric config
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Args)]
pub struct ScaleArg {
    /// Homothety factor; for one-parameter catalog families, the family
    /// parameter
    #[arg(long)]
    pub scale: Option<f64>,
}

#[derive(Args)]
pub struct OutputArgs {
    /// Report format (profiles default to csv, reports to json)
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write the report to a file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EndArg {
    Left,
    Right,
}

/// A finished command: report text plus the exit code its verdict earns.
pub struct Outcome {
    pub text: String,
    pub exit: i32,
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok((outcome, out)) => match deliver(&outcome.text, out.as_deref()) {
            Ok(()) => outcome.exit,
            Err(e) => usage(&e),
        },
        Err(e) => usage(&e),
    }
}

fn execute(cmd: Command) -> Result<(Outcome, Option<PathBuf>)> {
    match cmd {
        Command::Catalog { output } => {
            report_only(&output)?;
            Ok((commands::catalog()?, output.out))
        }
        Command::Curvature {
            input,
            scale,
            samples,
            output,
        } => {
            let fmt = profile_format(&output);
            Ok((
                commands::curvature(&input, scale.scale, samples, fmt)?,
                output.out,
            ))
        }
        Command::CheckCh {
            input,
            scale,
            samples,
            tol,
            output,
        } => {
            report_only(&output)?;
            Ok((
                commands::check_ch(&input, scale.scale, samples, tol)?,
                output.out,
            ))
        }
        Command::CheckSmooth {
            input,
            scale,
            end,
            order,
            output,
        } => {
            report_only(&output)?;
            Ok((
                commands::check_smooth(&input, scale.scale, end, order)?,
                output.out,
            ))
        }
        Command::Classify {
            input,
            scale,
            tol,
            output,
        } => {
            report_only(&output)?;
            Ok((commands::classify(&input, scale.scale, tol)?, output.out))
        }
        Command::Solve {
            system,
            r#box,
            samples,
            output,
        } => {
            report_only(&output)?;
            Ok((
                commands::solve(&system, r#box.as_deref(), samples)?,
                output.out,
            ))
        }
        Command::Invariants {
            input,
            scale,
            samples,
            output,
        } => {
            let fmt = profile_format(&output);
            Ok((
                commands::invariants(&input, scale.scale, samples, fmt)?,
                output.out,
            ))
        }
        Command::Reproduce {
            samples,
            seed,
            output,
        } => {
            report_only(&output)?;
            Ok((commands::reproduce(samples, seed)?, output.out))
        }
    }
}

fn usage(e: &Error) -> i32 {
    eprintln!("error: {e}");
    EXIT_USAGE
}

fn profile_format(output: &OutputArgs) -> Format {
    output.format.unwrap_or(Format::Csv)
}

/// Non-profile commands emit nested reports; csv does not fit them.
fn report_only(output: &OutputArgs) -> Result<()> {
    if output.format == Some(Format::Csv) {
        return Err(Error::Config(
            "csv is only available for sampled profiles; this command reports json".to_string(),
        ));
    }
    Ok(())
}

fn deliver(text: &str, out: Option<&std::path::Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
