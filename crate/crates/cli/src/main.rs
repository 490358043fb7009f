//! `logflex`: tropical curves, twist analysis and numerical verification of
//! log-inflection points of patchworking families.

mod amoeba;
mod commands;
mod input;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};

use commands::{CurveArgs, Outcome, TwistArgs, VerifyArgs};

#[derive(Parser)]
#[command(name = "logflex", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Tropical polynomial text or family JSON document.
    #[arg(long)]
    input: PathBuf,
    /// Write a machine-readable JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Subdivision, tropical curve and parabolic locus.
    Curve {
        #[command(flatten)]
        common: Common,
        /// Disk radius around parabolic points in the figure.
        #[arg(long)]
        radius: Option<f64>,
        /// Write an SVG figure of the curve here.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Exit nonzero if the curve is not smooth.
        #[arg(long)]
        require_smooth: bool,
    },
    /// Per-edge twist classification, admissibility and sign synthesis.
    Twist {
        #[command(flatten)]
        common: Common,
        /// Twist set (JSON) to synthesize signs for.
        #[arg(long)]
        synthesize: Option<PathBuf>,
    },
    /// Computes log-inflection points along a t grid and compares them with
    /// the parabolic locus and the predicted twists.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Comma separated t values; `e<x>` means exp(x).
        #[arg(long, default_value = "e5,e10,e20", value_parser = input::parse_t_grid)]
        t_grid: Grid,
        /// Assignment radius around midpoints (default: a quarter of the
        /// shortest bounded edge, at most 1/4).
        #[arg(long)]
        radius: Option<f64>,
        /// Relative tolerance for realness and conjugate matching.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Write an SVG figure (amoeba, curve, disks, mapped points) here.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Amoeba samples per axis in the figure (0 disables).
        #[arg(long, default_value_t = 200)]
        amoeba_grid: usize,
    },
}

type Grid = Vec<f64>;

fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Curve { common, radius, svg, require_smooth } => {
            commands::curve(&CurveArgs { input: common.input, radius, svg, report: common.report, require_smooth })
        }
        Command::Twist { common, synthesize } => {
            commands::twist(&TwistArgs { input: common.input, synthesize, report: common.report })
        }
        Command::Verify { common, t_grid, radius, tol, svg, amoeba_grid } => commands::verify(&VerifyArgs {
            input: common.input,
            t_grid,
            radius,
            tol,
            svg,
            report: common.report,
            amoeba_grid,
        }),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(outcome) => {
            print!("{}", outcome.text);
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
