//! ancf-bridge: convert between Bezier / B-spline surface files and ANCF
//! element files, verify that two files describe the same surface, reduce
//! elements to their optimal Bezier degrees, export sampled meshes, and
//! benchmark the two B-spline conversion paths.
//!
//! Exit codes: 0 success, 1 verification or equivalence failure, 2 input
//! error, 3 infeasible degree request.

mod commands;
mod sampler;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

pub const DEFAULT_GRID: usize = 21;
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Parser)]
#[command(name = "ancf-bridge", version, about = "Surface conversion between Bezier/B-spline patches and ANCF elements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TargetKind {
    Ancf,
    Bezier,
    Bspline,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SampleFormat {
    Obj,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Convert a surface file to another representation
    Convert {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        target: TargetKind,
        /// Bezier degrees (u v) for ANCF -> Bezier conversion
        #[arg(long, num_args = 2, value_names = ["M", "N"])]
        degrees: Option<Vec<usize>>,
        /// Element length in the u direction
        #[arg(long)]
        a: Option<f64>,
        /// Element length in the v direction
        #[arg(long)]
        b: Option<f64>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Sample two surface files on a grid and compare
    Verify {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Find the optimal Bezier degrees of an element and write the reduction
    Reduce {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Export a sampled mesh (OBJ) or point table (CSV)
    Sample {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
        #[arg(long, value_enum)]
        format: SampleFormat,
        #[arg(long)]
        out: PathBuf,
    },
    /// Time the direct span conversion against decompose-then-convert
    Bench {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 100)]
        reps: usize,
    },
}

/// Tolerance resolution order: flag, then ANCF_BRIDGE_TOL, then the default.
pub fn resolve_tol(flag: Option<f64>) -> f64 {
    flag.or_else(|| std::env::var("ANCF_BRIDGE_TOL").ok().and_then(|s| s.parse().ok()))
        .unwrap_or(DEFAULT_TOL)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Convert { input, target, degrees, a, b, tol, out } => {
            commands::convert(&input, target, degrees.as_deref(), a, b, resolve_tol(tol), &out)
        }
        Command::Verify { left, right, grid, tol } => {
            commands::verify(&left, &right, grid.unwrap_or(DEFAULT_GRID), resolve_tol(tol))
        }
        Command::Reduce { input, tol, out } => commands::reduce(&input, resolve_tol(tol), &out),
        Command::Sample { input, grid, format, out } => {
            commands::sample(&input, grid, format, &out)
        }
        Command::Bench { input, reps } => commands::bench(&input, reps),
    };
    match code {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(commands::exit_code_for(&err))
        }
    }
}
