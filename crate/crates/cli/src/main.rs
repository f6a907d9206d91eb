//! `valleyscape`: reproducible valley-landscape experiments from the
//! command line. Every subcommand echoes its fully resolved run
//! configuration before any results, and identical configurations produce
//! byte-identical output files.

mod commands;
mod config;
mod csvin;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::ConfigArgs;

#[derive(Parser)]
#[command(
    name = "valleyscape",
    version,
    about = "Valley detection and location on continuous fitness landscapes",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct PointsArg {
    /// Valley points as semicolon-separated coordinate tuples,
    /// e.g. `0,1;0,2;0,3`
    #[arg(long, allow_hyphen_values = true)]
    points: String,
}

#[derive(Subcommand)]
enum Command {
    /// List the available function labels
    ListFunctions,

    /// Evaluate a function on a lattice and dump `x1,...,xd,f` CSV
    EvalGrid {
        #[command(flatten)]
        cfg: ConfigArgs,
        /// Lattice points per axis (both endpoints included)
        #[arg(long, default_value_t = 64)]
        res: usize,
        /// Output CSV path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Area-ratio scan: lower/higher ratio in delta-cubes around points,
    /// paired against the sphere benchmark
    Ratio {
        #[command(flatten)]
        cfg: ConfigArgs,
        /// Center point `x1,...,xd`; repeat for several points
        #[arg(long, required = true, allow_hyphen_values = true)]
        point: Vec<String>,
        /// Single delta override (otherwise the config delta list runs)
        #[arg(long, conflicts_with = "deltas")]
        delta: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Valley test at one point: is the area ratio strictly below the
    /// sphere's at the same point?
    ValleyTest {
        #[command(flatten)]
        cfg: ConfigArgs,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, conflicts_with = "deltas")]
        delta: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Narrowness beta: maximum area ratio over the supplied valley points
    Beta {
        #[command(flatten)]
        cfg: ConfigArgs,
        #[command(flatten)]
        points: PointsArg,
        #[arg(long, conflicts_with = "deltas")]
        delta: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Width alpha: largest delta candidate whose valley test passes at
    /// every point (candidates from --deltas)
    Alpha {
        #[command(flatten)]
        cfg: ConfigArgs,
        #[command(flatten)]
        points: PointsArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Angles between local gradients and a candidate valley direction
    Align {
        #[command(flatten)]
        cfg: ConfigArgs,
        #[command(flatten)]
        points: PointsArg,
        /// Direction vector `v1,...,vd` (normalized automatically)
        #[arg(long, allow_hyphen_values = true)]
        direction: String,
        /// Finite-difference step
        #[arg(long, default_value_t = 1e-5)]
        step: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// PCA projection: sample N points, keep the best M, and estimate the
    /// valley line from the first principal component
    Pca {
        #[command(flatten)]
        cfg: ConfigArgs,
        /// Output CSV (`role,x1,...,xd,f,y`); stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also render a scatter SVG of population/selected/projected
        #[arg(long)]
        svg: Option<PathBuf>,
    },

    /// Median eigenvalue-ratio table over several functions and seeds
    ComparePca {
        #[command(flatten)]
        cfg: ConfigArgs,
        /// Comma-separated labels; numeric tokens extend the previous
        /// label, so `elliptic:1,0.01,sphere` is two functions
        #[arg(long)]
        functions: String,
        /// Number of consecutive seeds starting at --seed
        #[arg(long, default_value_t = 20)]
        seeds: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Render CSV outputs as a standalone SVG
    Render {
        /// Grid CSV (from eval-grid) drawn as a quantile heatmap
        #[arg(long)]
        grid: Option<PathBuf>,
        /// PCA CSV (from pca) drawn as role-styled scatter layers
        #[arg(long)]
        pca: Option<PathBuf>,
        /// Heatmap quantile bins
        #[arg(long, default_value_t = 10)]
        levels: usize,
        #[arg(long, default_value = "valleyscape")]
        title: String,
        /// Output SVG path
        #[arg(long)]
        out: PathBuf,
    },
}

/// Errors carry the exit code policy: usage problems exit 2, runtime
/// failures exit 1.
pub enum CliError {
    Usage(String),
    Runtime(String),
}

impl From<valleyscape::Error> for CliError {
    fn from(e: valleyscape::Error) -> Self {
        use valleyscape::Error::*;
        match e {
            Config(_) | Dimension { .. } | Input(_) => CliError::Usage(e.to_string()),
            AmbiguousValley(_) | InvalidHomeomorphism(_) | Indeterminate(_) => {
                CliError::Runtime(e.to_string())
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
