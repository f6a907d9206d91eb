//! Run-configuration resolution: defaults, then config file, then flags.

use std::path::PathBuf;

use clap::Args;

use valleyscape::landscape::Domain;
use valleyscape::registry::parse_landscape;
use valleyscape::sampling::{parse_deltas, PartialRunConfig};
use valleyscape::{Landscape64, Point64, RunConfig64};

use crate::CliError;

#[derive(Args)]
pub struct ConfigArgs {
    /// `key=value` config file; flags override file values
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// Function label, e.g. `sphere`, `elliptic:1,0.01`, `fz`,
    /// `rosenbrock`, `neg:<label>`, `homeo:rosen(<label>)`
    #[arg(long)]
    pub function: Option<String>,

    /// Domain box `lo:hi[,lo:hi...]`; the axis count fixes the dimension
    #[arg(long, allow_hyphen_values = true)]
    pub domain: Option<String>,

    /// Random seed [default: 0]
    #[arg(long)]
    pub seed: Option<u64>,

    /// Population size N [default: 100]
    #[arg(long)]
    pub n: Option<usize>,

    /// Selection size M [default: 10]
    #[arg(long)]
    pub m: Option<usize>,

    /// Monte-Carlo samples per ratio estimate [default: 100000]
    #[arg(long)]
    pub samples: Option<u64>,

    /// Delta candidates, comma separated ascending
    /// [default: 0.5,1,2,5,10]
    #[arg(long)]
    pub deltas: Option<String>,
}

pub struct Resolved {
    pub config: RunConfig64,
    /// Resolved landscape; `None` only when no function label was given
    /// and the command does not require one.
    pub landscape: Option<Landscape64>,
}

impl ConfigArgs {
    fn as_partial(&self) -> Result<PartialRunConfig<f64>, CliError> {
        let domain = match &self.domain {
            Some(s) => Some(s.parse::<Domain<f64>>()?),
            None => None,
        };
        let deltas = match &self.deltas {
            Some(s) => Some(parse_deltas::<f64>(s)?),
            None => None,
        };
        Ok(PartialRunConfig {
            function: self.function.clone(),
            domain,
            seed: self.seed,
            population: self.n,
            selection: self.m,
            samples: self.samples,
            deltas,
        })
    }

    /// Resolves flags over the config file over defaults. The domain
    /// defaults to `[-10,10]^d` with `d` taken from `dim_hint` (usually
    /// the dimension of point flags) or 2.
    pub fn resolve(
        &self,
        dim_hint: Option<usize>,
        needs_function: bool,
    ) -> Result<Resolved, CliError> {
        let from_file = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    CliError::Usage(format!("reading config {}: {e}", path.display()))
                })?;
                PartialRunConfig::parse(&text)?
            }
            None => PartialRunConfig::default(),
        };
        let merged = self.as_partial()?.over(from_file);
        let dim = merged.domain.as_ref().map(Domain::dim).or(dim_hint).unwrap_or(2);
        let domain = match merged.domain {
            Some(d) => d,
            None => Domain::cube(-10.0, 10.0, dim)?,
        };
        let config = RunConfig64 {
            function: merged.function.unwrap_or_default(),
            domain,
            seed: merged.seed.unwrap_or(0),
            population: merged.population.unwrap_or(100),
            selection: merged.selection.unwrap_or(10),
            samples: merged.samples.unwrap_or(100_000),
            deltas: merged.deltas.unwrap_or_else(|| vec![0.5, 1.0, 2.0, 5.0, 10.0]),
        };
        config.validate()?;
        let landscape = if config.function.is_empty() {
            if needs_function {
                return Err(CliError::Usage(
                    "a function label is required; pass --function or a config file".into(),
                ));
            }
            None
        } else {
            Some(parse_landscape::<f64>(&config.function, config.domain.dim())?)
        };
        Ok(Resolved { config, landscape })
    }
}

/// Prints the resolved configuration as `# key=value` lines, fixed order.
pub fn echo_config(config: &RunConfig64) {
    print!("# resolved run configuration\n");
    for line in config.to_text().lines() {
        println!("# {line}");
    }
}

/// Parses `x1,...,xd[;x1,...,xd...]` into points of equal dimension.
pub fn parse_points(s: &str) -> Result<Vec<Point64>, CliError> {
    let points = s
        .split(';')
        .map(|tok| tok.trim().parse::<Point64>())
        .collect::<Result<Vec<_>, _>>()?;
    if points.is_empty() {
        return Err(CliError::Usage("empty point list".into()));
    }
    let dim = points[0].dim();
    if points.iter().any(|p| p.dim() != dim) {
        return Err(CliError::Usage("points must share one dimension".into()));
    }
    Ok(points)
}

/// Writes to the file when a path is given, otherwise prints to stdout.
pub fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::Runtime(format!("writing {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}
