//! Command-line front end: argument definitions, per-command reports and the
//! dispatcher used by the `ghspace` binary.
//!
//! Exit codes: 0 on success (including an interval from an exhausted GH
//! budget), 1 when an input or parameter violates a mathematical
//! precondition, 2 on I/O, parse or usage errors.

pub mod args;
pub mod commands;

use std::path::{Path, PathBuf};

use ghspace_core::constructions::{ConstructionError, Sampler};
use ghspace_core::covering::CoverError;
use ghspace_core::format::{parse_matrix, parse_scales, MatrixFileError, ParseError, ScalesError};
use ghspace_core::gh::GhError;
use ghspace_core::predicates::PropertyOptions;
use ghspace_core::{DistanceMatrix, MetricError};
use thiserror::Error;

use args::{Cli, Command, Construction, SamplerKind};
use commands::Report;

pub const THREADS_ENV: &str = "GHSPACE_THREADS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Parse { path: PathBuf, source: ParseError },
    #[error("{}: {source}", path.display())]
    InvalidMatrix { path: PathBuf, source: MetricError },
    #[error("--scales: {0}")]
    Scales(#[from] ScalesError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Gh(#[from] GhError),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Parse { .. } | CliError::Scales(_) | CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

/// Rendered output of a command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub body: String,
    pub code: i32,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads and validates a matrix file.
pub fn load(path: &Path) -> Result<DistanceMatrix, CliError> {
    parse_matrix(&read(path)?).map_err(|e| match e {
        MatrixFileError::Parse(source) => CliError::Parse {
            path: path.to_path_buf(),
            source,
        },
        MatrixFileError::Invalid(source) => CliError::InvalidMatrix {
            path: path.to_path_buf(),
            source,
        },
    })
}

fn render<R: Report>(report: &R, json: bool) -> Output {
    let body = if json {
        let mut s = serde_json::to_string_pretty(report).expect("reports serialise");
        s.push('\n');
        s
    } else {
        report.text()
    };
    Output {
        body,
        code: report.code(),
    }
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let json = cli.json;
    Ok(match &cli.command {
        Command::Validate { path } => {
            let report = commands::cmd_validate(&read(path)?).map_err(|source| CliError::Parse {
                path: path.clone(),
                source,
            })?;
            render(&report, json)
        }
        Command::Gh {
            x,
            y,
            method,
            budget,
        } => render(&commands::cmd_gh(&load(x)?, &load(y)?, *method, *budget)?, json),
        Command::Props {
            path,
            epsilon,
            delta,
            tol,
        } => {
            let options = PropertyOptions {
                epsilon: *epsilon,
                deltas: delta.clone(),
                tol: *tol,
            };
            render(&commands::cmd_props(&load(path)?, &options), json)
        }
        Command::Cover { path, epsilon } => render(&commands::cmd_cover(&load(path)?, *epsilon)?, json),
        Command::Pack { path, epsilon } => render(&commands::cmd_pack(&load(path)?, *epsilon)?, json),
        Command::Dim(a) => {
            let spec = match &a.scales {
                Some(text) => commands::ScaleSpec::List(parse_scales(text)?),
                None => commands::ScaleSpec::Auto { ratio: a.ratio },
            };
            render(&commands::cmd_dim(&load(&a.path)?, &spec)?, json)
        }
        Command::Construct { kind } => {
            let report = match kind {
                Construction::Perfectify { path, epsilon, k } => {
                    commands::cmd_perfectify(&load(path)?, *epsilon, *k)?
                }
                Construction::Spike {
                    path,
                    epsilon,
                    base,
                } => commands::cmd_spike(&load(path)?, *base, *epsilon)?,
                Construction::Product {
                    path,
                    dim,
                    epsilon,
                    resolution,
                    max_points,
                } => commands::cmd_product(&load(path)?, *dim, *epsilon, *resolution, *max_points)?,
                Construction::Cantor { depth } => commands::cmd_cantor(*depth)?,
            };
            render(&report, json)
        }
        Command::Random {
            n,
            seed,
            sampler,
            base,
            amplitude,
            max_attempts,
        } => {
            let sampler = match sampler {
                SamplerKind::SafeBand => Sampler::SafeBand,
                SamplerKind::Perturbed => Sampler::Perturbed {
                    base: load(base.as_deref().ok_or_else(|| CliError::Usage("--base is required".into()))?)?,
                    amplitude: amplitude.ok_or_else(|| CliError::Usage("--amplitude is required".into()))?,
                    max_attempts: *max_attempts,
                },
            };
            render(&commands::cmd_random(*n, *seed, &sampler)?, json)
        }
        Command::Experiment(a) => render(
            &commands::cmd_experiment(a.n, a.samples, a.seed, a.tol)?,
            json,
        ),
    })
}

/// Caps the global worker pool at `GHSPACE_THREADS` when set.
pub fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(format!("{THREADS_ENV}: {e}")))
}
