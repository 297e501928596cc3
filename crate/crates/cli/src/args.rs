use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Parser)]
#[command(name = "ghspace", version, about = "Exact computations on finite metric spaces")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the output to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Check the metric axioms.
    Validate { path: PathBuf },
    /// Gromov-Hausdorff distance between two spaces.
    Gh {
        x: PathBuf,
        y: PathBuf,
        #[arg(long, value_enum, default_value_t = GhMethod::Exact)]
        method: GhMethod,
        /// Search node budget for the exact method.
        #[arg(long, default_value_t = 50_000_000)]
        budget: u64,
    },
    /// Anisometry, collinear triples, isolation, components, Cayley-Menger.
    Props {
        path: PathBuf,
        /// Lower bound on the summands of a collinear triple.
        #[arg(long, default_value_t = 0.0)]
        epsilon: f64,
        /// Connectivity scales, comma separated.
        #[arg(long, value_delimiter = ',')]
        delta: Vec<f64>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Covering number N(X, eps) with a minimum set of centres.
    Cover {
        path: PathBuf,
        #[arg(long)]
        epsilon: f64,
    },
    /// Packing number M(X, eps) with a maximum packing.
    Pack {
        path: PathBuf,
        #[arg(long)]
        epsilon: f64,
    },
    /// Covering profile and box-dimension slopes.
    Dim(DimArgs),
    /// Build a space from a given one, or a Cantor approximation.
    Construct {
        #[command(subcommand)]
        kind: Construction,
    },
    /// Random distance matrix.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = SamplerKind::SafeBand)]
        sampler: SamplerKind,
        /// Base space of the perturbed sampler.
        #[arg(long, required_if_eq("sampler", "perturbed"))]
        base: Option<PathBuf>,
        /// Noise amplitude of the perturbed sampler.
        #[arg(long, required_if_eq("sampler", "perturbed"))]
        amplitude: Option<f64>,
        #[arg(long, default_value_t = 10_000)]
        max_attempts: usize,
    },
    /// Frequencies of generic properties over random samples.
    Experiment(ExperimentArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GhMethod {
    Exact,
    Bounds,
    Local,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SamplerKind {
    SafeBand,
    Perturbed,
}

#[derive(Debug, Clone, Args)]
pub struct DimArgs {
    pub path: PathBuf,
    /// Decreasing scales, e.g. `1,1/2,2^-2`.
    #[arg(long, conflicts_with = "auto_window")]
    pub scales: Option<String>,
    /// Geometric scales from the diameter down to the codiameter.
    #[arg(long)]
    pub auto_window: bool,
    /// Ratio between consecutive automatic scales.
    #[arg(long, default_value_t = 2.0)]
    pub ratio: f64,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Construction {
    /// Attach a segment of length eps, sampled at k+1 heights, to every point.
    Perfectify {
        path: PathBuf,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Add three tips forming a non-Euclidean 4-point gadget at one point.
    Spike {
        path: PathBuf,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, default_value_t = 0)]
        base: usize,
    },
    /// Attach a discretised Euclidean ball to every point.
    Product {
        path: PathBuf,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        epsilon: f64,
        #[arg(long)]
        resolution: usize,
        #[arg(long, default_value_t = ghspace_core::constructions::DEFAULT_MAX_POINTS)]
        max_points: usize,
    },
    /// Left endpoints of the middle-thirds construction at a given depth.
    Cantor {
        #[arg(long)]
        depth: u32,
    },
}

#[derive(Debug, Clone, Args)]
pub struct ExperimentArgs {
    #[arg(long, default_value_t = 6)]
    pub n: usize,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Equality tolerance for anisometry and collinearity.
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
}
