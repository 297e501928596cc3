//! Gromov-Hausdorff distance between finite metric spaces.
//!
//! `d_GH(X, Y)` is half the smallest distortion of a correspondence between
//! `X` and `Y`. [`gh_exact`] finds it by branch and bound; [`gh_lower_bounds`],
//! [`gh_upper_permutation`] and [`gh_local`] give cheaper bounds and the exact
//! value in the regime where the matrix distance is locally isometric.

mod bounds;
mod correspondence;
mod exact;
mod glue;
mod hausdorff;

use serde::Serialize;
use thiserror::Error;

use crate::metric::MetricError;

pub use bounds::{
    gh_local, gh_lower_bounds, gh_upper_permutation, lower_bound_terms, LocalOutcome,
    LowerBoundTerms, PermutationBound,
};
pub use correspondence::{distortion, Correspondence};
pub use exact::{gh_exact, Budget, DEFAULT_BUDGET};
pub use glue::{glue, glue_with_tol, Gluing};
pub use hausdorff::hausdorff;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GhError {
    #[error("{side:?} index {index} out of range for {len} points")]
    IndexOutOfRange { side: Side, index: usize, len: usize },
    #[error("{side:?} point {index} is not related to any point")]
    NotSurjective { side: Side, index: usize },
    #[error("node budget exhausted; d_GH lies in [{}, {}]", .0.lower, .0.upper)]
    BudgetExceeded(Box<GhResult>),
    #[error("spaces have {left} and {right} points; equal cardinality required")]
    CardinalityMismatch { left: usize, right: usize },
    #[error("subset is empty")]
    EmptySubset,
    #[error("part {part} does not embed isometrically: pair ({y1},{y2})")]
    NotIsometricEmbedding { part: usize, y1: usize, y2: usize },
    #[error("part {part}: embedding has {len} entries, base space has {expected}")]
    EmbeddingLength {
        part: usize,
        len: usize,
        expected: usize,
    },
    #[error(transparent)]
    Metric(#[from] MetricError),
}

/// Exact value or certified interval for `d_GH`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GhResult {
    pub lower: f64,
    pub upper: f64,
    /// A correspondence with `distortion = 2 * upper`.
    pub witness: Correspondence,
    pub exact: bool,
    /// Search nodes expanded.
    pub nodes: u64,
}
