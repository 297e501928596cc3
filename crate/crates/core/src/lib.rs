//! Exact computations on finite metric spaces.
//!
//! A finite metric space is a validated [`DistanceMatrix`]. On top of it the
//! crate provides
//!
//! * scalar invariants and pointwise predicates ([`predicates`],
//!   [`cayley_menger`]),
//! * the Gromov-Hausdorff distance, exact and bounded ([`gh`]),
//! * covering and packing numbers and box-dimension estimates ([`covering`]),
//! * explicit constructions and random instances ([`constructions`]),
//! * a plain-text matrix format ([`format`]).

pub mod cayley_menger;
pub mod constructions;
pub mod covering;
mod ddouble;
pub mod format;
pub mod gh;
pub mod metric;
pub mod predicates;

pub use metric::{validate, DistanceMatrix, MetricError, DEFAULT_TOL};
