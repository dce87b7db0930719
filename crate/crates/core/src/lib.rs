//! Exact combinatorics of quiver semi-invariants.
//!
//! The crate computes Euler forms, generic ext and hom, canonical and
//! σ-stable decompositions, weight-space dimensions of semi-invariants, the
//! face lattice of the cones of effective weights, exceptional sequences and
//! the Littlewood-Richardson specialization for triple flag quivers.

pub mod cli;
pub mod config;
pub mod faces;
pub mod field;
pub mod homext;
pub mod horn;
pub(crate) mod linalg;
pub mod oracle;
pub(crate) mod search;
pub mod siweights;
pub mod stability;
pub mod error;
pub mod exceptional;
pub mod lr;
pub mod partition;
pub mod quiver;

pub use error::{Error, Result};
pub use partition::Partition;
pub use quiver::{double_quiver, DimVector, DoubledQuiver, Quiver, Weight};
