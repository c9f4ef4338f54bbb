//! Matroids and Δ-matroids on small ground sets.
//!
//! - [`sets`]: ground sets, bit-mask subsets and canonical set families.
//! - [`matroid`]: basis-exchange certification, rank, circuits, duals, minors, quotients.
//! - [`delta`]: symmetric-exchange certification, upper and lower matroids,
//!   duals and minors, the sandwich construction and maximal feasible families.
//! - [`graph`]: cycle and 2D rigidity matroids of multigraphs, the rigidity
//!   Δ-matroid and cones.
//! - [`search`]: exhaustive enumeration, theorem checks and counterexample search.
//! - [`io`]: JSON file formats.

pub mod axiom;
pub mod delta;
pub mod error;
pub mod graph;
pub mod io;
pub mod matroid;
pub mod parallel;
pub mod search;
pub mod sets;

pub use axiom::{Axiom, ExchangeViolation};
pub use delta::{DeltaMatroid, PairabilityReport};
pub use error::{Error, Result};
pub use graph::Multigraph;
pub use matroid::Matroid;
pub use sets::{GroundSet, SetFamily, Subset};
