//! Lattice knots built from grid diagrams.
//!
//! The pipeline settles a grid diagram into the cubic lattice, folds it
//! twice to shorten it, certifies edge counts against closed-form bounds,
//! and rounds the doubled lattice knot into a unit-thickness smooth rope.
//! Alexander polynomials of projections track the knot type throughout.

pub mod alexander;
pub mod bounds;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod fold;
pub mod grid;
pub mod laurent;
pub mod lattice;
pub mod pipeline;
pub mod planar;
pub mod project;
pub mod rope;

pub use error::{Error, Result};
