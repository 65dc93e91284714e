//! Enumeration and certification engine for triangle-free intrinsically
//! knotted graphs with 22 edges.
//!
//! The crate builds every connected triangle-free graph with 22 edges and
//! minimum degree 3 in two degree regimes, discards those with a planar
//! two-vertex reduction (or a planar-piece two-cut), and certifies the
//! survivors by contracting one edge into the `K_7` family.

pub mod canon;
pub mod catalog;
pub mod enumeration;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod moves;
pub mod planarity;
pub mod prover;
pub mod reduction;

pub use canon::{are_isomorphic, canonical_labeling, canonicalize, CanonicalForm, Labeling};
pub use error::{Error, Result};
pub use graph::{SimpleGraph, MAX_ORDER};
