//! Exact detection and certification of quasi-Galois points of smooth plane
//! curves over cyclotomic fields.
//!
//! A point `P` of the plane is quasi-Galois for a curve `C` when some nontrivial
//! automorphism of `C` preserves every line through `P`; such automorphisms are
//! homologies centred at `P`, and they form the cyclic group `G[P]`.

pub mod catalog;
pub mod error;
pub mod geometry;
pub mod groups;
pub mod numfield;
pub mod oracle;
pub mod quasigalois;

pub use error::{Error, Result};
