//! Exact combinatorics of A-hypergeometric rank-jump families: lattice
//! indices, normalized volumes, affine semigroup holes, toric ideals, and
//! the family constructions with their claim verifier.

pub mod error;
pub mod family;
pub mod hypergeometric;
mod exact;
pub mod lattice;
mod lp;
pub mod matrix;
pub mod polytope;
pub mod semigroup;
pub mod toric;
pub mod verify;

pub use error::{Error, Result};
pub use matrix::{IntegerMatrix, ParameterVector};
