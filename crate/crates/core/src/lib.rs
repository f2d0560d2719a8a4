//! Combinatorial engine for truncated simplicial sets and simplicial
//! groups: standard constructions, both reduced cone monads, the
//! W-construction in closed and recursive form, nerve diagonals, and
//! exact integer homology via Smith normal form.

pub mod cone;
pub mod error;
pub mod group;
pub mod kan;
pub mod lazy;
pub mod sgroup;
pub mod snf;
pub mod sset;

pub use error::{Error, Result};
