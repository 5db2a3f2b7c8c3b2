//! Exact computations comparing two algebraic models of the based loop
//! space of a 0-reduced simplicial set: the extended cobar construction on
//! its normalized chains and the normalized chains on its Kan loop group.

pub mod chain;
pub mod cobar;
pub mod error;
pub mod format;
pub mod homology;
pub mod homotopy;
pub mod loop_group;
pub mod models;
pub mod retraction;
pub mod operator;
pub mod print;
pub mod sset;
pub mod szczarba;
pub mod verify;

pub use error::{Error, Result};
pub use operator::SimplicialOperator;
pub use sset::{Simplex, SimplexId, SimplicialMap, SimplicialSet, SimplicialSetBuilder};
