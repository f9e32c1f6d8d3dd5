//! Twisted Novikov homology and twisted Alexander invariants of knots and
//! links, computed exactly from group presentations and finite-image
//! representations.

pub mod alexander;
pub mod bounds;
mod error;
pub mod fixtures;
pub mod foxcalc;
pub mod laurent;
pub mod novikov;
pub mod presentation;
pub mod reps;

pub use error::{Error, Result};
pub use laurent::{LaurentPoly, PolyMatrix};
pub use presentation::{BraidWord, FreeWord, GeneratorId, Presentation};
