//! Exact computations with Z-graded rings: Gröbner bases, local cohomology,
//! weight truncations and semi-orthogonal decompositions.

pub mod duality;
pub mod error;
pub mod groebner;
pub mod grmodule;
pub mod komplex;
pub mod library;
pub mod linalg;
pub mod localcoh;
pub mod ringcore;
pub mod staircase;
pub mod weighttrunc;

pub use error::{Error, Result};
