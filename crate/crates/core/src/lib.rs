//! Exact computations with quivers with potentials: mutation, truncated
//! Jacobian algebras, representations and Coxeter-word quivers.

pub mod catalog;
pub mod coxeter;
pub mod error;
pub mod fixtures;
pub mod json;
pub mod jacobian;
pub mod linalg;
pub mod path_algebra;
pub mod qp;
pub mod quiver;
pub mod random;
pub mod rational;
pub mod representation;
pub mod selftest;

pub use error::{Error, Result};
