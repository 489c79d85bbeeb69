//! Reciprocal polynomials over Z and F_p: trace maps, reciprocal Euclidean
//! division, major residues, hyperoctahedral Galois tests and a seeded
//! Monte Carlo harness.

pub mod arith;
pub mod distributions;
pub mod error;
pub mod fppoly;
pub mod hyperoct;
pub mod intpoly;
pub mod limits;
mod linalg;
pub mod reciprocal;
pub mod residues;
pub mod verify;

pub use error::{Error, Result};
