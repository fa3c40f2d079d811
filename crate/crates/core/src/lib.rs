//! Exact lattice-point counting in vector-dilated polytopes
//! `P_A(b) = {x : A x <= b}` and reconstruction of their rational Ehrhart
//! quasi-polynomials.

pub mod chambers;
pub mod cli;
pub mod cone;
pub mod ehrhart;
pub mod error;
pub mod feasibility;
pub mod io;
pub mod lattice;
pub mod polytope;
pub mod poly;
pub mod ratmath;
pub mod verify;

pub use error::{Error, Result};

#[cfg(test)]
pub(crate) mod testutil;
