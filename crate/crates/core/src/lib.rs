//! Local-global deciders for triangularization and diagonalization of
//! integral matrices, with counterexample generators and finite-field audits
//! of triangularization varieties.

pub mod arith;
pub mod cli;
pub mod counterexamples;
pub mod deciders;
pub mod error;
pub mod io;
pub mod linalg;
pub mod number_ring;
pub mod order;
pub mod ring;
pub mod strata;

pub use error::{Error, Result};
