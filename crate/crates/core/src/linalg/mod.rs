//! Exact matrix algebra over the supported coefficient structures.

pub mod charpoly;
pub mod eigen;
pub mod lattice;
pub mod matrix;
pub mod normal_form;
pub mod poly;

pub use matrix::Matrix;
