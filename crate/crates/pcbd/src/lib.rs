//! Optimal paired-comparison designs in blocks: Hadamard generators, the
//! paired-comparison difference matrix, information matrices, the 27
//! construction methods, optimality certificates with a brute-force oracle,
//! and a Monte Carlo estimation harness.

pub mod cli;
pub mod constructions;
pub mod design_core;
pub mod estimation;
pub mod error;
pub mod hadamard;
pub mod info_matrix;
pub mod optimality;
pub mod rational;

pub use error::{Error, Result};
