//! Monte Carlo experiments on the limiting homotopy measure of random
//! geometric complexes, with JSON/CSV reporting and a command-line driver.
//!
//! The geometric and topological kernels live in [`randtopo_core`]; this
//! crate adds parallel trial execution, the experiment drivers and IO.

pub mod cli;
mod error;
pub mod experiments;
mod parallel;
pub mod report;
pub mod stats;

pub use error::{Error, Result};
pub use parallel::run_trials;
