//! Batch front end: experiment configs, built-in fixture checks and
//! corpus sweeps, reported as versioned line records.

pub mod commands;
pub mod config;
pub mod report;

pub use commands::{paper_examples, run, theorems};
pub use config::{Bounds, ExperimentConfig};
pub use report::{Format, Report};
