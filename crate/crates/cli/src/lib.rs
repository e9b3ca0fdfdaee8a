//! File formats, seeded suites and command implementations for the `fermion`
//! binary.

pub mod commands;
pub mod config;
pub mod csv;
pub mod random;
pub mod suites;

pub use commands::CliError;
pub use config::{ConfigError, ExperimentConfig, MetricSpec};
