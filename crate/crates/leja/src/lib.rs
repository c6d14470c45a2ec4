//! Experiments, file formats, and the command-line front end for the
//! `leja_core` library.

pub mod commands;
pub mod config;
pub mod experiments;
pub mod report;
pub mod svg;

pub use config::{ExperimentConfig, Output};
pub use report::{emit_report, Cell, Format, Table};
