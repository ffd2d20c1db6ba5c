//! Configuration parsing and output writers.

pub mod config;
pub mod csv;
pub mod vtk;

pub use config::{CaseChoice, DetectorMode, OutputFormat, RunConfig, Scheme};
