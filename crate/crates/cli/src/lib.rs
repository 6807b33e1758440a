//! Scenario runner for limit studies of Darboux and Calapso transforms of a
//! polarized half ellipse: TOML configuration in, CSV tracks, an SVG plot
//! and a JSON verdict report out.

pub mod config;
pub mod error;
pub mod report;
pub mod run;
pub mod svg;

pub use config::Scenario;
pub use error::CliError;
pub use run::{run_loaded, run_scenario, RunOptions, RunSummary};
