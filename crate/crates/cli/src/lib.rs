//! Command-line workbench over the `sat_pursuit` analysis and simulator:
//! scenario files in, reports, CSV tables and SVG figures out.

pub mod cli;
pub mod commands;
pub mod error;
pub mod report;
pub mod scenario;
pub mod svg;

pub use cli::{run, Cli, Command};
pub use error::CliError;
pub use report::AnalysisReport;
pub use scenario::{Scenario, ScenarioFile};
