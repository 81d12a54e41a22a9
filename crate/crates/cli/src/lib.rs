//! Command-line front end for koszulkit: reports, rendering and exit codes.

pub mod error;
pub mod render;
pub mod report;
pub mod run;

pub use error::CliError;
pub use report::AnalysisReport;
pub use run::Options;
