//! Command-line surface for the sandpile engine: input formats, thin
//! command wrappers, and verification suites that emit JSON reports.

pub mod commands;
pub mod input;
pub mod report;
pub mod suites;

pub use report::{CliError, CliResult, Report, RunConfig};
pub use suites::{run_suite, Suite};
