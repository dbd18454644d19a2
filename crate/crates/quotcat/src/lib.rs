//! Scenario files, the task runner, reports, and the command line front end
//! for `quotcat-core`.

pub mod build;
pub mod dsl;
pub mod error;
pub mod fixtures;
pub mod report;
pub mod runner;
pub mod schema;

pub use error::{CliError, Result};
