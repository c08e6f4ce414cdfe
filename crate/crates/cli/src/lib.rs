//! Command-line front end for `cotrend-core`: the replication pipeline and
//! single-analysis subcommands.

pub mod commands;
pub mod config;
pub mod data;
pub mod error;
pub mod format;
pub mod published;
pub mod replicate;
pub mod report;
pub mod svg;

pub use commands::{run, Cli};
pub use config::RunConfig;
pub use error::{CliError, CliResult};
