//! File formats, reports and commands behind the `addlin` binary.

pub mod cli;
pub mod crosscheck;
pub mod format;
pub mod report;
pub mod table;

pub use cli::{run, Cli, Command, OutputFormat, EXIT_ERROR};
