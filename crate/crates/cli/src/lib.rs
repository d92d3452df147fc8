//! File formats, reporting and the command implementations behind the `qbag`
//! binary. Every command writes to a caller-supplied sink so it can be driven
//! in-process.

pub mod args;
pub mod commands;
pub mod error;
pub mod format;
pub mod report;

pub use args::Cli;
pub use commands::{BUDGET_VAR, run};
pub use error::CliError;
