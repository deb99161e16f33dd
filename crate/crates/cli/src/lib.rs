//! Command-line front end: argument parsing, output formats, the coefficient
//! cache, and the verification-suite runner.

pub mod args;
pub mod cache;
pub mod commands;
pub mod error;
pub mod format;
pub mod verify;

pub use args::Cli;
pub use commands::{run, Outcome};
pub use error::CliError;
