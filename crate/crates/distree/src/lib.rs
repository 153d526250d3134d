//! Command-line tool and text formats on top of `distree-core`.
//!
//! Trees are written as JSON Lines, histograms as CSV and coefficient
//! sequences as plain text; see [`format`]. The command layer lives in
//! [`commands`] so that it can be driven in-process.

pub mod commands;
pub mod error;
pub mod format;
pub mod report;

pub use error::{CliError, CliResult, EXIT_FAILURE, EXIT_GUARD, EXIT_USAGE};
