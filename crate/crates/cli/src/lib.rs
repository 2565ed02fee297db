//! Library side of the `qbg` command-line tool.
//!
//! Every subcommand is a function from a parsed [`GameSpec`] (plus options)
//! to the text it prints, so the binary only handles arguments, files and
//! exit codes.

pub mod commands;
pub mod number;
pub mod reproduce;
pub mod spec_file;
pub mod sweep;

pub use commands::{CliError, Options};
pub use spec_file::{parse_spec, render, GameSpec, SpecError};

/// Exit status for a reproduction mismatch.
pub const EXIT_MISMATCH: i32 = 1;
/// Exit status for usage and spec errors.
pub const EXIT_USAGE: i32 = 2;
