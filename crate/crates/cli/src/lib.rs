//! Command-line front end for `stuffle-core`.

pub mod commands;
pub mod expr;
pub mod verify;

pub use commands::{CliError, CliResult, Output};
pub use expr::{parse_combination, Expr};
