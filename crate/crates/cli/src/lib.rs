//! Configuration, initial data and subcommands behind the `aniso-mhd` binary.

pub mod commands;
pub mod config;
pub mod error;
pub mod init;
pub mod summary;

pub use config::{InitKind, RunConfig};
pub use error::{CliError, Result};
