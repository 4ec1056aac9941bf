//! Configuration loading and run orchestration for the `nonrecip` binary.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod error;

pub use commands::run;
pub use config::{Mode, RunConfig};
pub use error::CliError;
