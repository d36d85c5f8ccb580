//! File formats and command implementations for the `mfac` command line
//! tool: JSON experiment configs with typed `--set` overrides, CSV trace
//! export with a JSON summary sidecar, stability reports, weight sweeps,
//! and the steady-error table.

pub mod commands;
pub mod config;
pub mod fmtnum;
pub mod trace_io;

use std::fmt;

/// Errors mapped onto process exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Config file unreadable or not valid JSON / schema (exit 2).
    Config(String),
    /// Runtime failure such as an I/O error (exit 1).
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Runtime(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "configuration error: {msg}"),
            CliError::Runtime(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<mfac_core::Error> for CliError {
    fn from(e: mfac_core::Error) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}
