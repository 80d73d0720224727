//! Command implementations behind the `soa-topos` binary.
//!
//! Every command reads a bundle document, runs one computation and returns an output
//! document together with an exit code.

pub mod commands;
pub mod doc;
pub mod fixtures;

use serde_json::Value;
use thiserror::Error;

/// Stable exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    CheckFailed = 1,
    NonConvergence = 2,
    Malformed = 3,
    SizeExceeded = 4,
}

impl Exit {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("invalid: {0}")]
    Invalid(String),
    #[error("cannot read `{path}`: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] soa_topos::Error),
}

impl CliError {
    pub fn exit(&self) -> Exit {
        match self {
            CliError::Invalid(_) => Exit::CheckFailed,
            CliError::Core(soa_topos::Error::SizeExceeded { .. }) => Exit::SizeExceeded,
            CliError::Core(soa_topos::Error::NonConvergence { .. }) => Exit::NonConvergence,
            _ => Exit::Malformed,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// Indented JSON.
    #[default]
    Pretty,
    /// Compact JSON with sorted keys, byte-identical across runs.
    Canonical,
}

pub fn render(v: &Value, format: Format) -> String {
    let mut s = match format {
        Format::Pretty => serde_json::to_string_pretty(v),
        Format::Canonical => serde_json::to_string(v),
    }
    .expect("json values always serialize");
    s.push('\n');
    s
}

/// An output document and the exit code it implies.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub doc: Value,
    pub exit: Exit,
}

impl Outcome {
    pub fn ok(doc: Value) -> Outcome {
        Outcome { doc, exit: Exit::Ok }
    }
    pub fn checked(doc: Value, passed: bool) -> Outcome {
        Outcome { doc, exit: if passed { Exit::Ok } else { Exit::CheckFailed } }
    }
}
