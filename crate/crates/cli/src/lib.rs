// SPDX-License-Identifier: Apache-2.0

//! Command-line front end: triangle ingestion, impact computation,
//! finite-difference verification and CSV/JSON/SVG emission.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod heatmap;
pub mod ingest;
pub mod output;
pub mod run;

use reserving_core::{Error, Violation};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid triangle: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Validation(Vec<Violation>),

    #[error(transparent)]
    Core(#[from] Error),

    #[error("{path}: {message}")]
    Io { path: String, message: String },

    #[error("verification of {subject} failed: max relative error {max_rel_error:.3e} exceeds {tolerance:.1e}")]
    Verification {
        subject: String,
        max_rel_error: f64,
        tolerance: f64,
    },
}

impl CliError {
    /// 1 usage, 2 data or IO, 3 verification.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Parse { .. } | CliError::Validation(_) | CliError::Core(_) | CliError::Io { .. } => 2,
            CliError::Verification { .. } => 3,
        }
    }
}
