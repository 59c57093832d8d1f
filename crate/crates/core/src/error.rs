// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

use crate::triangle::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid triangle: {}", format_violations(.0))]
    InvalidTriangle(Vec<Violation>),

    #[error("column partial sum of development year {column} over the first {rows} rows is zero")]
    ZeroDenominator { column: usize, rows: usize },

    #[error("cumulative claim C[{row},{column}] is zero; the link ratio is undefined")]
    ZeroCumulative { row: usize, column: usize },

    #[error("cumulative claims decrease at C[{row},{column}]")]
    NegativeIncrement { row: usize, column: usize },

    #[error("{what} requires a triangle of dimension at least {min}, got {dim}")]
    UnsupportedDimension { what: &'static str, dim: usize, min: usize },

    #[error("{what} index {index} is outside 1..={max}")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        max: usize,
    },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("no prior ultimate supplied for accident year {0}")]
    MissingPrior(usize),

    #[error("prior ultimate for accident year {year} must be positive, got {value}")]
    NonPositivePrior { year: usize, value: f64 },

    #[error("probability {0} is outside the open interval (0, 1)")]
    InvalidProbability(f64),

    #[error("{what} must be strictly positive, got {value}")]
    NonPositive { what: &'static str, value: f64 },

    #[error("rmse impact is undefined when the mean squared error is zero")]
    UndefinedRmseImpact,

    #[error("{0} is not homogeneous of order one in the incremental claims; the Euler sum does not apply")]
    NotOrderOneHomogeneous(String),

    #[error("statistic evaluation failed at a perturbed triangle: {0}")]
    Evaluation(String),
}

fn format_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}
