// SPDX-License-Identifier: Apache-2.0

//! Chain-ladder and Bornhuetter-Ferguson reserving with closed-form impact
//! functions: first derivatives of reserves, Mack prediction errors and
//! lognormal reserve quantiles with respect to each incremental claim.

// `!(x > 0.0)` is used deliberately so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bornhuetter;
pub mod chainladder;
pub mod data;
pub mod error;
pub mod impact;
pub mod oracle;
pub mod quantile;
pub mod synthetic;
pub mod triangle;

pub use error::{Error, Result};
pub use triangle::{CellIndex, CumulativeTriangle, IncrementalTriangle, Violation};
