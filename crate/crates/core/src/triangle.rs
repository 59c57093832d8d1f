// SPDX-License-Identifier: Apache-2.0

//! Run-off triangles.
//!
//! Accident years `i` and development years `j` are 1-based on the public
//! surface. A cell is observed iff `i + j <= I + 1`, where `I` is the
//! triangle dimension. Storage is row-major with row `i` holding `I - i + 1`
//! values.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Position of a cell: accident year `i`, development year `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CellIndex {
    pub i: usize,
    pub j: usize,
}

impl CellIndex {
    pub const fn new(i: usize, j: usize) -> Self {
        Self { i, j }
    }

    pub fn is_observed(self, dim: usize) -> bool {
        self.i >= 1 && self.j >= 1 && self.i + self.j <= dim + 1
    }

    /// True for cells on the most recent calendar diagonal.
    pub fn is_last_diagonal(self, dim: usize) -> bool {
        self.i >= 1 && self.j >= 1 && self.i + self.j == dim + 1
    }
}

impl fmt::Display for CellIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// Iterates the observed region row by row.
pub fn observed_cells(dim: usize) -> impl Iterator<Item = CellIndex> {
    (1..=dim).flat_map(move |i| (1..=dim + 1 - i).map(move |j| CellIndex::new(i, j)))
}

/// A single problem found by [`validate_rows`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Violation {
    Negative {
        cell: CellIndex,
        value: f64,
    },
    NonFinite {
        cell: CellIndex,
    },
    MissingCell {
        cell: CellIndex,
    },
    ExtraCell {
        cell: CellIndex,
    },
    /// `sum_{q=1}^{rows} C[q, column]` is zero, so `f_column` is undefined.
    ZeroColumnSum {
        column: usize,
        rows: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Negative { cell, value } => {
                write!(f, "negative incremental claim {value} at {cell}")
            }
            Violation::NonFinite { cell } => write!(f, "non-finite value at {cell}"),
            Violation::MissingCell { cell } => write!(f, "missing observed cell {cell}"),
            Violation::ExtraCell { cell } => write!(f, "unexpected future cell {cell}"),
            Violation::ZeroColumnSum { column, rows } => {
                write!(f, "cumulative column {column} sums to zero over rows 1..={rows}")
            }
        }
    }
}

/// Full diagnostics for a candidate incremental triangle given as rows.
///
/// Reports shape problems (missing observed cells, cells in the future
/// region), negative or non-finite increments, and zero development-factor
/// denominators computed on the cumulated rows.
pub fn validate_rows(dim: usize, rows: &[Vec<f64>]) -> Vec<Violation> {
    let mut out = Vec::new();
    for (r, row) in rows.iter().enumerate() {
        let i = r + 1;
        let expected = if i <= dim { dim + 1 - i } else { 0 };
        for (c, &v) in row.iter().enumerate() {
            let cell = CellIndex::new(i, c + 1);
            if c >= expected {
                out.push(Violation::ExtraCell { cell });
            } else if !v.is_finite() {
                out.push(Violation::NonFinite { cell });
            } else if v < 0.0 {
                out.push(Violation::Negative { cell, value: v });
            }
        }
        for c in row.len()..expected {
            out.push(Violation::MissingCell {
                cell: CellIndex::new(i, c + 1),
            });
        }
    }
    for i in rows.len() + 1..=dim {
        for j in 1..=dim + 1 - i {
            out.push(Violation::MissingCell {
                cell: CellIndex::new(i, j),
            });
        }
    }
    if out.is_empty() {
        // Shape is sound; check the denominators of every development factor.
        for j in 1..dim {
            let rows_used = dim - j;
            let s: f64 = rows[..rows_used].iter().map(|row| row[..j].iter().sum::<f64>()).sum();
            if s == 0.0 {
                out.push(Violation::ZeroColumnSum {
                    column: j,
                    rows: rows_used,
                });
            }
        }
    }
    out
}

/// Upper-left triangle of incremental claims `X[i,j]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IncrementalTriangle {
    dim: usize,
    rows: Vec<Vec<f64>>,
}

impl IncrementalTriangle {
    /// Builds a triangle, rejecting bad shapes and negative or non-finite
    /// cells. Zero column sums are allowed here and surface through
    /// [`IncrementalTriangle::validate`] and factor estimation.
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::UnsupportedDimension {
                what: "a run-off triangle",
                dim,
                min: 1,
            });
        }
        let blocking: Vec<_> = validate_rows(dim, &rows)
            .into_iter()
            .filter(|v| !matches!(v, Violation::ZeroColumnSum { .. }))
            .collect();
        if !blocking.is_empty() {
            return Err(Error::InvalidTriangle(blocking));
        }
        Ok(Self { dim, rows })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        self.rows.get(i.wrapping_sub(1))?.get(j.wrapping_sub(1)).copied()
    }

    pub(crate) fn x(&self, i: usize, j: usize) -> f64 {
        self.rows[i - 1][j - 1]
    }

    pub fn cells(&self) -> impl Iterator<Item = (CellIndex, f64)> + '_ {
        observed_cells(self.dim).map(move |c| (c, self.x(c.i, c.j)))
    }

    pub fn validate(&self) -> Vec<Violation> {
        validate_rows(self.dim, &self.rows)
    }

    /// Copy with one observed cell replaced. The value is not checked, so
    /// perturbation schemes may step slightly outside the domain.
    pub fn with_value(&self, cell: CellIndex, value: f64) -> Result<Self> {
        if !cell.is_observed(self.dim) {
            return Err(Error::IndexOutOfRange {
                what: "observed cell row",
                index: cell.i,
                max: self.dim,
            });
        }
        let mut rows = self.rows.clone();
        rows[cell.i - 1][cell.j - 1] = value;
        Ok(Self { dim: self.dim, rows })
    }

    /// Multiplies every cell by `t`.
    pub fn scaled(&self, t: f64) -> Self {
        Self {
            dim: self.dim,
            rows: self.rows.iter().map(|r| r.iter().map(|v| v * t).collect()).collect(),
        }
    }
}

/// Upper-left triangle of cumulative claims `C[i,j] = X[i,1] + ... + X[i,j]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CumulativeTriangle {
    dim: usize,
    rows: Vec<Vec<f64>>,
}

impl CumulativeTriangle {
    /// Builds a cumulative triangle from rows; row `i` must hold exactly
    /// `I - i + 1` finite values.
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::UnsupportedDimension {
                what: "a run-off triangle",
                dim,
                min: 1,
            });
        }
        let shape: Vec<_> = validate_rows(dim, &rows)
            .into_iter()
            .filter(|v| {
                matches!(
                    v,
                    Violation::MissingCell { .. } | Violation::ExtraCell { .. } | Violation::NonFinite { .. }
                )
            })
            .collect();
        if !shape.is_empty() {
            return Err(Error::InvalidTriangle(shape));
        }
        Ok(Self { dim, rows })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        self.rows.get(i.wrapping_sub(1))?.get(j.wrapping_sub(1)).copied()
    }

    pub(crate) fn c(&self, i: usize, j: usize) -> f64 {
        self.rows[i - 1][j - 1]
    }

    /// Latest observed cumulative claim of accident year `i`, `C[i, I-i+1]`.
    pub(crate) fn latest(&self, i: usize) -> f64 {
        self.c(i, self.dim + 1 - i)
    }

    /// `sum_{q=1}^{p} C[q,j]` with the empty sum (`p = 0`) equal to zero.
    pub fn column_partial_sum(&self, j: usize, p: usize) -> Result<f64> {
        column_partial_sum(self, j, p)
    }

    /// Unchecked partial sum used on hot paths where the indices are known
    /// to be in range.
    pub(crate) fn colsum(&self, j: usize, p: usize) -> f64 {
        (1..=p).map(|q| self.c(q, j)).sum()
    }
}

pub fn cumulate(inc: &IncrementalTriangle) -> CumulativeTriangle {
    let rows = inc
        .rows
        .iter()
        .map(|row| {
            let mut acc = 0.0;
            row.iter()
                .map(|x| {
                    acc += x;
                    acc
                })
                .collect()
        })
        .collect();
    CumulativeTriangle { dim: inc.dim, rows }
}

/// Inverse of [`cumulate`]; fails if any row decreases.
pub fn decumulate(cum: &CumulativeTriangle) -> Result<IncrementalTriangle> {
    let mut rows = Vec::with_capacity(cum.dim);
    for (r, row) in cum.rows.iter().enumerate() {
        let mut out = Vec::with_capacity(row.len());
        let mut prev = 0.0;
        for (c, &v) in row.iter().enumerate() {
            if v < prev {
                return Err(Error::NegativeIncrement {
                    row: r + 1,
                    column: c + 1,
                });
            }
            out.push(v - prev);
            prev = v;
        }
        rows.push(out);
    }
    IncrementalTriangle::new(rows)
}

/// `sum_{q=1}^{p} C[q,j]`; only observed cells may be summed.
pub fn column_partial_sum(cum: &CumulativeTriangle, j: usize, p: usize) -> Result<f64> {
    let dim = cum.dim;
    if j == 0 || j > dim {
        return Err(Error::IndexOutOfRange {
            what: "development year",
            index: j,
            max: dim,
        });
    }
    let max_rows = dim + 1 - j;
    if p > max_rows {
        return Err(Error::IndexOutOfRange {
            what: "row bound",
            index: p,
            max: max_rows,
        });
    }
    Ok(cum.colsum(j, p))
}
