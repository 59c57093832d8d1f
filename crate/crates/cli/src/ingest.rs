// SPDX-License-Identifier: Apache-2.0

//! Triangle and prior files.
//!
//! Triangle format: first line `I=<n>`, then `n` lines where line `i` holds
//! `n - i + 1` comma-separated incremental values. Priors format: `i,mu` per
//! line with an optional header.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use reserving_core::bornhuetter::PriorUltimates;
use reserving_core::triangle::validate_rows;
use reserving_core::IncrementalTriangle;

use crate::CliError;

fn parse_error(line: usize, message: impl Into<String>) -> CliError {
    CliError::Parse {
        line,
        message: message.into(),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn ingest(path: &Path) -> Result<IncrementalTriangle, CliError> {
    parse_triangle(&read(path)?)
}

pub fn parse_triangle(text: &str) -> Result<IncrementalTriangle, CliError> {
    let mut lines = text.lines().enumerate().map(|(n, l)| (n + 1, l.trim()));
    let (first_no, header) = lines
        .next()
        .filter(|(_, l)| !l.is_empty())
        .ok_or_else(|| parse_error(1, "empty input; expected `I=<dimension>`"))?;
    let dim: usize = header
        .strip_prefix("I=")
        .or_else(|| header.strip_prefix("I ="))
        .map(str::trim)
        .and_then(|v| v.parse().ok())
        .filter(|&d| d > 0)
        .ok_or_else(|| parse_error(first_no, format!("expected `I=<dimension>`, found `{header}`")))?;

    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(dim);
    for (line_no, line) in lines {
        if line.is_empty() {
            if rows.len() == dim {
                continue;
            }
            return Err(parse_error(
                line_no,
                format!("blank line where row {} was expected", rows.len() + 1),
            ));
        }
        let row = rows.len() + 1;
        if row > dim {
            return Err(parse_error(
                line_no,
                format!("row {row} is beyond the declared dimension {dim}"),
            ));
        }
        let mut values = Vec::new();
        for (c, field) in line.split(',').enumerate() {
            let field = field.trim();
            let v: f64 = field.parse().map_err(|_| {
                parse_error(
                    line_no,
                    format!("row {row}, column {}: `{field}` is not a number", c + 1),
                )
            })?;
            values.push(v);
        }
        let expected = dim + 1 - row;
        if values.len() != expected {
            return Err(parse_error(
                line_no,
                format!("row {row} has {} values, expected {expected}", values.len()),
            ));
        }
        rows.push(values);
    }
    if rows.len() < dim {
        return Err(parse_error(
            text.lines().count().max(1),
            format!("found {} rows, expected {dim}", rows.len()),
        ));
    }

    let violations = validate_rows(dim, &rows);
    if !violations.is_empty() {
        return Err(CliError::Validation(violations));
    }
    IncrementalTriangle::new(rows).map_err(CliError::from)
}

pub fn read_priors(path: &Path) -> Result<PriorUltimates, CliError> {
    parse_priors(&read(path)?)
}

pub fn parse_priors(text: &str) -> Result<PriorUltimates, CliError> {
    let mut values = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split(',').map(str::trim);
        let (Some(i), Some(mu), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(parse_error(line_no, "expected `i,mu`"));
        };
        let (Ok(i), Ok(mu)) = (i.parse::<usize>(), mu.parse::<f64>()) else {
            if values.is_empty() && line_no == 1 {
                continue; // header
            }
            return Err(parse_error(line_no, format!("cannot parse `{line}` as `i,mu`")));
        };
        if values.insert(i, mu).is_some() {
            return Err(parse_error(line_no, format!("duplicate prior for accident year {i}")));
        }
    }
    if values.is_empty() {
        return Err(parse_error(1, "no priors found"));
    }
    PriorUltimates::new(values).map_err(CliError::from)
}
