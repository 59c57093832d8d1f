// SPDX-License-Identifier: Apache-2.0

use std::fmt::Write as _;

use reserving_core::impact::ImpactTriangle;
use reserving_core::oracle::VerificationReport;
use serde::Serialize;

/// Plain decimal with 10 significant digits, trailing zeros trimmed.
pub fn format_value(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let exp = v.abs().log10().floor() as i32;
    let s = if exp >= 9 {
        let scale = 10f64.powi(exp - 9);
        format!("{:.0}", (v / scale).round() * scale)
    } else {
        format!("{:.*}", (9 - exp) as usize, v)
    };
    let s = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

pub fn impact_csv(t: &ImpactTriangle) -> String {
    let mut out = String::from("k,j,value\n");
    for (c, v) in t.cells() {
        let _ = writeln!(out, "{},{},{}", c.i, c.j, format_value(v));
    }
    out
}

#[derive(Serialize)]
struct CellJson {
    k: usize,
    j: usize,
    value: f64,
}

#[derive(Serialize)]
struct SummaryJson {
    value_of_statistic: f64,
}

#[derive(Serialize)]
struct ImpactJson<'a> {
    statistic: &'a str,
    target: Option<usize>,
    #[serde(rename = "I")]
    dim: usize,
    cells: Vec<CellJson>,
    summary: SummaryJson,
}

pub fn impact_json(t: &ImpactTriangle, value: f64) -> String {
    let doc = ImpactJson {
        statistic: t.statistic.as_str(),
        target: t.target,
        dim: t.dim(),
        cells: t.cells().map(|(c, value)| CellJson { k: c.i, j: c.j, value }).collect(),
        summary: SummaryJson {
            value_of_statistic: value,
        },
    };
    json(&doc)
}

/// One accident year of the reserve summary.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReserveRow {
    pub i: usize,
    pub latest: f64,
    pub ultimate: f64,
    pub reserve: f64,
    pub rmse: f64,
    pub bf_reserve: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReserveTable {
    pub rows: Vec<ReserveRow>,
    pub total: ReserveRow,
}

pub fn reserves_csv(t: &ReserveTable) -> String {
    let mut out = String::from("i,latest,ultimate,reserve,rmse,bf_reserve\n");
    let mut line = |label: String, r: &ReserveRow| {
        let _ = writeln!(
            out,
            "{label},{},{},{},{},{}",
            format_value(r.latest),
            format_value(r.ultimate),
            format_value(r.reserve),
            format_value(r.rmse),
            format_value(r.bf_reserve)
        );
    };
    for r in &t.rows {
        line(r.i.to_string(), r);
    }
    line("total".into(), &t.total);
    out
}

pub fn reserves_json(t: &ReserveTable) -> String {
    json(t)
}

pub fn report_csv(r: &VerificationReport) -> String {
    let mut out = String::from("label,k,j,analytic,numeric,rel_error\n");
    for c in &r.cells {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{:.3e}",
            c.label,
            c.k,
            c.j,
            format_value(c.analytic),
            format_value(c.numeric),
            c.rel_error
        );
    }
    out
}

pub fn report_json(r: &VerificationReport) -> String {
    json(r)
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data serializes");
    s.push('\n');
    s
}
