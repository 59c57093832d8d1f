// SPDX-License-Identifier: Apache-2.0

//! Standalone SVG heatmaps of impact triangles.

use std::fmt::Write as _;
use std::path::Path;

use reserving_core::impact::ImpactTriangle;

use crate::CliError;

const NEUTRAL: (u8, u8, u8) = (247, 247, 247);
const NEGATIVE: (u8, u8, u8) = (33, 102, 172);
const POSITIVE: (u8, u8, u8) = (178, 24, 43);

const CELL_W: usize = 84;
const CELL_H: usize = 32;
const MARGIN: usize = 48;
const LEGEND_H: usize = 64;

fn lerp(a: (u8, u8, u8), b: (u8, u8, u8), t: f64) -> (u8, u8, u8) {
    let c = |x: u8, y: u8| (x as f64 + (y as f64 - x as f64) * t).round() as u8;
    (c(a.0, b.0), c(a.1, b.1), c(a.2, b.2))
}

/// Diverging colour symmetric about 0: `bound` maps to full saturation.
pub fn cell_color(v: f64, bound: f64) -> (u8, u8, u8) {
    if bound == 0.0 || v == 0.0 {
        return NEUTRAL;
    }
    let t = (v.abs() / bound).min(1.0);
    lerp(NEUTRAL, if v < 0.0 { NEGATIVE } else { POSITIVE }, t)
}

fn hex((r, g, b): (u8, u8, u8)) -> String {
    format!("#{r:02x}{g:02x}{b:02x}")
}

fn label(v: f64) -> String {
    let s = format!("{v:.4}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        "0.0000".into()
    } else {
        s
    }
}

pub fn render_svg(t: &ImpactTriangle) -> String {
    let dim = t.dim();
    let (lo, hi) = t.range();
    let bound = lo.abs().max(hi.abs());
    let width = 2 * MARGIN + dim * CELL_W;
    let height = 2 * MARGIN + dim * CELL_H + LEGEND_H;
    let title = match t.target {
        Some(i) => format!("{} [{i}]", t.statistic),
        None => t.statistic.to_string(),
    };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(s, r#"<rect width="{width}" height="{height}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{MARGIN}" y="20" font-size="14">impact of {title}</text>"#
    );
    for j in 1..=dim {
        let x = MARGIN + (j - 1) * CELL_W + CELL_W / 2;
        let _ = writeln!(
            s,
            r#"<text x="{x}" y="{}" text-anchor="middle">j={j}</text>"#,
            MARGIN - 6
        );
    }
    for k in 1..=dim {
        let y = MARGIN + (k - 1) * CELL_H + CELL_H / 2 + 4;
        let _ = writeln!(s, r#"<text x="{}" y="{y}" text-anchor="end">k={k}</text>"#, MARGIN - 6);
    }
    for (c, v) in t.cells() {
        let x = MARGIN + (c.j - 1) * CELL_W;
        let y = MARGIN + (c.i - 1) * CELL_H;
        let fill = cell_color(v, bound);
        let ink = if bound > 0.0 && v.abs() / bound > 0.6 {
            "white"
        } else {
            "black"
        };
        let _ = writeln!(
            s,
            r#"<rect class="cell" data-k="{}" data-j="{}" x="{x}" y="{y}" width="{CELL_W}" height="{CELL_H}" fill="{}" stroke="white"/>"#,
            c.i,
            c.j,
            hex(fill)
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="middle" fill="{ink}">{}</text>"#,
            x + CELL_W / 2,
            y + CELL_H / 2 + 4,
            label(v)
        );
    }

    let ly = MARGIN + dim * CELL_H + 24;
    let lw = dim * CELL_W;
    let _ = writeln!(s, "<defs><linearGradient id=\"scale\">");
    let _ = writeln!(
        s,
        r#"<stop offset="0" stop-color="{}"/>"#,
        hex(cell_color(-bound, bound))
    );
    let _ = writeln!(s, r#"<stop offset="0.5" stop-color="{}"/>"#, hex(NEUTRAL));
    let _ = writeln!(
        s,
        r#"<stop offset="1" stop-color="{}"/>"#,
        hex(cell_color(bound, bound))
    );
    let _ = writeln!(s, "</linearGradient></defs>");
    let _ = writeln!(
        s,
        r#"<rect x="{MARGIN}" y="{ly}" width="{lw}" height="12" fill="url(#scale)" stroke="gray"/>"#
    );
    let _ = writeln!(
        s,
        r#"<text class="legend-min" x="{MARGIN}" y="{}">min {}</text>"#,
        ly + 28,
        label(lo)
    );
    let _ = writeln!(
        s,
        r#"<text class="legend-max" x="{}" y="{}" text-anchor="end">max {}</text>"#,
        MARGIN + lw,
        ly + 28,
        label(hi)
    );
    s.push_str("</svg>\n");
    s
}

pub fn emit_heatmap(t: &ImpactTriangle, path: &Path) -> Result<(), CliError> {
    std::fs::write(path, render_svg(t)).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}
