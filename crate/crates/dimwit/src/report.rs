//! Report rendering: a horizontal bar chart of measured witness values with
//! ±1σ error bars and the catalog bound lines, plus a companion CSV.
//!
//! The SVG is emitted from a fixed template with computed coordinates, so
//! output is byte-reproducible and carries no plotting dependency.

use crate::error::{Error, Result};
use crate::witness::{catalog, BoundTable, Model};

/// One measured row of the report.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub label: String,
    pub value: f64,
    pub sigma: f64,
    /// Closed-form target, NaN when unknown.
    pub theory: f64,
}

// Chart geometry (all in SVG user units).
const MARGIN_LEFT: f64 = 170.0; // row labels
const MARGIN_RIGHT: f64 = 30.0;
const PLOT_WIDTH: f64 = 640.0;
const ROW_HEIGHT: f64 = 34.0;
const BAR_HEIGHT: f64 = 16.0;
const PANEL_HEADER: f64 = 58.0; // panel title + bound labels
const PANEL_FOOTER: f64 = 34.0; // axis line + tick labels
const PANEL_GAP: f64 = 28.0;
const ERROR_CAP: f64 = 5.0;

const BAR_COLOR: &str = "#4878a8";
const THEORY_COLOR: &str = "#c03028";
const BOUND_COLOR: &str = "#555555";

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Human-readable name of a bound line, e.g. classical 2 -> "bit".
pub fn bound_label(model: Model, dim: usize) -> String {
    match (model, dim) {
        (Model::Classical, 2) => "bit".into(),
        (Model::Classical, 3) => "trit".into(),
        (Model::Classical, 4) => "quart".into(),
        (Model::Quantum, 2) => "qubit".into(),
        (Model::Quantum, 3) => "qutrit".into(),
        (Model::Quantum, 4) => "ququart".into(),
        (m, d) => format!("{m}-{d}"),
    }
}

/// Bound lines deduplicated by position: bounds sharing a value share one
/// dashed line with a joined label (e.g. "trit,qutrit").
fn bound_lines(bounds: &BoundTable) -> Vec<(f64, String)> {
    let mut lines: Vec<(f64, Vec<String>)> = Vec::new();
    let mut entries: Vec<_> = bounds.entries().to_vec();
    entries.sort_by(|a, b| a.bound.partial_cmp(&b.bound).expect("bounds are finite"));
    for b in entries {
        let label = bound_label(b.model, b.dim);
        match lines.last_mut() {
            Some((value, labels)) if (*value - b.bound).abs() < 1e-12 => labels.push(label),
            _ => lines.push((b.bound, vec![label])),
        }
    }
    lines.into_iter().map(|(v, ls)| (v, ls.join(","))).collect()
}

/// Renders the grouped report as a standalone SVG document.
///
/// Each group is one witness panel: a row per estimate, dashed vertical
/// lines at the witness's catalog bounds, and a theory marker per row.
pub fn render_svg(groups: &[(String, Vec<ReportRow>)]) -> Result<String> {
    if groups.is_empty() || groups.iter().all(|(_, rows)| rows.is_empty()) {
        return Err(Error::InvariantViolation("report needs at least one estimate".into()));
    }
    let mut seen = std::collections::HashSet::new();
    for (_, rows) in groups {
        for row in rows {
            if !seen.insert(row.label.clone()) {
                return Err(Error::InvariantViolation(format!(
                    "duplicate report label '{}'",
                    row.label
                )));
            }
        }
    }

    let total_height: f64 = groups
        .iter()
        .map(|(_, rows)| PANEL_HEADER + rows.len() as f64 * ROW_HEIGHT + PANEL_FOOTER)
        .sum::<f64>()
        + PANEL_GAP * (groups.len() as f64 - 1.0)
        + 20.0;
    let total_width = MARGIN_LEFT + PLOT_WIDTH + MARGIN_RIGHT;

    let mut svg = String::new();
    svg.push_str(&format!(
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{total_width:.0}" height="{total_height:.0}" font-family="sans-serif">"#
    ));
    svg.push('\n');

    let mut top = 10.0;
    for (witness_name, rows) in groups {
        let (_, bounds) = catalog(witness_name)?;
        let lines = bound_lines(&bounds);
        let max_bound = lines.iter().map(|(v, _)| *v).fold(0.0, f64::max);
        let max_data = rows
            .iter()
            .map(|r| (r.value + r.sigma).max(if r.theory.is_finite() { r.theory } else { 0.0 }))
            .fold(0.0, f64::max);
        let x_max = (max_bound.max(max_data) * 1.06).max(1.0);
        let to_x = |v: f64| MARGIN_LEFT + PLOT_WIDTH * (v / x_max);

        let axis_y = top + PANEL_HEADER + rows.len() as f64 * ROW_HEIGHT;

        svg.push_str(&format!(
            r#"<text x="{MARGIN_LEFT}" y="{:.1}" font-size="16" font-weight="bold">{} dimension witness</text>"#,
            top + 18.0,
            xml_escape(&witness_name.to_uppercase()),
        ));
        svg.push('\n');

        // dashed bound lines with labels above the panel
        for (value, label) in &lines {
            let x = to_x(*value);
            svg.push_str(&format!(
                r#"<line x1="{x:.2}" y1="{:.1}" x2="{x:.2}" y2="{axis_y:.1}" stroke="{BOUND_COLOR}" stroke-dasharray="5,4" stroke-width="1"/>"#,
                top + PANEL_HEADER - 14.0,
            ));
            svg.push('\n');
            svg.push_str(&format!(
                r#"<text x="{x:.2}" y="{:.1}" font-size="11" fill="{BOUND_COLOR}" text-anchor="middle">{}</text>"#,
                top + PANEL_HEADER - 18.0,
                xml_escape(label),
            ));
            svg.push('\n');
        }

        for (i, row) in rows.iter().enumerate() {
            let y_mid = top + PANEL_HEADER + (i as f64 + 0.5) * ROW_HEIGHT;
            svg.push_str(&format!(
                r#"<text x="{:.1}" y="{:.1}" font-size="12" text-anchor="end" dominant-baseline="middle">{}</text>"#,
                MARGIN_LEFT - 8.0,
                y_mid,
                xml_escape(&row.label),
            ));
            svg.push('\n');
            svg.push_str(&format!(
                r#"<rect x="{MARGIN_LEFT}" y="{:.2}" width="{:.2}" height="{BAR_HEIGHT}" fill="{BAR_COLOR}" fill-opacity="0.85"/>"#,
                y_mid - BAR_HEIGHT / 2.0,
                (to_x(row.value) - MARGIN_LEFT).max(0.0),
            ));
            svg.push('\n');
            if row.sigma > 0.0 {
                let x_lo = to_x(row.value - row.sigma);
                let x_hi = to_x(row.value + row.sigma);
                svg.push_str(&format!(
                    r#"<line x1="{x_lo:.2}" y1="{y_mid:.2}" x2="{x_hi:.2}" y2="{y_mid:.2}" stroke="black" stroke-width="1.2"/>"#
                ));
                svg.push('\n');
                for x in [x_lo, x_hi] {
                    svg.push_str(&format!(
                        r#"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="black" stroke-width="1.2"/>"#,
                        y_mid - ERROR_CAP,
                        y_mid + ERROR_CAP,
                    ));
                    svg.push('\n');
                }
            }
            if row.theory.is_finite() {
                let x = to_x(row.theory);
                svg.push_str(&format!(
                    r#"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="{THEORY_COLOR}" stroke-width="2"/>"#,
                    y_mid - BAR_HEIGHT / 2.0 - 3.0,
                    y_mid + BAR_HEIGHT / 2.0 + 3.0,
                ));
                svg.push('\n');
            }
        }

        // axis with ticks at integers
        svg.push_str(&format!(
            r#"<line x1="{MARGIN_LEFT}" y1="{axis_y:.1}" x2="{:.1}" y2="{axis_y:.1}" stroke="black" stroke-width="1"/>"#,
            MARGIN_LEFT + PLOT_WIDTH,
        ));
        svg.push('\n');
        let mut tick = 0.0;
        while tick <= x_max {
            let x = to_x(tick);
            svg.push_str(&format!(
                r#"<line x1="{x:.2}" y1="{axis_y:.1}" x2="{x:.2}" y2="{:.1}" stroke="black" stroke-width="1"/>"#,
                axis_y + 4.0,
            ));
            svg.push('\n');
            svg.push_str(&format!(
                r#"<text x="{x:.2}" y="{:.1}" font-size="11" text-anchor="middle">{tick:.0}</text>"#,
                axis_y + 16.0,
            ));
            svg.push('\n');
            tick += 1.0;
        }
        svg.push_str(&format!(
            r#"<text x="{:.1}" y="{:.1}" font-size="12" text-anchor="middle">witness value</text>"#,
            MARGIN_LEFT + PLOT_WIDTH / 2.0,
            axis_y + 30.0,
        ));
        svg.push('\n');

        top = axis_y + PANEL_FOOTER + PANEL_GAP;
    }

    svg.push_str("</svg>\n");
    Ok(svg)
}

fn csv_escape(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

/// Renders all rows as CSV with the fixed header `label,value,sigma,theory`.
/// Numbers use the shortest round-trip representation.
pub fn render_csv(groups: &[(String, Vec<ReportRow>)]) -> String {
    let mut out = String::from("label,value,sigma,theory\n");
    for (_, rows) in groups {
        for row in rows {
            out.push_str(&format!(
                "{},{},{},{}\n",
                csv_escape(&row.label),
                row.value,
                row.sigma,
                row.theory
            ));
        }
    }
    out
}
