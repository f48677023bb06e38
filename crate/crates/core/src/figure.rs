//! Diagrams of a column space and a piecewise map.
//!
//! Columns sit at integer x positions; each interval is drawn as a vertical
//! bar and every piece as an arrow from its source to its image, labeled
//! with the vertical offset when it is nonzero. Discontinuity points are
//! marked in red.

use std::fmt::Write;

use crate::piecewise::{
    is_continuous, ColumnIndex, ColumnSpace, Interval, LineRealization, PiecewiseMap, Q,
};

const COL_GAP: f64 = 64.0;
const UNIT: f64 = 56.0;
const MARGIN: f64 = 40.0;
const HEIGHT_UNITS: f64 = 3.0;

/// Which columns to draw and which of them to emphasize.
pub struct FigureOptions<'a> {
    pub columns: Vec<ColumnIndex>,
    pub highlight: &'a dyn Fn(ColumnIndex) -> bool,
    pub label: &'a dyn Fn(ColumnIndex) -> String,
}

fn y_of(v: Q) -> f64 {
    MARGIN + (HEIGHT_UNITS - v.to_f64()) * UNIT
}

fn mid(i: &Interval) -> Q {
    Q((i.lo.0 + i.hi.0) / 2)
}

/// Render `map` over `space` as a standalone SVG document.
pub fn render_svg(space: &ColumnSpace, map: &PiecewiseMap, opts: &FigureOptions<'_>) -> String {
    let xs: Vec<(ColumnIndex, f64)> = opts
        .columns
        .iter()
        .enumerate()
        .map(|(i, &c)| (c, MARGIN + i as f64 * COL_GAP + COL_GAP / 2.0))
        .collect();
    let x_of = |c: ColumnIndex| xs.iter().find(|(k, _)| *k == c).map(|(_, x)| *x);
    let width = 2.0 * MARGIN + xs.len() as f64 * COL_GAP;
    let height = 2.0 * MARGIN + HEIGHT_UNITS * UNIT + 24.0;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">"#
    );
    svg.push_str(
        r##"<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" markerHeight="6" orient="auto-start-reverse"><path d="M0,0 L10,5 L0,10 z" fill="#555"/></marker></defs>"##,
    );
    svg.push('\n');

    for &(c, x) in &xs {
        let Some(column) = space.column(c) else {
            continue;
        };
        let color = if (opts.highlight)(c) { "#1f5fbf" } else { "#888" };
        for part in column.parts() {
            let (y0, y1) = (y_of(part.hi), y_of(part.lo));
            if part.is_point() {
                let _ = writeln!(svg, r#"<circle cx="{x}" cy="{y0}" r="3.5" fill="{color}"/>"#);
                continue;
            }
            let _ = writeln!(
                svg,
                r#"<line x1="{x}" y1="{y0}" x2="{x}" y2="{y1}" stroke="{color}" stroke-width="4"/>"#
            );
            // closed end filled, open end hollow
            for (y, closed) in [(y1, part.lo_closed), (y0, part.hi_closed)] {
                let fill = if closed { color } else { "white" };
                let _ = writeln!(
                    svg,
                    r#"<circle cx="{x}" cy="{y}" r="3.5" fill="{fill}" stroke="{color}" stroke-width="1.5"/>"#
                );
            }
        }
        let _ = writeln!(
            svg,
            r#"<text x="{x}" y="{}" text-anchor="middle">{}</text>"#,
            height - MARGIN / 2.0,
            (opts.label)(c)
        );
    }

    for &(c, x) in &xs {
        for piece in map.pieces(c) {
            let Some(tx) = x_of(piece.target) else {
                continue;
            };
            let from = mid(&piece.source);
            let to = from + piece.offset;
            let (sx, sy, ex, ey) = (x + 6.0, y_of(from), tx - 6.0, y_of(to));
            let _ = writeln!(
                svg,
                r##"<line x1="{sx}" y1="{sy}" x2="{ex}" y2="{ey}" stroke="#555" stroke-width="1.2" marker-end="url(#arrow)"/>"##
            );
            if piece.offset != Q::zero() {
                let sign = if piece.offset > Q::zero() { "+" } else { "" };
                let _ = writeln!(
                    svg,
                    r##"<text x="{}" y="{}" text-anchor="middle" fill="#b35900">{sign}{}</text>"##,
                    (sx + ex) / 2.0,
                    (sy + ey) / 2.0 - 4.0,
                    piece.offset
                );
            }
        }
    }

    for w in is_continuous(map, space).witnesses {
        if let Some(x) = x_of(w.column) {
            let _ = writeln!(
                svg,
                r##"<circle cx="{x}" cy="{}" r="6" fill="none" stroke="#d00" stroke-width="2"><title>discontinuous at ({}, {})</title></circle>"##,
                y_of(w.point),
                w.column,
                w.point
            );
        }
    }
    svg.push_str("</svg>\n");
    svg
}

/// SVG of the shift of a line realization over columns `-range..=range`.
pub fn line_svg(real: &LineRealization, range: u64) -> String {
    let r = range.min(real.window) as i64;
    let s = &real.submonoid;
    render_svg(
        &real.space,
        &real.map,
        &FigureOptions {
            columns: (-r..=r).collect(),
            highlight: &|c| s.contains(c),
            label: &|c| c.to_string(),
        },
    )
}

/// Graphviz rendering: one node per interval, one edge per piece.
pub fn render_dot(space: &ColumnSpace, map: &PiecewiseMap) -> String {
    let node = |c: ColumnIndex, i: usize| format!("\"c{c}_{i}\"");
    let mut dot = String::from("digraph realization {\n  rankdir=LR;\n  node [shape=box];\n");
    for (c, column) in space.columns() {
        let _ = writeln!(dot, "  subgraph \"cluster_{c}\" {{\n    label=\"{c}\";");
        for (i, part) in column.parts().iter().enumerate() {
            let _ = writeln!(dot, "    {} [label=\"{part}\"];", node(c, i));
        }
        dot.push_str("  }\n");
    }
    let locate = |c: ColumnIndex, x: Q| {
        space
            .column(c)
            .and_then(|u| u.parts().iter().position(|p| p.contains(x)))
    };
    for (c, pieces) in map.columns() {
        for p in pieces {
            let (Some(si), Some(ti)) = (locate(c, mid(&p.source)), locate(p.target, mid(&p.image())))
            else {
                continue;
            };
            let _ = writeln!(
                dot,
                "  {} -> {} [label=\"{} ↦ {:+}\"];",
                node(c, si),
                node(p.target, ti),
                p.source,
                p.offset.to_f64()
            );
        }
    }
    dot.push_str("}\n");
    dot
}
