//! Static renderings of a realization chart.

use std::fmt::Write as _;

use genus_range::{ChartStatus, RealizationChart};

const CELL: u32 = 40;
const MARGIN: u32 = 50;

fn glyph(status: ChartStatus) -> char {
    match status {
        ChartStatus::Realized => '#',
        ChartStatus::Impossible => '.',
        ChartStatus::Unknown => '?',
    }
}

/// Rows are `b` from the top down, columns are `a`.
pub fn text_grid(chart: &RealizationChart) -> String {
    let m = chart.max_genus;
    let mut out = format!(
        "n = {}, max genus {}{}\n",
        chart.n,
        m,
        if chart.exact {
            ""
        } else {
            " (from constructions)"
        }
    );
    for b in (0..=m).rev() {
        let _ = write!(out, "b={b:<3}");
        for a in 0..=m {
            let c = chart.status(a, b).map_or(' ', glyph);
            out.push(' ');
            out.push(c);
        }
        out.truncate(out.trim_end().len());
        out.push('\n');
    }
    out.push_str("     ");
    for a in 0..=m {
        let _ = write!(out, " {}", a % 10);
    }
    out.push_str("  = a\n# realized  . impossible  ? unknown\n");
    out
}

/// Filled discs for realized ranges, crosses for impossible ones, hollow circles for unknown.
pub fn render(chart: &RealizationChart) -> String {
    let m = chart.max_genus;
    let side = 2 * MARGIN + CELL * m;
    let x = |a: u32| MARGIN + CELL * a;
    let y = |b: u32| MARGIN + CELL * (m - b);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{side}" height="{side}" viewBox="0 0 {side} {side}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        out,
        r#"<rect width="{side}" height="{side}" fill="white"/>"#
    );
    let (x0, y0, x1, y1) = (x(0), y(0), x(m), y(m));
    let _ = writeln!(
        out,
        r##"<path d="M{x0} {y1}V{y0}H{x1}" fill="none" stroke="#444" stroke-width="1"/>"##
    );
    for k in 0..=m {
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="middle">{k}</text>"#,
            x(k),
            y0 + 20
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="end">{k}</text>"#,
            x0 - 12,
            y(k) + 4
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="middle">g</text>"#,
        (x0 + x1) / 2,
        y0 + 38
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="middle">g'</text>"#,
        x0 - 34,
        (y0 + y1) / 2
    );
    for p in &chart.points {
        let (cx, cy) = (x(p.a), y(p.b));
        match p.status {
            ChartStatus::Realized => {
                let _ = writeln!(out, r#"<circle cx="{cx}" cy="{cy}" r="8" fill="black"/>"#);
            }
            ChartStatus::Impossible => {
                let _ = writeln!(
                    out,
                    r##"<path d="M{} {}l12 12m0 -12l-12 12" stroke="#888" stroke-width="2"/>"##,
                    cx - 6,
                    cy - 6
                );
            }
            ChartStatus::Unknown => {
                let _ = writeln!(
                    out,
                    r#"<circle cx="{cx}" cy="{cy}" r="8" fill="none" stroke="black" stroke-width="1.5"/>"#
                );
            }
        }
    }
    out.push_str("</svg>\n");
    out
}
