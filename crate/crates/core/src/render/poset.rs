use std::fmt::Write as _;

use super::{escape_dot, escape_xml, Format, Shade};
use crate::error::{Error, Result};
use crate::space::{FinitePoset, PosetSubset};

const MARGIN: i64 = 20;
const DX: i64 = 70;
const DY: i64 = 60;
const COMPONENT_GAP: i64 = 30;
const RADIUS: i64 = 6;

/// Renders a finite poset with up to two nested subsets shaded: points of
/// the first are drawn light, points of the second only are drawn dark.
/// Generic points sit at the bottom.
pub fn render_poset(
    poset: &FinitePoset,
    subsets: &[&PosetSubset],
    format: Format,
) -> Result<Vec<u8>> {
    if subsets.len() > 2 {
        return Err(Error::Document(format!(
            "at most two subsets can be shaded, got {}",
            subsets.len()
        )));
    }
    for s in subsets {
        if s.members().iter().any(|&x| x >= poset.len()) {
            return Err(Error::SpectrumMismatch);
        }
    }
    let shades: Vec<Shade> = (0..poset.len())
        .map(|x| {
            if subsets.first().is_some_and(|s| s.contains(x)) {
                Shade::Locus
            } else if subsets.get(1).is_some_and(|s| s.contains(x)) {
                Shade::Ambient
            } else {
                Shade::Outside
            }
        })
        .collect();
    let layout = Layout::new(poset);
    let text = match format {
        Format::Svg => svg(poset, &layout, &shades),
        Format::Dot => dot(poset, &layout, &shades),
        Format::Ascii => ascii(poset, &layout, &shades),
    };
    Ok(text.into_bytes())
}

struct Layout {
    levels: Vec<usize>,
    top: usize,
    /// Grid position (column, level) per point.
    at: Vec<(i64, usize)>,
    component: Vec<usize>,
    columns: i64,
}

impl Layout {
    fn new(poset: &FinitePoset) -> Self {
        let levels = poset.levels();
        let top = levels.iter().copied().max().unwrap_or(0);
        let mut at = vec![(0, 0); poset.len()];
        let mut component = vec![0; poset.len()];
        let mut offset = 0i64;
        for (c, comp) in poset.components().into_iter().enumerate() {
            for &x in &comp {
                component[x] = c;
            }
            let mut width = 1;
            for level in 0..=top {
                let row: Vec<usize> = comp
                    .iter()
                    .copied()
                    .filter(|&x| levels[x] == level)
                    .collect();
                for (k, &x) in row.iter().enumerate() {
                    at[x] = (offset + k as i64, level);
                }
                width = width.max(row.len() as i64);
            }
            offset += width;
        }
        Layout {
            levels,
            top,
            at,
            component,
            columns: offset,
        }
    }

    fn xy(&self, x: usize) -> (i64, i64) {
        let (col, level) = self.at[x];
        (
            MARGIN + RADIUS + col * DX + self.component[x] as i64 * COMPONENT_GAP,
            MARGIN + 10 + (self.top - level) as i64 * DY,
        )
    }
}

fn svg(poset: &FinitePoset, layout: &Layout, shades: &[Shade]) -> String {
    let comps = poset.components().len().max(1) as i64;
    let width = 2 * MARGIN + layout.columns.max(1) * DX + (comps - 1) * COMPONENT_GAP;
    let legend_y = MARGIN + 10 + layout.top as i64 * DY + 40;
    let height = legend_y + 20;
    let pos: Vec<(i64, i64)> = (0..poset.len()).map(|x| layout.xy(x)).collect();

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        out,
        r#"<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>"#
    );
    for (a, b) in poset.hasse_edges() {
        let ((x1, y1), (x2, y2)) = (pos[a], pos[b]);
        let _ = writeln!(
            out,
            r##"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#888"/>"##
        );
    }
    for (x, &(cx, cy)) in pos.iter().enumerate() {
        let fill = if shades[x] == Shade::Outside {
            "white"
        } else {
            shades[x].fill()
        };
        let _ = writeln!(
            out,
            r#"<circle cx="{cx}" cy="{cy}" r="{RADIUS}" fill="{fill}" stroke="black"/>"#
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}">{}</text>"#,
            cx + RADIUS + 4,
            cy + 4,
            escape_xml(poset.name(x))
        );
    }
    let mut lx = MARGIN;
    for (shade, name) in [(Shade::Locus, "first"), (Shade::Ambient, "second")] {
        let _ = writeln!(
            out,
            r##"<rect x="{lx}" y="{}" width="14" height="14" fill="{}" stroke="#888"/>"##,
            legend_y - 11,
            shade.fill()
        );
        let _ = writeln!(out, r#"<text x="{}" y="{legend_y}">{name}</text>"#, lx + 20);
        lx += 80;
    }
    out.push_str("</svg>\n");
    out
}

fn dot(poset: &FinitePoset, layout: &Layout, shades: &[Shade]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph poset {{");
    let _ = writeln!(out, "  rankdir=BT;");
    let _ = writeln!(out, "  node [shape=circle, style=filled, fontsize=10];");
    let _ = writeln!(out, "  edge [arrowhead=none];");
    for x in 0..poset.len() {
        let fill = if shades[x] == Shade::Outside {
            "white"
        } else {
            shades[x].fill()
        };
        let _ = writeln!(
            out,
            "  \"{}\" [fillcolor=\"{fill}\"];",
            escape_dot(poset.name(x))
        );
    }
    for (a, b) in poset.hasse_edges() {
        let _ = writeln!(
            out,
            "  \"{}\" -> \"{}\";",
            escape_dot(poset.name(a)),
            escape_dot(poset.name(b))
        );
    }
    for level in 0..=layout.top {
        let row: Vec<String> = (0..poset.len())
            .filter(|&x| layout.levels[x] == level)
            .map(|x| format!("\"{}\"", escape_dot(poset.name(x))))
            .collect();
        if !row.is_empty() {
            let _ = writeln!(out, "  {{ rank=same; {}; }}", row.join("; "));
        }
    }
    let _ = writeln!(out, "}}");
    out
}

fn ascii(poset: &FinitePoset, layout: &Layout, shades: &[Shade]) -> String {
    let mut out = String::new();
    for level in (0..=layout.top).rev() {
        let mut row: Vec<usize> = (0..poset.len())
            .filter(|&x| layout.levels[x] == level)
            .collect();
        row.sort_by_key(|&x| layout.at[x].0);
        let cells: Vec<String> = row
            .iter()
            .map(|&x| format!("{} {}", shades[x].glyph(), poset.name(x)))
            .collect();
        let _ = writeln!(out, "{level:>2}  {}", cells.join("  "));
    }
    let edges = poset.hasse_edges();
    if !edges.is_empty() {
        out.push('\n');
        for (a, b) in edges {
            let _ = writeln!(out, "{} -> {}", poset.name(a), poset.name(b));
        }
    }
    out.push_str("\n# first  + second  . outside\n");
    out
}
