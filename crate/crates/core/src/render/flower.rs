use std::fmt::Write as _;

use super::{cell_height, escape_dot, escape_xml, FigureLayout, Shade, TOWER_CELLS};

const MARGIN: i64 = 20;
const ROW_LABELS: i64 = 40;
const TOP: i64 = 70;
const ROW: i64 = 22;
const TOWER_DX: i64 = 48;
const FLOWER_GAP: i64 = 36;
const BASE_DROP: i64 = 50;
const DOT: i64 = 3;
const HALO: i64 = 9;

// Row 0 is `∞`, row 1 the ellipsis, rows 2..=7 heights 7 down to 2.
fn row_of_cell(i: usize) -> i64 {
    if i + 1 == TOWER_CELLS {
        0
    } else {
        (TOWER_CELLS - i) as i64
    }
}

fn row_y(row: i64) -> i64 {
    TOP + row * ROW
}

fn base_y() -> i64 {
    row_y(TOWER_CELLS as i64) + BASE_DROP
}

fn flower_width(towers: usize) -> i64 {
    towers.max(1) as i64 * TOWER_DX
}

fn height_label(i: usize) -> String {
    cell_height(i).to_string()
}

pub(super) fn svg(fig: &FigureLayout) -> String {
    let widths: Vec<i64> = fig
        .flowers
        .iter()
        .map(|f| flower_width(f.towers.len()))
        .collect();
    let total: i64 = widths.iter().sum::<i64>() + FLOWER_GAP * (widths.len().max(1) as i64 - 1);
    // Roughly 7px per character of the title.
    let width = (MARGIN + ROW_LABELS + total + MARGIN)
        .max(2 * MARGIN + 7 * fig.title.chars().count() as i64);
    let legend_y = base_y() + 60;
    let height = legend_y + 30;

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
    let _ = writeln!(
        out,
        r#"<text x="{MARGIN}" y="24" font-size="14">{}</text>"#,
        escape_xml(&fig.title)
    );

    let lx = MARGIN + ROW_LABELS - 12;
    for i in 0..TOWER_CELLS {
        let label = match cell_height(i) {
            crate::space::Height::Infinite => "\u{221e}".to_string(),
            _ => height_label(i),
        };
        let _ = writeln!(
            out,
            r#"<text x="{lx}" y="{}" text-anchor="end">{label}</text>"#,
            row_y(row_of_cell(i)) + 4
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{lx}" y="{}" text-anchor="end">1</text>"#,
        base_y() + 4
    );

    let mut x = MARGIN + ROW_LABELS;
    for (f, w) in fig.flowers.iter().zip(&widths) {
        let bx = x + w / 2;
        let by = base_y();
        let _ = writeln!(out, "<g>");
        // Edges first so that points sit on top.
        for (j, _) in f.towers.iter().enumerate() {
            let cx = x + TOWER_DX / 2 + j as i64 * TOWER_DX;
            let bottom = row_y(row_of_cell(0));
            let _ = writeln!(
                out,
                r##"<line x1="{bx}" y1="{by}" x2="{cx}" y2="{bottom}" stroke="#888"/>"##
            );
            let _ = writeln!(
                out,
                r##"<line x1="{cx}" y1="{bottom}" x2="{cx}" y2="{}" stroke="#888"/>"##,
                row_y(2)
            );
            let _ = writeln!(
                out,
                r##"<line x1="{cx}" y1="{}" x2="{cx}" y2="{}" stroke="#888" stroke-dasharray="2,3"/>"##,
                row_y(2),
                row_y(0)
            );
        }
        for (j, t) in f.towers.iter().enumerate() {
            let cx = x + TOWER_DX / 2 + j as i64 * TOWER_DX;
            let _ = writeln!(
                out,
                r#"<text x="{cx}" y="{}" text-anchor="middle">{}</text>"#,
                row_y(0) - 18,
                escape_xml(&t.label)
            );
            for (i, &s) in t.cells.iter().enumerate() {
                point(&mut out, cx, row_y(row_of_cell(i)), s, DOT);
            }
        }
        point(&mut out, bx, by, f.base, DOT + 1);
        let _ = writeln!(
            out,
            r#"<text x="{bx}" y="{}" text-anchor="middle">{}</text>"#,
            by + 26,
            escape_xml(&f.label)
        );
        let _ = writeln!(out, "</g>");
        x += w + FLOWER_GAP;
    }

    let mut lx = MARGIN;
    for (shade, name) in [
        (Shade::Locus, "locus"),
        (Shade::Ambient, "ambient"),
        (Shade::Outside, "outside"),
    ] {
        let _ = writeln!(
            out,
            r##"<rect x="{lx}" y="{}" width="14" height="14" fill="{}" stroke="#888"/>"##,
            legend_y - 11,
            if shade == Shade::Outside {
                "white"
            } else {
                shade.fill()
            }
        );
        let _ = writeln!(out, r#"<text x="{}" y="{legend_y}">{name}</text>"#, lx + 20);
        lx += 90;
    }
    out.push_str("</svg>\n");
    out
}

fn point(out: &mut String, x: i64, y: i64, shade: Shade, r: i64) {
    if shade != Shade::Outside {
        let _ = writeln!(
            out,
            r#"<circle cx="{x}" cy="{y}" r="{}" fill="{}"/>"#,
            HALO + r - DOT,
            shade.fill()
        );
    }
    let _ = writeln!(out, r#"<circle cx="{x}" cy="{y}" r="{r}" fill="black"/>"#);
}

pub(super) fn dot(fig: &FigureLayout) -> String {
    let fill = |s: Shade| {
        if s == Shade::Outside {
            "white"
        } else {
            s.fill()
        }
    };
    let mut out = String::new();
    let _ = writeln!(out, "digraph locus {{");
    let _ = writeln!(out, "  label=\"{}\";", escape_dot(&fig.title));
    let _ = writeln!(out, "  labelloc=t;");
    let _ = writeln!(out, "  rankdir=BT;");
    let _ = writeln!(
        out,
        "  node [shape=box, style=\"rounded,filled\", fontsize=9, margin=\"0.04,0.02\"];"
    );
    let _ = writeln!(out, "  edge [arrowhead=none, color=\"#888888\"];");
    // ranks[0] holds base points, ranks[1..] tower cells with the ellipsis
    // inserted before `∞`.
    let mut ranks: Vec<Vec<String>> = vec![Vec::new(); TOWER_CELLS + 2];
    for (k, f) in fig.flowers.iter().enumerate() {
        let _ = writeln!(out, "  subgraph cluster_{k} {{");
        let _ = writeln!(out, "    label=\"{}\";", escape_dot(&f.label));
        let _ = writeln!(out, "    color=\"#cccccc\";");
        let base = format!("f{k}_base");
        let _ = writeln!(
            out,
            "    {base} [label=\"1\", fillcolor=\"{}\"];",
            fill(f.base)
        );
        ranks[0].push(base.clone());
        for (j, t) in f.towers.iter().enumerate() {
            let mut prev = base.clone();
            for (i, &s) in t.cells.iter().enumerate() {
                let id = format!("f{k}_t{j}_{}", height_label(i));
                if i + 1 == TOWER_CELLS {
                    let dots = format!("f{k}_t{j}_more");
                    let _ = writeln!(
                        out,
                        "    {dots} [label=\"...\", shape=plaintext, style=\"\"];"
                    );
                    let _ = writeln!(out, "    {prev} -> {dots} [style=dotted];");
                    ranks[TOWER_CELLS].push(dots.clone());
                    prev = dots;
                }
                let _ = writeln!(
                    out,
                    "    {id} [label=\"{}:{}\", fillcolor=\"{}\"];",
                    escape_dot(&t.label),
                    height_label(i),
                    fill(s)
                );
                let _ = writeln!(out, "    {prev} -> {id};");
                let rank = if i + 1 == TOWER_CELLS {
                    TOWER_CELLS + 1
                } else {
                    i + 1
                };
                ranks[rank].push(id.clone());
                prev = id;
            }
        }
        let _ = writeln!(out, "  }}");
    }
    for rank in ranks.iter().filter(|r| !r.is_empty()) {
        let _ = writeln!(out, "  {{ rank=same; {}; }}", rank.join("; "));
    }
    let _ = writeln!(out, "}}");
    out
}

pub(super) fn ascii(fig: &FigureLayout) -> String {
    const GUTTER: &str = "  ";
    let row_labels: Vec<String> = (0..TOWER_CELLS).map(height_label).collect();
    let label_width = row_labels.iter().map(String::len).max().unwrap_or(1);

    // Column widths per flower, widened so the flower label fits.
    let layouts: Vec<Vec<usize>> = fig
        .flowers
        .iter()
        .map(|f| {
            let mut cols: Vec<usize> = f
                .towers
                .iter()
                .map(|t| t.label.chars().count().max(1))
                .collect();
            if cols.is_empty() {
                cols.push(1);
            }
            let span = cols.iter().sum::<usize>() + GUTTER.len() * (cols.len() - 1);
            let need = f.label.chars().count();
            if need > span {
                *cols.last_mut().expect("non-empty") += need - span;
            }
            cols
        })
        .collect();
    let span = |cols: &[usize]| cols.iter().sum::<usize>() + GUTTER.len() * (cols.len() - 1);

    let mut lines: Vec<String> = vec![fig.title.clone()];
    let line = |head: &str, cells: Vec<String>| -> String {
        let mut s = format!("{head:<label_width$}");
        for c in cells {
            s.push_str(GUTTER);
            s.push_str(&c);
        }
        s.trim_end().to_string()
    };

    lines.push(line(
        "",
        fig.flowers
            .iter()
            .zip(&layouts)
            .map(|(f, cols)| format!("{:<w$}", f.label, w = span(cols)))
            .collect(),
    ));
    lines.push(line(
        "",
        fig.flowers
            .iter()
            .zip(&layouts)
            .flat_map(|(f, cols)| {
                cols.iter()
                    .enumerate()
                    .map(|(j, &w)| {
                        format!("{:<w$}", f.towers.get(j).map_or("", |t| t.label.as_str()))
                    })
                    .collect::<Vec<_>>()
            })
            .collect(),
    ));
    let tower_row = |head: &str, glyph: &dyn Fn(&super::Tower) -> char| {
        line(
            head,
            fig.flowers
                .iter()
                .zip(&layouts)
                .flat_map(|(f, cols)| {
                    cols.iter()
                        .enumerate()
                        .map(|(j, &w)| {
                            let g = f.towers.get(j).map_or(' ', glyph);
                            format!("{g:<w$}")
                        })
                        .collect::<Vec<_>>()
                })
                .collect(),
        )
    };
    let inf = TOWER_CELLS - 1;
    lines.push(tower_row(&row_labels[inf], &|t| t.cells[inf].glyph()));
    lines.push(tower_row(":", &|_| ':'));
    for i in (0..inf).rev() {
        lines.push(tower_row(&row_labels[i], &|t| t.cells[i].glyph()));
    }
    lines.push(line(
        "1",
        fig.flowers
            .iter()
            .zip(&layouts)
            .map(|(f, cols)| format!("{:<w$}", f.base.glyph(), w = span(cols)))
            .collect(),
    ));
    lines.push(String::new());
    lines.push("# locus  + ambient  . outside".to_string());
    let mut out = lines.join("\n");
    out.push('\n');
    out
}
