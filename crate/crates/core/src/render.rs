// SPDX-License-Identifier: Apache-2.0

//! Plain-text views of maps and circuits.

use std::fmt::Write;

use crate::circuit::{Circuit, Polarity};
use crate::qmap::{Cover, QMapGrid};

fn var_name(grid: &QMapGrid, var: usize) -> String {
    if grid.is_primed(var) {
        format!("q{var}'")
    } else {
        format!("q{var}")
    }
}

fn group_id(i: usize) -> String {
    let mut s = String::new();
    let mut i = i;
    loop {
        s.insert(0, (b'a' + (i % 26) as u8) as char);
        if i < 26 {
            break;
        }
        i = i / 26 - 1;
    }
    s
}

/// Renders the map with Gray-ordered headers. With a cover, each cell also
/// lists the groups containing it, and a legend follows.
pub fn render_qmap(grid: &QMapGrid, cover: Option<&Cover>) -> String {
    let row_vars = grid.row_vars();
    let col_vars = grid.col_vars();
    let row_bits = row_vars.len();
    let col_bits = col_vars.len();

    let cell_text = |r: usize, c: usize| -> String {
        let state = grid.state_at(r, c);
        let mut text = grid.cell(r, c).symbol().to_string();
        if let Some(cover) = cover {
            let ids: String = cover
                .cubes()
                .iter()
                .enumerate()
                .filter(|(_, cube)| cube.contains(state))
                .map(|(i, _)| group_id(i))
                .collect::<Vec<_>>()
                .join(",");
            if !ids.is_empty() {
                text.push_str(&format!("[{ids}]"));
            }
        }
        text
    };

    let cells: Vec<Vec<String>> = (0..grid.rows())
        .map(|r| (0..grid.cols()).map(|c| cell_text(r, c)).collect())
        .collect();
    let width = cells
        .iter()
        .flatten()
        .map(String::len)
        .chain([col_bits])
        .max()
        .unwrap_or(1);

    let mut out = String::new();
    let title = match grid.target() {
        Some(t) => format!("T(q{t})"),
        None => "T".to_string(),
    };
    let row_names: Vec<String> = row_vars.iter().map(|&v| var_name(grid, v)).collect();
    let col_names: Vec<String> = col_vars.iter().map(|&v| var_name(grid, v)).collect();
    let _ = writeln!(
        out,
        "{title}: rows {} | cols {}",
        if row_names.is_empty() {
            "-".to_string()
        } else {
            row_names.join(" ")
        },
        col_names.join(" ")
    );

    let gutter = row_bits.max(1);
    let _ = write!(out, "{:gutter$} |", "");
    for c in 0..grid.cols() {
        let label = crate::boolfn::format_bits(grid.col_label(c), col_bits);
        let _ = write!(out, " {label:>width$}");
    }
    out.push('\n');
    for (r, row) in cells.iter().enumerate() {
        let label = if row_bits == 0 {
            "-".to_string()
        } else {
            crate::boolfn::format_bits(grid.row_label(r), row_bits)
        };
        let _ = write!(out, "{label:>gutter$} |");
        for text in row {
            let _ = write!(out, " {text:>width$}");
        }
        out.push('\n');
    }
    if let Some(cover) = cover {
        for (i, cube) in cover.cubes().iter().enumerate() {
            let _ = writeln!(out, "  {} = {}", group_id(i), cube);
        }
    }
    out
}

/// One row per line (data lines `q*`, then ancillas `a*`) and one column per
/// gate: `*` positive control, `o` negative control, `+` target.
pub fn render_circuit(circuit: &Circuit) -> String {
    let lines = circuit.lines();
    let names: Vec<String> = (0..lines)
        .map(|l| {
            if l < circuit.data_width() {
                format!("q{l}")
            } else {
                format!("a{}", l - circuit.data_width())
            }
        })
        .collect();
    let name_width = names.iter().map(String::len).max().unwrap_or(2);
    let mut rows: Vec<String> = names
        .iter()
        .map(|n| format!("{n:>name_width$}: -"))
        .collect();
    for g in circuit.gates() {
        let touched = g.controls().iter().map(|c| c.line).chain([g.target()]);
        let lo = touched.clone().min().unwrap();
        let hi = touched.max().unwrap();
        for (l, row) in rows.iter_mut().enumerate() {
            let mark = if l == g.target() {
                '+'
            } else if let Some(c) = g.controls().iter().find(|c| c.line == l) {
                match c.polarity {
                    Polarity::Positive => '*',
                    Polarity::Negative => 'o',
                }
            } else if l > lo && l < hi {
                '|'
            } else {
                '-'
            };
            row.push('-');
            row.push(mark);
            row.push('-');
        }
    }
    let mut out = String::new();
    for row in rows {
        out.push_str(&row);
        out.push_str("-\n");
    }
    out
}
