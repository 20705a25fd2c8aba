//! Text, line-record and LaTeX renderings of tableaux and growth diagrams.

use std::fmt::Write as _;
use std::str::FromStr;

use growthkit::catalog::{AlgorithmSpec, Palette};
use growthkit::growth::{CellCase, ColoredTableau, GrowthDiagram};
use growthkit::insdiag::Color;
use growthkit::{Channel, Correspondence, Geometry, Shape};

use crate::records;
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Records,
    Latex,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Format::Text),
            "records" | "jsonl" => Ok(Format::Records),
            "latex" => Ok(Format::Latex),
            _ => Err(format!("unknown format {s:?}")),
        }
    }
}

fn cells(t: &ColoredTableau, palette: &Palette, channel: Channel) -> Vec<Vec<String>> {
    t.rows()
        .iter()
        .map(|r| {
            r.iter()
                .map(|(v, c)| format!("{v}{}", palette.mark(channel, *c)))
                .collect()
        })
        .collect()
}

fn indent(geometry: Geometry, row: usize) -> usize {
    match geometry {
        Geometry::Quadrant => 0,
        Geometry::Octant => row,
    }
}

/// Renders one tableau. `which` names it in records output.
pub fn render_tableau(
    t: &ColoredTableau,
    palette: &Palette,
    channel: Channel,
    which: &str,
    format: Format,
) -> String {
    let geometry = t.shape().geometry();
    match format {
        Format::Text => {
            if t.shape().is_empty() {
                return "(empty)\n".to_string();
            }
            let rows = cells(t, palette, channel);
            let starts: Vec<usize> = (0..rows.len()).map(|k| indent(geometry, k)).collect();
            let ncols = rows
                .iter()
                .zip(&starts)
                .map(|(r, s)| r.len() + s)
                .max()
                .unwrap_or(0);
            let mut widths = vec![0; ncols];
            for (row, &s) in rows.iter().zip(&starts) {
                for (c, e) in row.iter().enumerate() {
                    widths[s + c] = widths[s + c].max(e.len());
                }
            }
            let mut out = String::new();
            for (row, &s) in rows.iter().zip(&starts) {
                let padded: Vec<String> = (0..s + row.len())
                    .map(|c| {
                        let e = if c < s { "" } else { row[c - s].as_str() };
                        format!("{e:<w$}", w = widths[c])
                    })
                    .collect();
                out.push_str(padded.join(" ").trim_end());
                out.push('\n');
            }
            out
        }
        Format::Records => {
            let mut s = serde_json::to_string(&records::Record::Tableau(
                records::TableauRecord::new(which, t),
            ))
            .expect("serialisable");
            s.push('\n');
            s
        }
        Format::Latex => {
            if t.shape().is_empty() {
                return "\\varnothing\n".to_string();
            }
            let mut out = String::from("\\begin{ytableau}\n");
            let rows = t.rows();
            for (k, row) in rows.iter().enumerate() {
                let mut items: Vec<String> = vec!["\\none".to_string(); indent(geometry, k)];
                items.extend(row.iter().map(|(v, c)| {
                    let sup = match palette.mark(channel, *c) {
                        "o" => "^\\circ",
                        "b" => "^\\bullet",
                        "ob" => "^{\\circ\\bullet}",
                        _ => "",
                    };
                    format!("{v}{sup}")
                }));
                out.push_str(&items.join(" & "));
                out.push_str(if k + 1 < rows.len() { " \\\\\n" } else { "\n" });
            }
            out.push_str("\\end{ytableau}\n");
            out
        }
    }
}

/// Reads the text form written by [`render_tableau`]: one row per line or
/// rows separated by `/`, each entry a value with an optional mark from the
/// palette.
pub fn parse_tableau(
    text: &str,
    geometry: Geometry,
    palette: &Palette,
    channel: Channel,
) -> Result<ColoredTableau, CliError> {
    let mut rows: Vec<Vec<(u32, Color)>> = Vec::new();
    for line in text.lines().flat_map(|l| l.split('/')) {
        let line = line.trim();
        if line.is_empty() || line == "(empty)" {
            continue;
        }
        let mut row = Vec::new();
        for tok in line.split_whitespace() {
            let digits = tok.find(|c: char| !c.is_ascii_digit()).unwrap_or(tok.len());
            let bad = || CliError::Usage(format!("bad tableau entry {tok:?}"));
            let value: u32 = tok[..digits].parse().map_err(|_| bad())?;
            let mark = &tok[digits..];
            let colour = (1..=4)
                .find(|&c| palette.mark(channel, c) == mark)
                .ok_or_else(bad)?;
            row.push((value, colour));
        }
        rows.push(row);
    }
    Ok(ColoredTableau::from_rows(geometry, &rows)?)
}

fn shape_text(s: &Shape) -> String {
    s.to_string()
}

fn edge_label(
    g: &GrowthDiagram,
    alg: &AlgorithmSpec,
    lower: &Shape,
    upper: &Shape,
    colour: Option<Color>,
    channel: Channel,
) -> String {
    let _ = g;
    lower
        .cover_box(upper)
        .zip(colour)
        .and_then(|(p, c)| alg.palette().edge_label(alg.instantiation(), channel, p, c))
        .unwrap_or_default()
}

fn hlabel(g: &GrowthDiagram, alg: &AlgorithmSpec, i: u32, j: u32) -> String {
    edge_label(
        g,
        alg,
        g.node(i - 1, j),
        g.node(i, j),
        g.hcolor(i, j),
        Channel::Ascending,
    )
}

fn vlabel(g: &GrowthDiagram, alg: &AlgorithmSpec, i: u32, j: u32) -> String {
    edge_label(
        g,
        alg,
        g.node(i, j - 1),
        g.node(i, j),
        g.vcolor(i, j),
        Channel::Descending,
    )
}

/// Mark shown inside the cell whose northeast corner is `(i, j)`.
pub fn cell_mark(g: &GrowthDiagram, alg: &AlgorithmSpec, i: u32, j: u32) -> String {
    match g.case(i, j) {
        CellCase::Alpha => alg.palette().alpha_label(g.alpha(i, j)),
        c => c.mark().to_string(),
    }
}

/// Renders a whole growth diagram, northmost row first.
pub fn render_growth(g: &GrowthDiagram, alg: &AlgorithmSpec, format: Format) -> String {
    match format {
        Format::Text => growth_text(g, alg),
        Format::Records => records::write_growth(g, alg),
        Format::Latex => growth_latex(g, alg),
    }
}

fn growth_text(g: &GrowthDiagram, alg: &AlgorithmSpec) -> String {
    let (n, m) = (g.n(), g.m());
    let mut wn = 1;
    let mut we = 3;
    for j in 0..=m {
        for i in 0..=n {
            wn = wn.max(shape_text(g.node(i, j)).len());
            if j > 0 {
                wn = wn.max(1 + vlabel(g, alg, i, j).len());
            }
            if i > 0 {
                we = we.max(hlabel(g, alg, i, j).len() + 4);
                if j > 0 {
                    we = we.max(cell_mark(g, alg, i, j).len() + 2);
                }
            }
        }
    }
    let mut out = String::new();
    for j in (0..=m).rev() {
        let mut line = format!("{j:>3}  ");
        for i in 0..=n {
            if i > 0 {
                let lab = hlabel(g, alg, i, j);
                let _ = write!(line, " {:-^we$} ", lab);
            }
            let _ = write!(line, "{:<wn$}", shape_text(g.node(i, j)));
        }
        out.push_str(line.trim_end());
        out.push('\n');
        if j == 0 {
            break;
        }
        let mut line = String::from("     ");
        for i in 0..=n {
            if i > 0 {
                let _ = write!(line, " {:^we$} ", cell_mark(g, alg, i, j));
            }
            let _ = write!(line, "{:<wn$}", format!("|{}", vlabel(g, alg, i, j)));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    let mut line = String::from("     ");
    for i in 0..=n {
        if i > 0 {
            line.push_str(&" ".repeat(we + 2));
        }
        let _ = write!(line, "{:<wn$}", i);
    }
    out.push_str(line.trim_end());
    out.push('\n');
    out
}

fn latex_shape(s: &Shape) -> String {
    if s.is_empty() {
        "\\varnothing".to_string()
    } else if s.rows().iter().all(|&r| r < 10) {
        s.rows().iter().map(|r| r.to_string()).collect()
    } else {
        s.to_string()
    }
}

fn growth_latex(g: &GrowthDiagram, alg: &AlgorithmSpec) -> String {
    let (n, m) = (g.n(), g.m());
    let mut out = String::from("\\begin{tikzcd}[column sep=small, row sep=small]\n");
    for j in (0..=m).rev() {
        let mut items = Vec::new();
        for i in 0..=n {
            let mut item = latex_shape(g.node(i, j));
            if i < n {
                let lab = hlabel(g, alg, i + 1, j);
                let style = if g.node(i, j) == g.node(i + 1, j) {
                    ", equal"
                } else {
                    ""
                };
                let _ = write!(item, " \\arrow[r{style}, \"{lab}\"]");
            }
            if j < m {
                let lab = vlabel(g, alg, i, j + 1);
                let style = if g.node(i, j) == g.node(i, j + 1) {
                    ", equal"
                } else {
                    ""
                };
                let _ = write!(item, " \\arrow[u{style}, \"{lab}\"']");
            }
            if i < n && j < m {
                let mark = match cell_mark(g, alg, i + 1, j + 1).as_str() {
                    "*" => "\\ast".to_string(),
                    "v" => "\\vee".to_string(),
                    other => other.to_string(),
                };
                if !mark.is_empty() {
                    let _ = write!(item, " \\arrow[ur, phantom, \"{mark}\" description]");
                }
            }
            items.push(item);
        }
        out.push_str(&items.join(" & "));
        out.push_str(if j > 0 { " \\\\\n" } else { "\n" });
    }
    out.push_str("\\end{tikzcd}\n");
    out
}

/// Compact one-line form of a tableau for summaries.
pub fn tableau_inline(t: &ColoredTableau, palette: &Palette, channel: Channel) -> String {
    let rows: Vec<String> = cells(t, palette, channel)
        .iter()
        .map(|r| r.join(" "))
        .collect();
    format!("[{}]", rows.join(" / "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use growthkit::catalog;
    use growthkit::growth::run_growth;

    fn rs_row() -> std::sync::Arc<AlgorithmSpec> {
        catalog::get("rs-row").unwrap()
    }

    #[test]
    fn tableau_text() {
        let t = ColoredTableau::from_rows(
            Geometry::Quadrant,
            &[vec![(1, 1), (3, 1), (4, 1)], vec![(2, 1)]],
        )
        .unwrap();
        let p = rs_row();
        assert_eq!(
            render_tableau(&t, p.palette(), Channel::Ascending, "P", Format::Text),
            "1 3 4\n2\n"
        );
        let e = ColoredTableau::from_rows(Geometry::Quadrant, &[]).unwrap();
        assert_eq!(
            render_tableau(&e, p.palette(), Channel::Ascending, "P", Format::Text),
            "(empty)\n"
        );
    }

    #[test]
    fn circled_entries() {
        let sagan = catalog::get("sagan1").unwrap();
        let t = ColoredTableau::from_rows(
            Geometry::Octant,
            &[vec![(1, 1), (2, 1), (3, 1), (5, 2)], vec![(4, 1)]],
        )
        .unwrap();
        let text = render_tableau(&t, sagan.palette(), Channel::Descending, "Q", Format::Text);
        assert_eq!(text, "1 2 3 5o\n  4\n");
        let latex = render_tableau(&t, sagan.palette(), Channel::Descending, "Q", Format::Latex);
        assert!(latex.contains("5^\\circ"));
        assert!(latex.contains("\\none & 4"));
        let back = parse_tableau(
            &text,
            Geometry::Octant,
            sagan.palette(),
            Channel::Descending,
        )
        .unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn one_cell_grid() {
        let alg = rs_row();
        let gp = "1".parse().unwrap();
        let g = run_growth(alg.as_ref(), &gp).unwrap();
        let text = render_growth(&g, &alg, Format::Text);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        assert!(lines[0].starts_with("  1  0") && lines[0].ends_with('1'));
        assert!(lines[1].contains('X'));
        assert!(lines[2].starts_with("  0  0"));
        let latex = render_growth(&g, &alg, Format::Latex);
        assert!(latex.starts_with("\\begin{tikzcd}"));
        assert!(latex.contains("\"X\" description"));
    }
}
