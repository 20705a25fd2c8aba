//! Reader for the reference growth diagrams under `tests/fixtures`.
//!
//! Each file records one worked example: the algorithm, its input, the
//! expected P and Q, and for every row `j` of the grid the node shapes, the
//! labels on horizontal and vertical edges and the alpha labels. A `.`
//! label means the edge carries no visible label.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use growthkit::catalog;
use growthkit::growth::{extract_p, extract_q, run_growth, GrowthDiagram};
use growthkit::{Channel, Correspondence, Shape};

pub struct Figure {
    pub name: String,
    pub algorithm: String,
    pub input: String,
    pub p: Vec<Vec<(u32, u8)>>,
    pub q: Vec<Vec<(u32, u8)>>,
    pub nodes: BTreeMap<u32, Vec<String>>,
    pub h: BTreeMap<u32, Vec<String>>,
    pub v: BTreeMap<u32, Vec<String>>,
    pub alpha: BTreeMap<u32, Vec<String>>,
}

/// Rows separated by `/`; a trailing `o` or `b` marks colour 2.
pub fn parse_tableau(text: &str) -> Vec<Vec<(u32, u8)>> {
    text.split('/')
        .map(|row| {
            row.split_whitespace()
                .map(|tok| {
                    let digits = tok.trim_end_matches(|c: char| c.is_alphabetic());
                    let colour = if digits.len() < tok.len() { 2 } else { 1 };
                    (digits.parse().expect("tableau value"), colour)
                })
                .collect()
        })
        .filter(|r: &Vec<_>| !r.is_empty())
        .collect()
}

/// Works from the core crate and from sibling crates that include this file.
pub fn fixtures_dir() -> PathBuf {
    let root = Path::new(env!("CARGO_MANIFEST_DIR"));
    let own = root.join("tests/fixtures");
    if own.is_dir() {
        own
    } else {
        root.join("../core/tests/fixtures")
    }
}

pub fn load(path: &Path) -> Figure {
    let text = std::fs::read_to_string(path).expect("fixture");
    let mut fig = Figure {
        name: path.file_stem().unwrap().to_string_lossy().into_owned(),
        algorithm: String::new(),
        input: String::new(),
        p: Vec::new(),
        q: Vec::new(),
        nodes: BTreeMap::new(),
        h: BTreeMap::new(),
        v: BTreeMap::new(),
        alpha: BTreeMap::new(),
    };
    for line in text.lines() {
        let (key, rest) = line.split_once(' ').unwrap_or((line, ""));
        let row = || {
            let mut it = rest.split_whitespace();
            let j: u32 = it.next().unwrap().parse().unwrap();
            (j, it.map(String::from).collect::<Vec<_>>())
        };
        match key {
            "algorithm" => fig.algorithm = rest.to_string(),
            "input" => fig.input = rest.to_string(),
            "P" => fig.p = parse_tableau(rest),
            "Q" => fig.q = parse_tableau(rest),
            "nodes" => {
                let (j, v) = row();
                fig.nodes.insert(j, v);
            }
            "h" => {
                let (j, v) = row();
                fig.h.insert(j, v);
            }
            "v" => {
                let (j, v) = row();
                fig.v.insert(j, v);
            }
            "alpha" => {
                let (j, v) = row();
                fig.alpha.insert(j, v);
            }
            _ => {}
        }
    }
    fig
}

pub fn load_all() -> Vec<Figure> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(fixtures_dir())
        .expect("fixtures dir")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "fig"))
        .collect();
    paths.sort();
    paths.iter().map(|p| load(p)).collect()
}

/// Every disagreement between the figure and a fresh run.
pub fn check_figure(fig: &Figure) -> Vec<String> {
    let mut bad = Vec::new();
    let alg = match catalog::get(&fig.algorithm) {
        Ok(a) => a,
        Err(e) => return vec![e.to_string()],
    };
    let inst = alg.instantiation();
    let gp = match fig.input.parse() {
        Ok(gp) => gp,
        Err(e) => return vec![format!("input: {e}")],
    };
    let g: GrowthDiagram = match run_growth(alg.as_ref(), &gp) {
        Ok(g) => g,
        Err(e) => return vec![format!("growth: {e}")],
    };
    if extract_p(&g).rows() != fig.p {
        bad.push(format!(
            "P is {} but the figure has {:?}",
            extract_p(&g),
            fig.p
        ));
    }
    if extract_q(&g).rows() != fig.q {
        bad.push(format!(
            "Q is {} but the figure has {:?}",
            extract_q(&g),
            fig.q
        ));
    }
    let palette = alg.palette();
    for (&j, row) in &fig.nodes {
        for (i, want) in row.iter().enumerate() {
            let want = Shape::parse(inst.geometry, want).expect("fixture shape");
            if g.node(i as u32, j) != &want {
                bad.push(format!(
                    "node ({i},{j}) is {} not {want}",
                    g.node(i as u32, j)
                ));
            }
        }
    }
    let mut edge = |kind: &str, i: u32, j: u32, want: &str| {
        let (lower, upper, colour, channel) = if kind == "h" {
            (
                g.node(i - 1, j),
                g.node(i, j),
                g.hcolor(i, j),
                Channel::Ascending,
            )
        } else {
            (
                g.node(i, j - 1),
                g.node(i, j),
                g.vcolor(i, j),
                Channel::Descending,
            )
        };
        let got = lower
            .cover_box(upper)
            .zip(colour)
            .and_then(|(p, c)| palette.edge_label(inst, channel, p, c));
        let got = got.as_deref().unwrap_or(".");
        if got != want {
            bad.push(format!("{kind} edge ({i},{j}) shows {got} not {want}"));
        }
    };
    for (&j, row) in &fig.h {
        for (k, want) in row.iter().enumerate() {
            edge("h", k as u32 + 1, j, want);
        }
    }
    for (&j, row) in &fig.v {
        for (i, want) in row.iter().enumerate() {
            edge("v", i as u32, j, want);
        }
    }
    for (&j, row) in &fig.alpha {
        for (k, want) in row.iter().enumerate() {
            let label = palette.alpha_label(g.alpha(k as u32 + 1, j));
            let got = if label.is_empty() {
                "."
            } else {
                label.as_str()
            };
            if got != want {
                bad.push(format!("alpha ({},{j}) shows {got} not {want}", k + 1));
            }
        }
    }
    bad
}
