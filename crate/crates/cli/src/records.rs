//! Line-oriented JSON records. One object per line, tagged by `record`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use growthkit::catalog::AlgorithmSpec;
use growthkit::growth::{CellCase, ColoredTableau, GrowthDiagram};
use growthkit::insdiag::Color;
use growthkit::{Channel, Correspondence, GeneralizedPermutation, Geometry, Shape};

#[derive(Debug, Error)]
pub enum RecordError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("no growth header record")]
    MissingHeader,
    #[error("missing {what} record at ({i},{j})")]
    Missing { what: &'static str, i: u32, j: u32 },
    #[error("record at ({i},{j}) lies outside a {n}x{m} grid")]
    OutOfGrid { i: u32, j: u32, n: u32, m: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "record", rename_all = "lowercase")]
pub enum Record {
    Growth {
        algorithm: String,
        geometry: String,
        n: u32,
        m: u32,
        gp: String,
    },
    Node {
        i: u32,
        j: u32,
        shape: String,
    },
    Hedge {
        i: u32,
        j: u32,
        color: Option<Color>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
    },
    Vedge {
        i: u32,
        j: u32,
        color: Option<Color>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
    },
    Cell {
        i: u32,
        j: u32,
        case: String,
        alpha: Color,
    },
    Tableau(TableauRecord),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableauRecord {
    pub which: String,
    pub geometry: String,
    pub rows: Vec<Vec<(u32, Color)>>,
}

impl TableauRecord {
    pub fn new(which: &str, t: &ColoredTableau) -> Self {
        TableauRecord {
            which: which.to_string(),
            geometry: t.shape().geometry().name().to_string(),
            rows: t.rows(),
        }
    }
}

pub fn case_name(c: CellCase) -> &'static str {
    match c {
        CellCase::Empty => "empty",
        CellCase::Alpha => "alpha",
        CellCase::PassNorth => "pass-north",
        CellCase::PassEast => "pass-east",
        CellCase::Bump => "bump",
        CellCase::Join => "join",
    }
}

fn parse_case(s: &str) -> Option<CellCase> {
    Some(match s {
        "empty" => CellCase::Empty,
        "alpha" => CellCase::Alpha,
        "pass-north" => CellCase::PassNorth,
        "pass-east" => CellCase::PassEast,
        "bump" => CellCase::Bump,
        "join" => CellCase::Join,
        _ => return None,
    })
}

fn label(
    alg: &AlgorithmSpec,
    lower: &Shape,
    upper: &Shape,
    colour: Option<Color>,
    channel: Channel,
) -> Option<String> {
    let (p, c) = lower.cover_box(upper).zip(colour)?;
    alg.palette().edge_label(alg.instantiation(), channel, p, c)
}

/// Every record of a growth diagram: header, nodes, edges, then cells.
pub fn growth_records(g: &GrowthDiagram, alg: &AlgorithmSpec) -> Vec<Record> {
    let (n, m) = (g.n(), g.m());
    let mut out = vec![Record::Growth {
        algorithm: alg.name().to_string(),
        geometry: alg.instantiation().geometry.name().to_string(),
        n,
        m,
        gp: g.gp().to_string(),
    }];
    for j in 0..=m {
        for i in 0..=n {
            out.push(Record::Node {
                i,
                j,
                shape: g.node(i, j).to_string(),
            });
        }
    }
    for j in 0..=m {
        for i in 1..=n {
            out.push(Record::Hedge {
                i,
                j,
                color: g.hcolor(i, j),
                label: label(
                    alg,
                    g.node(i - 1, j),
                    g.node(i, j),
                    g.hcolor(i, j),
                    Channel::Ascending,
                ),
            });
        }
    }
    for j in 1..=m {
        for i in 0..=n {
            out.push(Record::Vedge {
                i,
                j,
                color: g.vcolor(i, j),
                label: label(
                    alg,
                    g.node(i, j - 1),
                    g.node(i, j),
                    g.vcolor(i, j),
                    Channel::Descending,
                ),
            });
        }
    }
    for j in 1..=m {
        for i in 1..=n {
            out.push(Record::Cell {
                i,
                j,
                case: case_name(g.case(i, j)).to_string(),
                alpha: g.alpha(i, j),
            });
        }
    }
    out
}

pub fn write_growth(g: &GrowthDiagram, alg: &AlgorithmSpec) -> String {
    let mut s = String::new();
    for r in growth_records(g, alg) {
        s.push_str(&serde_json::to_string(&r).expect("serialisable"));
        s.push('\n');
    }
    s
}

/// Reads records back into a growth diagram. Labels are ignored; colours are
/// authoritative. Returns the algorithm name from the header.
pub fn read_growth(text: &str) -> Result<(String, GrowthDiagram), RecordError> {
    let mut records = Vec::new();
    for (k, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let r: Record = serde_json::from_str(line).map_err(|e| RecordError::Line {
            line: k + 1,
            message: e.to_string(),
        })?;
        records.push((k + 1, r));
    }
    let (algorithm, geometry, n, m, gp) = records
        .iter()
        .find_map(|(line, r)| match r {
            Record::Growth {
                algorithm,
                geometry,
                n,
                m,
                gp,
            } => Some((*line, algorithm, geometry, *n, *m, gp)),
            _ => None,
        })
        .map(|(line, a, g, n, m, gp)| {
            let bad = |message: String| RecordError::Line { line, message };
            let geometry: Geometry = g.parse().map_err(|_| bad(format!("bad geometry {g:?}")))?;
            let gp: GeneralizedPermutation = gp.parse().map_err(|e| bad(format!("{e}")))?;
            if gp.m() != m || gp.n() > n {
                return Err(bad("header dimensions disagree with gp".to_string()));
            }
            let gp = GeneralizedPermutation::new(n, gp.steps().to_vec())
                .map_err(|e| bad(format!("{e}")))?;
            Ok((a.clone(), geometry, n, m, gp))
        })
        .ok_or(RecordError::MissingHeader)??;

    let width = n as usize + 1;
    let len = width * (m as usize + 1);
    let mut nodes: Vec<Option<Shape>> = vec![None; len];
    let mut hcolors = vec![None; len];
    let mut vcolors = vec![None; len];
    let mut cases = vec![CellCase::Empty; len];
    let mut seen_h = vec![false; len];
    let mut seen_v = vec![false; len];
    let mut seen_c = vec![false; len];
    let slot = |i: u32, j: u32| -> Result<usize, RecordError> {
        if i > n || j > m {
            return Err(RecordError::OutOfGrid { i, j, n, m });
        }
        Ok(j as usize * width + i as usize)
    };
    for (line, r) in &records {
        let bad = |message: String| RecordError::Line {
            line: *line,
            message,
        };
        match r {
            Record::Growth { .. } | Record::Tableau(_) => {}
            Record::Node { i, j, shape } => {
                let s = Shape::parse(geometry, shape).map_err(|e| bad(e.to_string()))?;
                nodes[slot(*i, *j)?] = Some(s);
            }
            Record::Hedge { i, j, color, .. } => {
                let k = slot(*i, *j)?;
                hcolors[k] = *color;
                seen_h[k] = true;
            }
            Record::Vedge { i, j, color, .. } => {
                let k = slot(*i, *j)?;
                vcolors[k] = *color;
                seen_v[k] = true;
            }
            Record::Cell { i, j, case, .. } => {
                let k = slot(*i, *j)?;
                cases[k] = parse_case(case).ok_or_else(|| bad(format!("unknown case {case:?}")))?;
                seen_c[k] = true;
            }
        }
    }
    for j in 0..=m {
        for i in 0..=n {
            let k = j as usize * width + i as usize;
            let missing = |what| RecordError::Missing { what, i, j };
            if nodes[k].is_none() {
                return Err(missing("node"));
            }
            if i > 0 && !seen_h[k] {
                return Err(missing("hedge"));
            }
            if j > 0 && !seen_v[k] {
                return Err(missing("vedge"));
            }
            if i > 0 && j > 0 && !seen_c[k] {
                return Err(missing("cell"));
            }
        }
    }
    let nodes = nodes.into_iter().map(Option::unwrap).collect();
    let g = GrowthDiagram::from_parts(gp, nodes, hcolors, vcolors, cases)
        .expect("dimensions fixed by header");
    Ok((algorithm, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use growthkit::catalog;
    use growthkit::growth::run_growth;

    #[test]
    fn roundtrip_small() {
        let alg = catalog::get("left-right").unwrap();
        let gp = "2o 3 1".parse().unwrap();
        let g = run_growth(alg.as_ref(), &gp).unwrap();
        let text = write_growth(&g, &alg);
        assert!(text
            .lines()
            .next()
            .unwrap()
            .contains("\"record\":\"growth\""));
        let (name, back) = read_growth(&text).unwrap();
        assert_eq!(name, "left-right");
        assert_eq!(back, g);
    }

    #[test]
    fn detects_gaps() {
        let alg = catalog::get("rs-row").unwrap();
        let g = run_growth(alg.as_ref(), &"2 1".parse().unwrap()).unwrap();
        let text = write_growth(&g, &alg);
        let cut: Vec<&str> = text.lines().filter(|l| !l.contains("\"vedge\"")).collect();
        assert!(matches!(
            read_growth(&cut.join("\n")),
            Err(RecordError::Missing { what: "vedge", .. })
        ));
        assert!(matches!(
            read_growth("{}"),
            Err(RecordError::Line { line: 1, .. })
        ));
        assert!(matches!(read_growth(""), Err(RecordError::MissingHeader)));
    }
}
