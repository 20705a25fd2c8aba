//! The built-in insertion algorithms, each a generator of insertion
//! diagrams for every shape.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use thiserror::Error;

use crate::insdiag::{Arrow, Color, ColorPair, Correspondence, InsertionDiagram};
use crate::lattice::{Point, Shape};
use crate::wdgg::{Channel, Instantiation};

/// How edge colours of one channel are shown.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EdgeLabels {
    /// The channel has weight 1 everywhere; nothing is shown.
    Hidden,
    /// `labels[c-1]` for colour `c` on weight-2 boxes, `unit` on weight-1 boxes.
    Shown { labels: Vec<String>, unit: String },
}

/// Presentation of integer colours, fixed per algorithm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Palette {
    pub alpha: Vec<String>,
    pub g1: EdgeLabels,
    pub g2: EdgeLabels,
    /// Tableau suffix per colour, `marks[c-1]`.
    pub p_marks: Vec<String>,
    pub q_marks: Vec<String>,
}

fn strs(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

impl Palette {
    fn new(alpha: &[&str], g1: Option<(&[&str], &str)>, g2: Option<(&[&str], &str)>) -> Self {
        let edge = |e: Option<(&[&str], &str)>| match e {
            None => EdgeLabels::Hidden,
            Some((l, u)) => EdgeLabels::Shown {
                labels: strs(l),
                unit: u.to_string(),
            },
        };
        Palette {
            alpha: strs(alpha),
            g1: edge(g1),
            g2: edge(g2),
            p_marks: strs(&["", "o"]),
            q_marks: strs(&["", "o"]),
        }
    }

    fn with_q_marks(mut self, marks: &[&str]) -> Self {
        self.q_marks = strs(marks);
        self
    }

    pub fn alpha_label(&self, c: Color) -> String {
        if c == 0 {
            return String::new();
        }
        self.alpha
            .get(c as usize - 1)
            .cloned()
            .unwrap_or_else(|| c.to_string())
    }

    pub fn edge_label(
        &self,
        inst: &Instantiation,
        channel: Channel,
        p: Point,
        c: Color,
    ) -> Option<String> {
        let labels = match channel {
            Channel::Ascending => &self.g1,
            Channel::Descending => &self.g2,
        };
        match labels {
            EdgeLabels::Hidden => None,
            EdgeLabels::Shown { labels, unit } => Some(if inst.weight(channel, p) == 1 {
                unit.clone()
            } else {
                labels
                    .get(c as usize - 1)
                    .cloned()
                    .unwrap_or_else(|| c.to_string())
            }),
        }
    }

    /// Colour for a label, given the weight of the box it sits on.
    pub fn edge_color(&self, channel: Channel, weight: u32, label: &str) -> Option<Color> {
        let labels = match channel {
            Channel::Ascending => &self.g1,
            Channel::Descending => &self.g2,
        };
        match labels {
            EdgeLabels::Hidden => Some(1),
            EdgeLabels::Shown { labels, unit } => {
                if weight == 1 {
                    (label == unit).then_some(1)
                } else {
                    labels
                        .iter()
                        .position(|l| l == label)
                        .map(|k| k as Color + 1)
                }
            }
        }
    }

    pub fn mark(&self, channel: Channel, c: Color) -> &str {
        let marks = match channel {
            Channel::Ascending => &self.p_marks,
            Channel::Descending => &self.q_marks,
        };
        marks.get(c as usize - 1).map(String::as_str).unwrap_or("?")
    }
}

pub type Generator = dyn Fn(&Shape) -> InsertionDiagram + Send + Sync;

pub struct AlgorithmSpec {
    name: String,
    instantiation: Instantiation,
    palette: Palette,
    generator: Arc<Generator>,
    cache: RwLock<HashMap<Shape, Arc<InsertionDiagram>>>,
}

impl fmt::Debug for AlgorithmSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlgorithmSpec")
            .field("name", &self.name)
            .field("instantiation", &self.instantiation.name)
            .finish()
    }
}

impl AlgorithmSpec {
    pub fn new(
        name: &str,
        instantiation: Instantiation,
        palette: Palette,
        generator: Arc<Generator>,
    ) -> Self {
        AlgorithmSpec {
            name: name.to_string(),
            instantiation,
            palette,
            generator,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn palette(&self) -> &Palette {
        &self.palette
    }

    pub fn generator(&self) -> Arc<Generator> {
        self.generator.clone()
    }

    /// Uncached generation.
    pub fn generate(&self, shape: &Shape) -> Result<InsertionDiagram, CatalogError> {
        if shape.geometry() != self.instantiation.geometry {
            return Err(CatalogError::GeometryMismatch {
                algorithm: self.name.clone(),
            });
        }
        Ok((self.generator)(shape))
    }
}

impl Correspondence for AlgorithmSpec {
    fn instantiation(&self) -> &Instantiation {
        &self.instantiation
    }

    fn diagram(&self, shape: &Shape) -> Arc<InsertionDiagram> {
        if let Some(d) = self.cache.read().expect("cache lock").get(shape) {
            return d.clone();
        }
        let d = Arc::new((self.generator)(shape));
        self.cache
            .write()
            .expect("cache lock")
            .entry(shape.clone())
            .or_insert(d)
            .clone()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown algorithm {0:?}")]
    Unknown(String),
    #[error("shape geometry does not match algorithm {algorithm}")]
    GeometryMismatch { algorithm: String },
}

pub const ALGORITHM_NAMES: [&str; 12] = [
    "rs-row",
    "rs-col",
    "left-right",
    "mclarnan-fairy",
    "jitter",
    "sagan1",
    "worley-sagan",
    "mixed",
    "double-circle",
    "shifted-mixed",
    "shifted-column",
    "dual-shifted-column",
];

pub fn list_algorithms() -> &'static [Arc<AlgorithmSpec>] {
    static REGISTRY: OnceLock<Vec<Arc<AlgorithmSpec>>> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        ALGORITHM_NAMES
            .iter()
            .map(|n| Arc::new(build(n).expect("registered name")))
            .collect()
    })
}

pub fn get(name: &str) -> Result<Arc<AlgorithmSpec>, CatalogError> {
    list_algorithms()
        .iter()
        .find(|a| a.name == name)
        .cloned()
        .ok_or_else(|| CatalogError::Unknown(name.to_string()))
}

pub fn generate(name: &str, shape: &Shape) -> Result<InsertionDiagram, CatalogError> {
    get(name)?.generate(shape)
}

type ArrowFn = fn(&Shape) -> Vec<Arrow>;

fn build(name: &str) -> Option<AlgorithmSpec> {
    let x = &["X"][..];
    let uc = &["U", "C"][..];
    let br = &["B", "R"][..];
    let (inst, palette, gen): (&str, Palette, ArrowFn) = match name {
        "rs-row" => ("unshifted-1", Palette::new(x, None, None), rs_row),
        "rs-col" => ("unshifted-1", Palette::new(x, None, None), rs_col),
        "mclarnan-fairy" => ("unshifted-1", Palette::new(x, None, None), mclarnan),
        "left-right" => (
            "unshifted-2",
            Palette::new(uc, None, Some((uc, "U"))),
            left_right,
        ),
        "jitter" => (
            "unshifted-2",
            Palette::new(uc, None, Some((uc, "U"))),
            jitter,
        ),
        "mixed" => (
            "unshifted-mixed",
            Palette::new(uc, Some((uc, "U")), None),
            mixed,
        ),
        "double-circle" => (
            "unshifted-4",
            Palette::new(&["UU", "CU", "UC", "CC"], Some((uc, "U")), Some((uc, "U")))
                .with_q_marks(&["", "b"]),
            double_circle,
        ),
        "sagan1" => ("shifted-1", Palette::new(x, None, Some((br, "-"))), sagan1),
        "worley-sagan" => ("shifted-1", Palette::new(x, None, Some((br, "-"))), worley),
        "shifted-mixed" => (
            "shifted-mixed",
            Palette::new(x, Some((uc, "-")), None),
            shifted_mixed,
        ),
        "shifted-column" => (
            "shifted-column",
            Palette::new(x, Some((uc, "U")), None),
            shifted_column,
        ),
        "dual-shifted-column" => (
            "shifted-column-dual",
            Palette::new(x, None, Some((uc, "U"))),
            dual_shifted_column,
        ),
        _ => return None,
    };
    let generator: Arc<Generator> =
        Arc::new(move |s: &Shape| InsertionDiagram::new(s.clone(), gen(s)));
    Some(AlgorithmSpec::new(
        name,
        Instantiation::builtin(inst)?,
        palette,
        generator,
    ))
}

const ONE: ColorPair = ColorPair::ONE;

fn alpha(color: Color, target: Point, out: ColorPair) -> Arrow {
    Arrow::Alpha { color, target, out }
}

fn bump(source: Point, input: ColorPair, target: Point, out: ColorPair) -> Arrow {
    Arrow::Bump {
        source,
        input,
        target,
        out,
    }
}

fn corners(s: &Shape) -> (Vec<Point>, Vec<Point>) {
    (s.insertion_points(), s.deletion_points())
}

fn rs_row(s: &Shape) -> Vec<Arrow> {
    let (q, p) = corners(s);
    let mut v = vec![alpha(1, q[0], ONE)];
    v.extend(
        p.iter()
            .enumerate()
            .map(|(k, &pk)| bump(pk, ONE, q[k + 1], ONE)),
    );
    v
}

fn rs_col(s: &Shape) -> Vec<Arrow> {
    let (q, p) = corners(s);
    let mut v = vec![alpha(1, q[p.len()], ONE)];
    v.extend(
        p.iter()
            .enumerate()
            .map(|(k, &pk)| bump(pk, ONE, q[k], ONE)),
    );
    v
}

// Deletion points matched to insertion points in reverse order.
fn mclarnan(s: &Shape) -> Vec<Arrow> {
    let (q, p) = corners(s);
    let d = p.len();
    let mut v = vec![alpha(1, q[0], ONE)];
    v.extend(
        p.iter()
            .enumerate()
            .map(|(k, &pk)| bump(pk, ONE, q[d - k], ONE)),
    );
    v
}

/// Two-colour quadrant pattern: colour pairs in `south` move one row down,
/// the others stay in their own row. `out` recolours every arrow.
fn two_chains(
    s: &Shape,
    alphas: &[(Color, ColorPair)],
    south: &[ColorPair],
    east: &[ColorPair],
    out: impl Fn(ColorPair) -> ColorPair,
) -> Vec<Arrow> {
    let (q, p) = corners(s);
    let d = p.len();
    let mut v = Vec::new();
    for &(c, pair) in alphas {
        // southward chains start at the northeast point, eastward ones at the southwest
        let target = if east.contains(&pair) { q[d] } else { q[0] };
        v.push(alpha(c, target, out(pair)));
    }
    for (k, &pk) in p.iter().enumerate() {
        for &c in south {
            v.push(bump(pk, c, q[k + 1], out(c)));
        }
        for &c in east {
            v.push(bump(pk, c, q[k], out(c)));
        }
    }
    v
}

const UU: ColorPair = ColorPair::new(1, 1);
const CU: ColorPair = ColorPair::new(2, 1);
const UC: ColorPair = ColorPair::new(1, 2);
const CC: ColorPair = ColorPair::new(2, 2);

fn left_right(s: &Shape) -> Vec<Arrow> {
    two_chains(s, &[(1, UU), (2, UC)], &[UU], &[UC], |c| c)
}

fn jitter(s: &Shape) -> Vec<Arrow> {
    two_chains(s, &[(1, UU), (2, UC)], &[UU], &[UC], |c| {
        ColorPair::new(c.g1, 3 - c.g2)
    })
}

fn mixed(s: &Shape) -> Vec<Arrow> {
    two_chains(s, &[(1, UU), (2, CU)], &[UU], &[CU], |c| c)
}

fn double_circle(s: &Shape) -> Vec<Arrow> {
    two_chains(
        s,
        &[(1, UU), (2, CU), (3, UC), (4, CC)],
        &[UU, CC],
        &[UC, CU],
        |c| c,
    )
}

/// Octant templates keyed on the smallest part.
enum Template {
    Empty,
    /// Smallest part 1: the last deletion point is diagonal.
    LastOne,
    /// Smallest part above 1: the last insertion point is diagonal.
    LastMore,
}

fn template(s: &Shape) -> Template {
    match s.smallest_part() {
        None => Template::Empty,
        Some(1) => Template::LastOne,
        Some(_) => Template::LastMore,
    }
}

const B: ColorPair = ColorPair::new(1, 1);
const R: ColorPair = ColorPair::new(1, 2);

fn sagan1(s: &Shape) -> Vec<Arrow> {
    let (q, p) = corners(s);
    let d = p.len();
    let mut v = vec![alpha(1, q[0], B)];
    if d == 0 {
        return v;
    }
    for (k, &pk) in p[..d - 1].iter().enumerate() {
        v.push(bump(pk, B, q[k + 1], B));
        v.push(bump(pk, R, q[k + 1], R));
    }
    let last = p[d - 1];
    match template(s) {
        Template::LastOne => v.push(bump(last, ONE, q[0], R)),
        _ => {
            v.push(bump(last, B, q[d], ONE));
            v.push(bump(last, R, q[0], R));
        }
    }
    v
}

fn worley(s: &Shape) -> Vec<Arrow> {
    let (q, p) = corners(s);
    let d = p.len();
    let mut v = vec![alpha(1, q[0], B)];
    if d == 0 {
        return v;
    }
    for (k, &pk) in p[..d - 1].iter().enumerate() {
        v.push(bump(pk, B, q[k + 1], B));
        v.push(bump(pk, R, q[k], R));
    }
    let last = p[d - 1];
    match template(s) {
        Template::LastOne => v.push(bump(last, ONE, q[d - 1], R)),
        _ => {
            v.push(bump(last, B, q[d], ONE));
            v.push(bump(last, R, q[d - 1], R));
        }
    }
    v
}

fn swap_channels(arrows: Vec<Arrow>) -> Vec<Arrow> {
    arrows
        .into_iter()
        .map(|a| match a {
            Arrow::Alpha { color, target, out } => alpha(color, target, out.swapped()),
            Arrow::Bump {
                source,
                input,
                target,
                out,
            } => bump(source, input.swapped(), target, out.swapped()),
        })
        .collect()
}

fn shifted_mixed(s: &Shape) -> Vec<Arrow> {
    swap_channels(worley(s))
}

// Colours on G1: U = (1,1), C = (2,1).
fn shifted_column(s: &Shape) -> Vec<Arrow> {
    let (q, p) = corners(s);
    let d = p.len();
    let mut v = Vec::new();
    match template(s) {
        Template::Empty => v.push(alpha(1, q[0], ONE)),
        Template::LastOne => {
            for (k, &pk) in p[..d - 1].iter().enumerate() {
                v.push(bump(pk, UU, q[k], UU));
                v.push(bump(pk, CU, q[k], CU));
            }
            v.push(bump(p[d - 1], ONE, q[d - 1], ONE));
            v.push(alpha(1, q[d - 1], CU));
        }
        Template::LastMore => {
            for (k, &pk) in p.iter().enumerate() {
                v.push(bump(pk, UU, q[k], UU));
                v.push(bump(pk, CU, q[k], CU));
            }
            v.push(alpha(1, q[d], ONE));
        }
    }
    v
}

fn dual_shifted_column(s: &Shape) -> Vec<Arrow> {
    swap_channels(shifted_column(s))
}
