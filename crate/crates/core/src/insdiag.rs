//! Insertion diagrams: the local bijection attached to a single shape,
//! stored as explicit arrows.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::lattice::{Geometry, Point, Shape};
use crate::wdgg::Instantiation;

pub type Color = u8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorPair {
    pub g1: Color,
    pub g2: Color,
}

impl ColorPair {
    pub const fn new(g1: Color, g2: Color) -> Self {
        ColorPair { g1, g2 }
    }

    pub const ONE: ColorPair = ColorPair::new(1, 1);

    pub fn swapped(self) -> ColorPair {
        ColorPair::new(self.g2, self.g1)
    }

    fn fits(self, inst: &Instantiation, p: Point) -> bool {
        self.g1 >= 1 && self.g2 >= 1 && self.g1 as u32 <= inst.w1(p) && self.g2 as u32 <= inst.w2(p)
    }
}

impl fmt::Display for ColorPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{},{}>", self.g1, self.g2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Arrow {
    Alpha {
        color: Color,
        target: Point,
        out: ColorPair,
    },
    Bump {
        source: Point,
        input: ColorPair,
        target: Point,
        out: ColorPair,
    },
}

impl Arrow {
    pub fn target(&self) -> Point {
        match *self {
            Arrow::Alpha { target, .. } | Arrow::Bump { target, .. } => target,
        }
    }

    pub fn out(&self) -> ColorPair {
        match *self {
            Arrow::Alpha { out, .. } | Arrow::Bump { out, .. } => out,
        }
    }
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arrow::Alpha { color, target, out } => {
                write!(f, "alpha {color} -> {target} {out}")
            }
            Arrow::Bump {
                source,
                input,
                target,
                out,
            } => write!(f, "bump {source} {input} -> {target} {out}"),
        }
    }
}

/// What an arrow into an insertion point came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preimage {
    Alpha(Color),
    Bump(Point, ColorPair),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PsiError {
    #[error("no alpha arrow with colour {0}")]
    NoAlpha(Color),
    #[error("no bump arrow from {0} with colours {1}")]
    NoBump(Point, ColorPair),
    #[error("no arrow into {0} with colours {1}")]
    NoPreimage(Point, ColorPair),
    #[error("arrow target {0} is not an insertion point")]
    BadTarget(Point),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Violation {
    /// Alpha colour appears a number of times other than once.
    AlphaCount {
        color: Color,
        count: usize,
    },
    AlphaOutOfRange {
        color: Color,
    },
    /// A deletion point is missing a source pair or has a duplicate.
    Source {
        point: Point,
        colors: ColorPair,
        count: usize,
    },
    /// An insertion point is missing an out pair or has a duplicate.
    Target {
        point: Point,
        colors: ColorPair,
        count: usize,
    },
    NotDeletionPoint(Point),
    NotInsertionPoint(Point),
    ColorOutOfRange {
        point: Point,
        colors: ColorPair,
    },
    GeometryMismatch,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::AlphaCount { color, count } => {
                write!(f, "constraint 1: alpha colour {color} has {count} arrows")
            }
            Violation::AlphaOutOfRange { color } => {
                write!(f, "constraint 1: alpha colour {color} out of range")
            }
            Violation::Source {
                point,
                colors,
                count,
            } => write!(
                f,
                "constraint 2: deletion point {point} colours {colors} has {count} arrows"
            ),
            Violation::Target {
                point,
                colors,
                count,
            } => write!(
                f,
                "constraint 3: insertion point {point} colours {colors} has {count} arrows"
            ),
            Violation::NotDeletionPoint(p) => write!(f, "{p} is not a deletion point"),
            Violation::NotInsertionPoint(p) => write!(f, "{p} is not an insertion point"),
            Violation::ColorOutOfRange { point, colors } => {
                write!(f, "colours {colors} out of range at {point}")
            }
            Violation::GeometryMismatch => f.write_str("shape geometry differs from instantiation"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InsertionDiagram {
    shape: Shape,
    arrows: Vec<Arrow>,
}

impl InsertionDiagram {
    pub fn new(shape: Shape, mut arrows: Vec<Arrow>) -> Self {
        arrows.sort();
        InsertionDiagram { shape, arrows }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn validate(&self, inst: &Instantiation) -> ValidationReport {
        let mut v = Vec::new();
        if self.shape.geometry() != inst.geometry {
            v.push(Violation::GeometryMismatch);
            return ValidationReport { violations: v };
        }
        let dels: BTreeSet<Point> = self.shape.deletion_points().into_iter().collect();
        let ins: BTreeSet<Point> = self.shape.insertion_points().into_iter().collect();

        let mut alpha: BTreeMap<Color, usize> = BTreeMap::new();
        let mut sources: BTreeMap<(Point, ColorPair), usize> = BTreeMap::new();
        let mut targets: BTreeMap<(Point, ColorPair), usize> = BTreeMap::new();
        for a in &self.arrows {
            let t = a.target();
            if !ins.contains(&t) {
                v.push(Violation::NotInsertionPoint(t));
                continue;
            }
            if !a.out().fits(inst, t) {
                v.push(Violation::ColorOutOfRange {
                    point: t,
                    colors: a.out(),
                });
            }
            *targets.entry((t, a.out())).or_default() += 1;
            match *a {
                Arrow::Alpha { color, .. } => {
                    if color == 0 || color as u32 > inst.r {
                        v.push(Violation::AlphaOutOfRange { color });
                    }
                    *alpha.entry(color).or_default() += 1;
                }
                Arrow::Bump { source, input, .. } => {
                    if !dels.contains(&source) {
                        v.push(Violation::NotDeletionPoint(source));
                        continue;
                    }
                    if !input.fits(inst, source) {
                        v.push(Violation::ColorOutOfRange {
                            point: source,
                            colors: input,
                        });
                    }
                    *sources.entry((source, input)).or_default() += 1;
                }
            }
        }

        for c in 1..=inst.r as Color {
            let count = alpha.get(&c).copied().unwrap_or(0);
            if count != 1 {
                v.push(Violation::AlphaCount { color: c, count });
            }
        }
        for &p in &dels {
            for colors in all_pairs(inst, p) {
                let count = sources.get(&(p, colors)).copied().unwrap_or(0);
                if count != 1 {
                    v.push(Violation::Source {
                        point: p,
                        colors,
                        count,
                    });
                }
            }
        }
        for &q in &ins {
            for colors in all_pairs(inst, q) {
                let count = targets.get(&(q, colors)).copied().unwrap_or(0);
                if count != 1 {
                    v.push(Violation::Target {
                        point: q,
                        colors,
                        count,
                    });
                }
            }
        }
        ValidationReport { violations: v }
    }

    fn lookup(&self, p: impl Fn(&Arrow) -> bool) -> Option<&Arrow> {
        self.arrows.iter().find(|a| p(a))
    }

    fn grow(&self, a: &Arrow) -> Result<(Shape, ColorPair), PsiError> {
        let s = self
            .shape
            .add_box(a.target())
            .map_err(|_| PsiError::BadTarget(a.target()))?;
        Ok((s, a.out()))
    }

    pub fn psi_insert(&self, color: Color) -> Result<(Shape, ColorPair), PsiError> {
        let a = self
            .lookup(|a| matches!(a, Arrow::Alpha { color: c, .. } if *c == color))
            .ok_or(PsiError::NoAlpha(color))?;
        self.grow(a)
    }

    pub fn psi_bump(&self, p: Point, input: ColorPair) -> Result<(Shape, ColorPair), PsiError> {
        let a = self
            .lookup(|a| {
                matches!(a, Arrow::Bump { source, input: i, .. } if *source == p && *i == input)
            })
            .ok_or(PsiError::NoBump(p, input))?;
        self.grow(a)
    }

    pub fn psi_inverse(&self, q: Point, out: ColorPair) -> Result<Preimage, PsiError> {
        let a = self
            .lookup(|a| a.target() == q && a.out() == out)
            .ok_or(PsiError::NoPreimage(q, out))?;
        Ok(match *a {
            Arrow::Alpha { color, .. } => Preimage::Alpha(color),
            Arrow::Bump { source, input, .. } => Preimage::Bump(source, input),
        })
    }

    /// The same arrows with colours erased, for comparing geometry alone.
    pub fn skeleton(&self) -> BTreeSet<(Option<Point>, Point)> {
        self.arrows
            .iter()
            .map(|a| match *a {
                Arrow::Alpha { target, .. } => (None, target),
                Arrow::Bump { source, target, .. } => (Some(source), target),
            })
            .collect()
    }

    /// Applies `f` to every arrow, keeping `shape` as given.
    pub fn map_arrows(&self, shape: Shape, f: impl Fn(&Arrow) -> Arrow) -> InsertionDiagram {
        InsertionDiagram::new(shape, self.arrows.iter().map(f).collect())
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("geometry {}\nshape {}\n", self.shape.geometry(), self.shape);
        for a in &self.arrows {
            s.push_str(&a.to_string());
            s.push('\n');
        }
        s
    }

    /// Parses the line format written by [`InsertionDiagram::to_text`].
    /// Blank lines and `#` comments are ignored; the geometry line is
    /// optional and defaults to `geometry`.
    pub fn parse_text(text: &str, geometry: Geometry) -> Result<InsertionDiagram, ParseError> {
        let mut geometry = geometry;
        let mut shape = None;
        let mut arrows = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| ParseError {
                line: no + 1,
                message: msg.to_string(),
            };
            let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            match head {
                "geometry" => {
                    geometry = rest.parse().map_err(|_| err("unknown geometry"))?;
                }
                "shape" => {
                    shape = Some(Shape::parse(geometry, rest).map_err(|e| err(&e.to_string()))?);
                }
                "alpha" => {
                    let (lhs, rhs) = rest.split_once("->").ok_or_else(|| err("missing ->"))?;
                    let color = lhs.trim().parse().map_err(|_| err("bad alpha colour"))?;
                    let (target, out) = parse_end(rhs).ok_or_else(|| err("bad target"))?;
                    arrows.push(Arrow::Alpha { color, target, out });
                }
                "bump" => {
                    let (lhs, rhs) = rest.split_once("->").ok_or_else(|| err("missing ->"))?;
                    let (source, input) = parse_end(lhs).ok_or_else(|| err("bad source"))?;
                    let (target, out) = parse_end(rhs).ok_or_else(|| err("bad target"))?;
                    arrows.push(Arrow::Bump {
                        source,
                        input,
                        target,
                        out,
                    });
                }
                _ => return Err(err("expected geometry, shape, alpha or bump")),
            }
        }
        let shape = shape.ok_or(ParseError {
            line: 0,
            message: "missing shape line".into(),
        })?;
        Ok(InsertionDiagram::new(shape, arrows))
    }
}

impl fmt::Display for InsertionDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

// "(r,c) <g1,g2>"
fn parse_end(s: &str) -> Option<(Point, ColorPair)> {
    let s = s.trim();
    let open = s.find('(')?;
    let close = s.find(')')?;
    let (r, c) = s[open + 1..close].split_once(',')?;
    let p = Point::new(r.trim().parse().ok()?, c.trim().parse().ok()?);
    let rest = s[close + 1..].trim();
    let inner = rest.strip_prefix('<')?.strip_suffix('>')?;
    let (a, b) = inner.split_once(',')?;
    Some((
        p,
        ColorPair::new(a.trim().parse().ok()?, b.trim().parse().ok()?),
    ))
}

fn all_pairs(inst: &Instantiation, p: Point) -> impl Iterator<Item = ColorPair> {
    let (w1, w2) = (inst.w1(p) as Color, inst.w2(p) as Color);
    (1..=w1).flat_map(move |a| (1..=w2).map(move |b| ColorPair::new(a, b)))
}

/// A family of insertion diagrams, one per shape, under one instantiation.
pub trait Correspondence: Send + Sync {
    fn instantiation(&self) -> &Instantiation;
    fn diagram(&self, shape: &Shape) -> Arc<InsertionDiagram>;
}
