//! Weighted dual graded graphs on the lattice of shapes.

use std::fmt;

use thiserror::Error;

use crate::lattice::{Geometry, Point, Shape};

/// A closed-form weight on the points of a geometry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightFn {
    Const(u32),
    /// 1 on the diagonal, 2 elsewhere.
    Shifted,
}

impl WeightFn {
    pub fn at(self, p: Point) -> u32 {
        match self {
            WeightFn::Const(k) => k,
            WeightFn::Shifted => {
                if p.is_diagonal() {
                    1
                } else {
                    2
                }
            }
        }
    }

    pub fn max(self) -> u32 {
        match self {
            WeightFn::Const(k) => k,
            WeightFn::Shifted => 2,
        }
    }

    pub fn is_trivial(self) -> bool {
        self == WeightFn::Const(1)
    }
}

/// Which of the two graphs an edge belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Channel {
    /// G1, carries P colours.
    Ascending,
    /// G2, carries Q colours.
    Descending,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instantiation {
    pub name: String,
    pub geometry: Geometry,
    pub w1: WeightFn,
    pub w2: WeightFn,
    pub r: u32,
}

pub const BUILTIN_INSTANTIATIONS: [&str; 8] = [
    "unshifted-1",
    "unshifted-2",
    "unshifted-4",
    "unshifted-mixed",
    "shifted-1",
    "shifted-mixed",
    "shifted-column",
    "shifted-column-dual",
];

impl Instantiation {
    pub fn new(name: &str, geometry: Geometry, w1: WeightFn, w2: WeightFn, r: u32) -> Self {
        Instantiation {
            name: name.to_string(),
            geometry,
            w1,
            w2,
            r,
        }
    }

    pub fn builtin(name: &str) -> Option<Instantiation> {
        use Geometry::*;
        use WeightFn::*;
        let (g, w1, w2, r) = match name {
            "unshifted-1" => (Quadrant, Const(1), Const(1), 1),
            "unshifted-2" => (Quadrant, Const(1), Const(2), 2),
            "unshifted-4" => (Quadrant, Const(2), Const(2), 4),
            "unshifted-mixed" => (Quadrant, Const(2), Const(1), 2),
            "shifted-1" => (Octant, Const(1), Shifted, 1),
            "shifted-mixed" => (Octant, Shifted, Const(1), 1),
            "shifted-column" => (Octant, Shifted, Const(1), 1),
            "shifted-column-dual" => (Octant, Const(1), Shifted, 1),
            _ => return None,
        };
        Some(Instantiation::new(name, g, w1, w2, r))
    }

    pub fn builtins() -> Vec<Instantiation> {
        BUILTIN_INSTANTIATIONS
            .iter()
            .map(|n| Instantiation::builtin(n).expect("builtin"))
            .collect()
    }

    pub fn w1(&self, p: Point) -> u32 {
        self.w1.at(p)
    }

    pub fn w2(&self, p: Point) -> u32 {
        self.w2.at(p)
    }

    pub fn weight(&self, channel: Channel, p: Point) -> u32 {
        match channel {
            Channel::Ascending => self.w1(p),
            Channel::Descending => self.w2(p),
        }
    }

    /// Product weight, the single weight of the monoweighted view.
    pub fn w(&self, p: Point) -> u32 {
        self.w1(p) * self.w2(p)
    }

    /// The instantiation seen from the inverse side: channels swapped.
    pub fn swapped(&self) -> Instantiation {
        Instantiation {
            name: format!("{}-swapped", self.name),
            w1: self.w2,
            w2: self.w1,
            ..self.clone()
        }
    }

    pub fn weight_up(&self, s: &Shape) -> Vec<(Point, u32, u32)> {
        s.insertion_points()
            .into_iter()
            .map(|p| (p, self.w1(p), self.w2(p)))
            .collect()
    }

    pub fn verify_weight_equation(&self, s: &Shape) -> WeightReport {
        let down: u64 = s.deletion_points().iter().map(|&p| self.w(p) as u64).sum();
        let up: u64 = s.insertion_points().iter().map(|&p| self.w(p) as u64).sum();
        let lhs = down + self.r as u64;
        WeightReport {
            shape: s.clone(),
            lhs,
            rhs: up,
            ok: lhs == up,
        }
    }

    pub fn verify_instantiation(&self, max_size: usize) -> InstantiationReport {
        let shapes = Shape::all_up_to(self.geometry, max_size);
        let checked = shapes.len();
        let failures = shapes
            .iter()
            .map(|s| self.verify_weight_equation(s))
            .filter(|r| !r.ok)
            .collect();
        InstantiationReport {
            name: self.name.clone(),
            max_size,
            checked,
            failures,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightReport {
    pub shape: Shape,
    pub lhs: u64,
    pub rhs: u64,
    pub ok: bool,
}

impl fmt::Display for WeightReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "shape {} lhs {} rhs {} {}",
            self.shape,
            self.lhs,
            self.rhs,
            if self.ok { "ok" } else { "FAIL" }
        )
    }
}

#[derive(Clone, Debug)]
pub struct InstantiationReport {
    pub name: String,
    pub max_size: usize,
    pub checked: usize,
    pub failures: Vec<WeightReport>,
}

impl InstantiationReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EdgeError {
    #[error("{lower} -> {upper} is not a cover")]
    NotCover { lower: Shape, upper: Shape },
    #[error("colour {color} out of range 1..={max} on {channel:?} edge at {point}")]
    ColorOutOfRange {
        channel: Channel,
        point: Point,
        color: u32,
        max: u32,
    },
}

/// One of the parallel edges between two shapes in G1 or G2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredEdge {
    lower: Shape,
    upper: Shape,
    point: Point,
    channel: Channel,
    color: u32,
}

impl ColoredEdge {
    pub fn new(
        inst: &Instantiation,
        lower: Shape,
        upper: Shape,
        channel: Channel,
        color: u32,
    ) -> Result<Self, EdgeError> {
        let point = lower.cover_box(&upper).ok_or_else(|| EdgeError::NotCover {
            lower: lower.clone(),
            upper: upper.clone(),
        })?;
        let max = inst.weight(channel, point);
        if color == 0 || color > max {
            return Err(EdgeError::ColorOutOfRange {
                channel,
                point,
                color,
                max,
            });
        }
        Ok(ColoredEdge {
            lower,
            upper,
            point,
            channel,
            color,
        })
    }

    pub fn lower(&self) -> &Shape {
        &self.lower
    }

    pub fn upper(&self) -> &Shape {
        &self.upper
    }

    pub fn point(&self) -> Point {
        self.point
    }

    pub fn channel(&self) -> Channel {
        self.channel
    }

    pub fn color(&self) -> u32 {
        self.color
    }
}
