//! Points of the ambient poset, shapes as finite order ideals, and the
//! cover structure of the lattice of shapes.
//!
//! Two geometries are supported. The quadrant holds every point
//! `(row, col)` with positive coordinates and its shapes are ordinary
//! partitions. The octant holds the points with `row <= col` and its
//! shapes are strict partitions, row `k` occupying columns `k..k + len - 1`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// A box of the ambient poset, 1-based, English orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub row: u32,
    pub col: u32,
}

impl Point {
    pub const fn new(row: u32, col: u32) -> Self {
        Point { row, col }
    }

    pub fn transpose(self) -> Point {
        Point::new(self.col, self.row)
    }

    pub fn is_diagonal(self) -> bool {
        self.row == self.col
    }

    /// Product order on coordinates.
    pub fn is_below(self, other: Point) -> bool {
        self.row <= other.row && self.col <= other.col
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Geometry {
    Quadrant,
    Octant,
}

impl Geometry {
    pub fn contains(self, p: Point) -> bool {
        p.row >= 1
            && p.col >= 1
            && match self {
                Geometry::Quadrant => true,
                Geometry::Octant => p.row <= p.col,
            }
    }

    /// First column of row `row` inside the geometry.
    fn row_start(self, row: u32) -> u32 {
        match self {
            Geometry::Quadrant => 1,
            Geometry::Octant => row,
        }
    }

    /// Points covered by `p` inside the geometry.
    pub fn lower_covers(self, p: Point) -> impl Iterator<Item = Point> {
        let above = Point::new(p.row.wrapping_sub(1), p.col);
        let left = Point::new(p.row, p.col.wrapping_sub(1));
        [above, left].into_iter().filter(move |q| self.contains(*q))
    }

    pub fn name(self) -> &'static str {
        match self {
            Geometry::Quadrant => "quadrant",
            Geometry::Octant => "octant",
        }
    }
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("row lengths {0:?} are not weakly decreasing")]
    NotPartition(Vec<u32>),
    #[error("row lengths {0:?} are not strictly decreasing")]
    NotStrict(Vec<u32>),
    #[error("{point} is not an insertion point of {shape}")]
    NotInsertionPoint { shape: Shape, point: Point },
    #[error("{point} is not a deletion point of {shape}")]
    NotDeletionPoint { shape: Shape, point: Point },
    #[error("cannot combine a {0} shape with a {1} shape")]
    GeometryMismatch(Geometry, Geometry),
    #[error("transpose is only defined on quadrant shapes")]
    TransposeOctant,
    #[error("malformed shape {0:?}")]
    Parse(String),
    #[error("box set is not an order ideal of the {0}")]
    NotIdeal(Geometry),
}

/// A finite order ideal of a geometry, stored as its row lengths.
///
/// Trailing zero rows are never stored, so structural equality is shape
/// equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shape {
    geometry: Geometry,
    rows: Vec<u32>,
}

impl Shape {
    pub fn empty(geometry: Geometry) -> Self {
        Shape {
            geometry,
            rows: Vec::new(),
        }
    }

    pub fn new(geometry: Geometry, rows: impl Into<Vec<u32>>) -> Result<Self, ShapeError> {
        let mut rows = rows.into();
        while rows.last() == Some(&0) {
            rows.pop();
        }
        let ok = match geometry {
            Geometry::Quadrant => rows.windows(2).all(|w| w[0] >= w[1]),
            Geometry::Octant => rows.windows(2).all(|w| w[0] > w[1]),
        };
        if !ok || rows.contains(&0) {
            return Err(match geometry {
                Geometry::Quadrant => ShapeError::NotPartition(rows),
                Geometry::Octant => ShapeError::NotStrict(rows),
            });
        }
        Ok(Shape { geometry, rows })
    }

    /// Builds a shape from an arbitrary box set, checking it is an order ideal.
    pub fn from_boxes(
        geometry: Geometry,
        boxes: impl IntoIterator<Item = Point>,
    ) -> Result<Self, ShapeError> {
        let boxes: Vec<Point> = boxes.into_iter().collect();
        let mut rows: Vec<u32> = Vec::new();
        for p in &boxes {
            if !geometry.contains(*p) {
                return Err(ShapeError::NotIdeal(geometry));
            }
            let r = p.row as usize;
            if rows.len() < r {
                rows.resize(r, 0);
            }
            rows[r - 1] += 1;
        }
        let shape = Shape::new(geometry, rows).map_err(|_| ShapeError::NotIdeal(geometry))?;
        if shape.size() != boxes.len() || !boxes.iter().all(|p| shape.contains(*p)) {
            return Err(ShapeError::NotIdeal(geometry));
        }
        Ok(shape)
    }

    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Number of boxes, which is also the rank in the lattice of shapes.
    pub fn size(&self) -> usize {
        self.rows.iter().map(|&r| r as usize).sum()
    }

    pub fn smallest_part(&self) -> Option<u32> {
        self.rows.last().copied()
    }

    fn row_len(&self, row: u32) -> u32 {
        if row == 0 {
            return 0;
        }
        self.rows.get(row as usize - 1).copied().unwrap_or(0)
    }

    /// Column of the last box in `row`, or the column before the row start
    /// when the row is empty.
    fn row_end(&self, row: u32) -> u32 {
        self.geometry.row_start(row) + self.row_len(row) - 1
    }

    pub fn contains(&self, p: Point) -> bool {
        self.geometry.contains(p)
            && p.row as usize <= self.rows.len()
            && p.col >= self.geometry.row_start(p.row)
            && p.col <= self.row_end(p.row)
    }

    /// All boxes, row by row, west to east.
    pub fn boxes(&self) -> impl Iterator<Item = Point> + '_ {
        (1..=self.rows.len() as u32).flat_map(move |r| {
            (self.geometry.row_start(r)..=self.row_end(r)).map(move |c| Point::new(r, c))
        })
    }

    /// Maximal boxes, ordered northeast to southwest.
    pub fn deletion_points(&self) -> Vec<Point> {
        (1..=self.rows.len() as u32)
            .map(|r| Point::new(r, self.row_end(r)))
            .filter(|p| !self.contains(Point::new(p.row + 1, p.col)))
            .collect()
    }

    /// Minimal points of the complement, ordered northeast to southwest.
    pub fn insertion_points(&self) -> Vec<Point> {
        (1..=self.rows.len() as u32 + 1)
            .map(|r| Point::new(r, self.row_end(r) + 1))
            .filter(|p| {
                self.geometry.contains(*p)
                    && self.geometry.lower_covers(*p).all(|q| self.contains(q))
            })
            .collect()
    }

    pub fn add_box(&self, p: Point) -> Result<Shape, ShapeError> {
        if !self.insertion_points().contains(&p) {
            return Err(ShapeError::NotInsertionPoint {
                shape: self.clone(),
                point: p,
            });
        }
        let mut rows = self.rows.clone();
        let r = p.row as usize;
        if rows.len() < r {
            rows.push(0);
        }
        rows[r - 1] += 1;
        Ok(Shape {
            geometry: self.geometry,
            rows,
        })
    }

    pub fn remove_box(&self, p: Point) -> Result<Shape, ShapeError> {
        if !self.deletion_points().contains(&p) {
            return Err(ShapeError::NotDeletionPoint {
                shape: self.clone(),
                point: p,
            });
        }
        let mut rows = self.rows.clone();
        rows[p.row as usize - 1] -= 1;
        while rows.last() == Some(&0) {
            rows.pop();
        }
        Ok(Shape {
            geometry: self.geometry,
            rows,
        })
    }

    /// Every shape covering this one.
    pub fn upper_covers(&self) -> impl Iterator<Item = (Point, Shape)> + '_ {
        self.insertion_points().into_iter().map(move |p| {
            let s = self.add_box(p).expect("insertion point");
            (p, s)
        })
    }

    /// Every shape covered by this one.
    pub fn lower_covers(&self) -> impl Iterator<Item = (Point, Shape)> + '_ {
        self.deletion_points().into_iter().map(move |p| {
            let s = self.remove_box(p).expect("deletion point");
            (p, s)
        })
    }

    /// The box `upper - self` when `upper` covers `self`.
    pub fn cover_box(&self, upper: &Shape) -> Option<Point> {
        if self.geometry != upper.geometry || upper.rows.len() > self.rows.len() + 1 {
            return None;
        }
        let mut found = None;
        for r in 0..upper.rows.len().max(self.rows.len()) {
            let a = self.rows.get(r).copied().unwrap_or(0);
            let b = upper.rows.get(r).copied().unwrap_or(0);
            if a == b {
                continue;
            }
            if b != a + 1 || found.is_some() {
                return None;
            }
            let row = r as u32 + 1;
            found = Some(Point::new(row, self.geometry.row_start(row) + a));
        }
        found
    }

    pub fn is_covered_by(&self, upper: &Shape) -> bool {
        self.cover_box(upper).is_some()
    }

    /// Containment as order ideals.
    pub fn is_subshape(&self, other: &Shape) -> bool {
        self.geometry == other.geometry
            && self.rows.len() <= other.rows.len()
            && self.rows.iter().zip(&other.rows).all(|(a, b)| a <= b)
    }

    /// Least upper bound: the union of the two ideals.
    pub fn join(&self, other: &Shape) -> Result<Shape, ShapeError> {
        self.combine(other, u32::max)
    }

    /// Greatest lower bound: the intersection of the two ideals.
    pub fn meet(&self, other: &Shape) -> Result<Shape, ShapeError> {
        self.combine(other, u32::min)
    }

    fn combine(&self, other: &Shape, op: fn(u32, u32) -> u32) -> Result<Shape, ShapeError> {
        if self.geometry != other.geometry {
            return Err(ShapeError::GeometryMismatch(self.geometry, other.geometry));
        }
        let len = self.rows.len().max(other.rows.len());
        let rows: Vec<u32> = (0..len)
            .map(|r| {
                op(
                    self.rows.get(r).copied().unwrap_or(0),
                    other.rows.get(r).copied().unwrap_or(0),
                )
            })
            .collect();
        Shape::new(self.geometry, rows)
    }

    /// Conjugate partition.
    pub fn transpose(&self) -> Result<Shape, ShapeError> {
        if self.geometry != Geometry::Quadrant {
            return Err(ShapeError::TransposeOctant);
        }
        let width = self.rows.first().copied().unwrap_or(0);
        let rows = (1..=width)
            .map(|c| self.rows.iter().filter(|&&r| r >= c).count() as u32)
            .collect::<Vec<_>>();
        Ok(Shape {
            geometry: Geometry::Quadrant,
            rows,
        })
    }

    /// All shapes of exactly `size` boxes, in reverse lexicographic order of
    /// their row lengths.
    pub fn all_of_size(geometry: Geometry, size: usize) -> Vec<Shape> {
        fn rec(geometry: Geometry, left: u32, max: u32, acc: &mut Vec<u32>, out: &mut Vec<Shape>) {
            if left == 0 {
                out.push(Shape {
                    geometry,
                    rows: acc.clone(),
                });
                return;
            }
            for part in (1..=left.min(max)).rev() {
                acc.push(part);
                let next_max = match geometry {
                    Geometry::Quadrant => part,
                    Geometry::Octant => part - 1,
                };
                rec(geometry, left - part, next_max, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        rec(
            geometry,
            size as u32,
            size as u32,
            &mut Vec::new(),
            &mut out,
        );
        out
    }

    /// All shapes with at most `max_size` boxes, smallest first.
    pub fn all_up_to(geometry: Geometry, max_size: usize) -> Vec<Shape> {
        (0..=max_size)
            .flat_map(|n| Shape::all_of_size(geometry, n))
            .collect()
    }

    /// Parses a comma-separated list of parts; `0` or the empty string is the
    /// empty shape.
    pub fn parse(geometry: Geometry, text: &str) -> Result<Shape, ShapeError> {
        let text = text.trim();
        if text.is_empty() || text == "0" {
            return Ok(Shape::empty(geometry));
        }
        let rows = text
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| ShapeError::Parse(text.to_string()))?;
        Shape::new(geometry, rows)
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.rows.iter().map(|r| r.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Geometry {
    type Err = ShapeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "quadrant" | "unshifted" => Ok(Geometry::Quadrant),
            "octant" | "shifted" => Ok(Geometry::Octant),
            _ => Err(ShapeError::Parse(s.to_string())),
        }
    }
}
