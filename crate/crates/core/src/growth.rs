//! Growth diagrams: the local cell rule, whole-grid evaluation, the P and Q
//! tableaux, and the inverse sweep.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::insdiag::{Color, ColorPair, Correspondence, Preimage, PsiError};
use crate::lattice::{Geometry, Point, Shape};
use crate::wdgg::{Channel, Instantiation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GpError {
    #[error("value {0} used twice")]
    DuplicateValue(u32),
    #[error("value {value} outside 1..={n}")]
    ValueOutOfRange { value: u32, n: u32 },
    #[error("colour {color} outside 1..={r}")]
    ColorOutOfRange { color: Color, r: u32 },
    #[error("token {index} {token:?} is malformed")]
    Malformed { index: usize, token: String },
}

/// A 0/colour matrix with at most one nonzero entry per row and column,
/// stored row by row: `steps[j-1]` is the column and colour in row `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneralizedPermutation {
    n: u32,
    steps: Vec<Option<(u32, Color)>>,
}

impl GeneralizedPermutation {
    pub fn new(n: u32, steps: Vec<Option<(u32, Color)>>) -> Result<Self, GpError> {
        let mut seen = vec![false; n as usize + 1];
        for &(i, c) in steps.iter().flatten() {
            if i == 0 || i > n {
                return Err(GpError::ValueOutOfRange { value: i, n });
            }
            if c == 0 {
                return Err(GpError::ColorOutOfRange { color: c, r: 0 });
            }
            if std::mem::replace(&mut seen[i as usize], true) {
                return Err(GpError::DuplicateValue(i));
            }
        }
        Ok(GeneralizedPermutation { n, steps })
    }

    /// An uncoloured permutation in one-line notation.
    pub fn from_word(word: &[u32]) -> Result<Self, GpError> {
        let n = word.iter().copied().max().unwrap_or(0);
        GeneralizedPermutation::new(n, word.iter().map(|&i| Some((i, 1))).collect())
    }

    pub fn from_colored(word: &[(u32, Color)]) -> Result<Self, GpError> {
        let n = word.iter().map(|w| w.0).max().unwrap_or(0);
        GeneralizedPermutation::new(n, word.iter().map(|&w| Some(w)).collect())
    }

    /// Width: the number of columns (values).
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Height: the number of rows (time steps).
    pub fn m(&self) -> u32 {
        self.steps.len() as u32
    }

    pub fn steps(&self) -> &[Option<(u32, Color)>] {
        &self.steps
    }

    /// Entries as `(column, row, colour)`.
    pub fn entries(&self) -> impl Iterator<Item = (u32, u32, Color)> + '_ {
        self.steps
            .iter()
            .enumerate()
            .filter_map(|(j, s)| s.map(|(i, c)| (i, j as u32 + 1, c)))
    }

    /// Colour at column `i`, row `j`, or 0.
    pub fn alpha(&self, i: u32, j: u32) -> Color {
        match self.steps.get(j as usize - 1) {
            Some(Some((v, c))) if *v == i => *c,
            _ => 0,
        }
    }

    pub fn max_color(&self) -> Color {
        self.steps.iter().flatten().map(|s| s.1).max().unwrap_or(0)
    }

    /// Every row and every column holds an entry.
    pub fn is_full(&self) -> bool {
        self.m() == self.n && self.steps.iter().all(|s| s.is_some())
    }

    /// Transpose of the matrix: rows become columns, colours ride along.
    pub fn inverse(&self) -> GeneralizedPermutation {
        let mut steps = vec![None; self.n as usize];
        for (i, j, c) in self.entries() {
            steps[i as usize - 1] = Some((j, c));
        }
        GeneralizedPermutation { n: self.m(), steps }
    }

    pub fn map_colors(&self, f: impl Fn(Color) -> Color) -> GeneralizedPermutation {
        GeneralizedPermutation {
            n: self.n,
            steps: self
                .steps
                .iter()
                .map(|s| s.map(|(i, c)| (i, f(c))))
                .collect(),
        }
    }

    /// Entries with value at most `i_max`, empty steps dropped and width cut.
    pub fn subword(&self, i_max: u32) -> GeneralizedPermutation {
        GeneralizedPermutation {
            n: i_max.min(self.n),
            steps: self
                .steps
                .iter()
                .filter_map(|s| s.filter(|(i, _)| *i <= i_max).map(Some))
                .collect(),
        }
    }
}

/// Suffix for a colour in the compact one-line form.
pub fn color_suffix(c: Color) -> &'static str {
    match c {
        1 => "",
        2 => "o",
        3 => "b",
        4 => "ob",
        _ => "?",
    }
}

fn parse_suffix(s: &str) -> Option<Color> {
    match s {
        "" => Some(1),
        "o" => Some(2),
        "b" => Some(3),
        "ob" => Some(4),
        _ => None,
    }
}

impl fmt::Display for GeneralizedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> = self
            .steps
            .iter()
            .map(|s| match s {
                Some((i, c)) => format!("{i}{}", color_suffix(*c)),
                None => "_".to_string(),
            })
            .collect();
        f.write_str(&toks.join(" "))
    }
}

impl FromStr for GeneralizedPermutation {
    type Err = GpError;

    /// Space or comma separated tokens; `_` is an empty step. The width is
    /// the largest value.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut steps = Vec::new();
        for (index, tok) in s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .enumerate()
        {
            if tok == "_" {
                steps.push(None);
                continue;
            }
            let digits = tok.find(|c: char| !c.is_ascii_digit()).unwrap_or(tok.len());
            let bad = || GpError::Malformed {
                index: index + 1,
                token: tok.to_string(),
            };
            let value: u32 = tok[..digits].parse().map_err(|_| bad())?;
            let color = parse_suffix(&tok[digits..]).ok_or_else(bad)?;
            steps.push(Some((value, color)));
        }
        let n = steps.iter().flatten().map(|s| s.0).max().unwrap_or(0);
        GeneralizedPermutation::new(n, steps)
    }
}

/// Which branch of the cell rule fired.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CellCase {
    /// Nothing happens.
    Empty,
    /// A new box appears from an alpha entry.
    Alpha,
    /// Only the south edge grows; copied north.
    PassNorth,
    /// Only the west edge grows; copied east.
    PassEast,
    /// Both edges add the same box: a bump.
    Bump,
    /// Both edges add different boxes: the join.
    Join,
}

impl CellCase {
    pub fn mark(self) -> &'static str {
        match self {
            CellCase::Empty => "",
            CellCase::Alpha => "X",
            CellCase::PassNorth | CellCase::PassEast => "",
            CellCase::Bump => "*",
            CellCase::Join => "v",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CellError {
    #[error("{lower} -> {upper} is neither equal nor a cover")]
    NotCover { lower: Shape, upper: Shape },
    #[error("nonzero alpha in a cell whose south or west edge grows")]
    AlphaOnGrowingCell,
    #[error("edge colour present on a degenerate edge or missing on a growing one")]
    ColorMismatch,
    #[error("alpha colour {0} exceeds the differential degree")]
    AlphaOutOfRange(Color),
    #[error(transparent)]
    Psi(#[from] PsiError),
    #[error("cell ({i},{j}): {source}")]
    At {
        i: u32,
        j: u32,
        #[source]
        source: Box<CellError>,
    },
}

impl CellError {
    fn at(self, i: u32, j: u32) -> CellError {
        CellError::At {
            i,
            j,
            source: Box::new(self),
        }
    }
}

fn check_step(lower: &Shape, upper: &Shape) -> Result<Option<Point>, CellError> {
    if lower == upper {
        return Ok(None);
    }
    lower
        .cover_box(upper)
        .map(Some)
        .ok_or_else(|| CellError::NotCover {
            lower: lower.clone(),
            upper: upper.clone(),
        })
}

/// Output of one forward cell evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellOut {
    pub z: Shape,
    /// Colour of the north edge `y -> z` (ascending channel).
    pub b1: Option<Color>,
    /// Colour of the east edge `x -> z` (descending channel).
    pub b2: Option<Color>,
    pub case: CellCase,
}

/// Computes the northeast corner of a cell.
///
/// `t` is the southwest corner, `x` southeast, `y` northwest. `a1` colours the
/// south edge `t -> x`, `a2` the west edge `t -> y`.
pub fn cell_forward<C: Correspondence + ?Sized>(
    alg: &C,
    t: &Shape,
    x: &Shape,
    y: &Shape,
    a1: Option<Color>,
    a2: Option<Color>,
    alpha: Color,
) -> Result<CellOut, CellError> {
    let px = check_step(t, x)?;
    let py = check_step(t, y)?;
    if px.is_some() != a1.is_some() || py.is_some() != a2.is_some() {
        return Err(CellError::ColorMismatch);
    }
    if alpha != 0 && (px.is_some() || py.is_some()) {
        return Err(CellError::AlphaOnGrowingCell);
    }
    let out = match (px, py) {
        (None, None) if alpha == 0 => CellOut {
            z: t.clone(),
            b1: None,
            b2: None,
            case: CellCase::Empty,
        },
        (None, None) => {
            if alpha as u32 > alg.instantiation().r {
                return Err(CellError::AlphaOutOfRange(alpha));
            }
            let (z, c) = alg.diagram(t).psi_insert(alpha)?;
            CellOut {
                z,
                b1: Some(c.g1),
                b2: Some(c.g2),
                case: CellCase::Alpha,
            }
        }
        (Some(_), None) => CellOut {
            z: x.clone(),
            b1: a1,
            b2: None,
            case: CellCase::PassNorth,
        },
        (None, Some(_)) => CellOut {
            z: y.clone(),
            b1: None,
            b2: a2,
            case: CellCase::PassEast,
        },
        (Some(p), Some(q)) if p == q => {
            let input = ColorPair::new(a1.unwrap(), a2.unwrap());
            let (z, c) = alg.diagram(x).psi_bump(p, input)?;
            CellOut {
                z,
                b1: Some(c.g1),
                b2: Some(c.g2),
                case: CellCase::Bump,
            }
        }
        (Some(_), Some(_)) => CellOut {
            z: x.join(y).expect("same geometry"),
            b1: a1,
            b2: a2,
            case: CellCase::Join,
        },
    };
    Ok(out)
}

/// Output of one inverse cell evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellIn {
    pub t: Shape,
    pub a1: Option<Color>,
    pub a2: Option<Color>,
    pub alpha: Color,
}

/// Recovers the southwest corner of a cell from the other three.
pub fn cell_inverse<C: Correspondence + ?Sized>(
    alg: &C,
    x: &Shape,
    y: &Shape,
    z: &Shape,
    b1: Option<Color>,
    b2: Option<Color>,
) -> Result<CellIn, CellError> {
    let qy = check_step(y, z)?;
    let qx = check_step(x, z)?;
    if qy.is_some() != b1.is_some() || qx.is_some() != b2.is_some() {
        return Err(CellError::ColorMismatch);
    }
    let res = if x == y {
        match qx {
            None => CellIn {
                t: z.clone(),
                a1: None,
                a2: None,
                alpha: 0,
            },
            Some(q) => {
                let out = ColorPair::new(b1.unwrap(), b2.unwrap());
                match alg.diagram(x).psi_inverse(q, out)? {
                    Preimage::Alpha(c) => CellIn {
                        t: x.clone(),
                        a1: None,
                        a2: None,
                        alpha: c,
                    },
                    Preimage::Bump(p, cin) => CellIn {
                        t: x.remove_box(p).map_err(|_| PsiError::NoBump(p, cin))?,
                        a1: Some(cin.g1),
                        a2: Some(cin.g2),
                        alpha: 0,
                    },
                }
            }
        }
    } else if z == x {
        CellIn {
            t: y.clone(),
            a1: b1,
            a2: None,
            alpha: 0,
        }
    } else if z == y {
        CellIn {
            t: x.clone(),
            a1: None,
            a2: b2,
            alpha: 0,
        }
    } else {
        CellIn {
            t: x.meet(y).expect("same geometry"),
            a1: b1,
            a2: b2,
            alpha: 0,
        }
    };
    Ok(res)
}

/// A fully evaluated growth grid.
///
/// `node(i, j)` for `0 <= i <= n`, `0 <= j <= m`. Horizontal edge `(i, j)`
/// joins `node(i-1, j)` to `node(i, j)` and carries an ascending colour;
/// vertical edge `(i, j)` joins `node(i, j-1)` to `node(i, j)` and carries a
/// descending colour.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthDiagram {
    n: u32,
    m: u32,
    nodes: Vec<Shape>,
    hcolors: Vec<Option<Color>>,
    vcolors: Vec<Option<Color>>,
    cases: Vec<CellCase>,
    gp: GeneralizedPermutation,
}

impl GrowthDiagram {
    fn blank(geometry: Geometry, gp: &GeneralizedPermutation) -> Self {
        let (n, m) = (gp.n(), gp.m());
        let nodes = (n as usize + 1) * (m as usize + 1);
        GrowthDiagram {
            n,
            m,
            nodes: vec![Shape::empty(geometry); nodes],
            hcolors: vec![None; nodes],
            vcolors: vec![None; nodes],
            cases: vec![CellCase::Empty; nodes],
            gp: gp.clone(),
        }
    }

    fn idx(&self, i: u32, j: u32) -> usize {
        debug_assert!(i <= self.n && j <= self.m);
        j as usize * (self.n as usize + 1) + i as usize
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn gp(&self) -> &GeneralizedPermutation {
        &self.gp
    }

    pub fn node(&self, i: u32, j: u32) -> &Shape {
        &self.nodes[self.idx(i, j)]
    }

    /// Ascending colour of the edge `node(i-1, j) -> node(i, j)`, `i >= 1`.
    pub fn hcolor(&self, i: u32, j: u32) -> Option<Color> {
        self.hcolors[self.idx(i, j)]
    }

    /// Descending colour of the edge `node(i, j-1) -> node(i, j)`, `j >= 1`.
    pub fn vcolor(&self, i: u32, j: u32) -> Option<Color> {
        self.vcolors[self.idx(i, j)]
    }

    /// Which rule fired in the cell whose northeast corner is `(i, j)`.
    pub fn case(&self, i: u32, j: u32) -> CellCase {
        self.cases[self.idx(i, j)]
    }

    pub fn alpha(&self, i: u32, j: u32) -> Color {
        self.gp.alpha(i, j)
    }

    pub fn northeast(&self) -> &Shape {
        self.node(self.n, self.m)
    }

    /// Assembles a diagram from raw parts, checking only dimensions.
    pub fn from_parts(
        gp: GeneralizedPermutation,
        nodes: Vec<Shape>,
        hcolors: Vec<Option<Color>>,
        vcolors: Vec<Option<Color>>,
        cases: Vec<CellCase>,
    ) -> Option<Self> {
        let len = (gp.n() as usize + 1) * (gp.m() as usize + 1);
        if [nodes.len(), hcolors.len(), vcolors.len(), cases.len()]
            .iter()
            .any(|&l| l != len)
        {
            return None;
        }
        Some(GrowthDiagram {
            n: gp.n(),
            m: gp.m(),
            nodes,
            hcolors,
            vcolors,
            cases,
            gp,
        })
    }

    /// Re-evaluates every cell and reports the first disagreement.
    pub fn check<C: Correspondence + ?Sized>(&self, alg: &C) -> Result<(), CellError> {
        let g = alg.instantiation().geometry;
        for i in 0..=self.n {
            if self.node(i, 0) != &Shape::empty(g) || (i > 0 && self.hcolor(i, 0).is_some()) {
                return Err(CellError::ColorMismatch.at(i, 0));
            }
        }
        for j in 0..=self.m {
            if self.node(0, j) != &Shape::empty(g) || (j > 0 && self.vcolor(0, j).is_some()) {
                return Err(CellError::ColorMismatch.at(0, j));
            }
        }
        for i in 1..=self.n {
            for j in 1..=self.m {
                let out = cell_forward(
                    alg,
                    self.node(i - 1, j - 1),
                    self.node(i, j - 1),
                    self.node(i - 1, j),
                    self.hcolor(i, j - 1),
                    self.vcolor(i - 1, j),
                    self.alpha(i, j),
                )
                .map_err(|e| e.at(i, j))?;
                if &out.z != self.node(i, j)
                    || out.b1 != self.hcolor(i, j)
                    || out.b2 != self.vcolor(i, j)
                {
                    return Err(CellError::ColorMismatch.at(i, j));
                }
            }
        }
        Ok(())
    }

    /// The left `i_max` columns, alphas outside them dropped.
    pub fn restrict(&self, i_max: u32) -> GrowthDiagram {
        let i_max = i_max.min(self.n);
        let steps = self
            .gp
            .steps()
            .iter()
            .map(|s| s.filter(|(i, _)| *i <= i_max))
            .collect();
        let gp = GeneralizedPermutation::new(i_max, steps).expect("restriction of a valid gp");
        let mut out = GrowthDiagram::blank(self.nodes[0].geometry(), &gp);
        for j in 0..=self.m {
            for i in 0..=i_max {
                let (src, dst) = (self.idx(i, j), out.idx(i, j));
                out.nodes[dst] = self.nodes[src].clone();
                out.hcolors[dst] = self.hcolors[src];
                out.vcolors[dst] = self.vcolors[src];
                out.cases[dst] = self.cases[src];
            }
        }
        out
    }
}

/// Runs the growth process column by column from the southwest.
pub fn run_growth<C: Correspondence + ?Sized>(
    alg: &C,
    gp: &GeneralizedPermutation,
) -> Result<GrowthDiagram, CellError> {
    let mut g = GrowthDiagram::blank(alg.instantiation().geometry, gp);
    for i in 1..=g.n {
        for j in 1..=g.m {
            let out = cell_forward(
                alg,
                g.node(i - 1, j - 1),
                g.node(i, j - 1),
                g.node(i - 1, j),
                g.hcolor(i, j - 1),
                g.vcolor(i - 1, j),
                gp.alpha(i, j),
            )
            .map_err(|e| e.at(i, j))?;
            let k = g.idx(i, j);
            g.nodes[k] = out.z;
            g.hcolors[k] = out.b1;
            g.vcolors[k] = out.b2;
            g.cases[k] = out.case;
        }
    }
    Ok(g)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableauError {
    #[error("box {0} is not in the shape")]
    OutsideShape(Point),
    #[error("entries do not fill the shape")]
    NotFilled,
    #[error("values are not 1..=size")]
    NotStandard,
    #[error("values do not increase along rows and columns")]
    NotIncreasing,
    #[error("colour {color} out of range at {point}")]
    ColorOutOfRange { point: Point, color: Color },
    #[error("P has shape {0} but Q has shape {1}")]
    ShapeMismatch(Shape, Shape),
    #[error("the pair is not in the image: {0}")]
    NotInImage(String),
}

/// A filling of a shape by distinct positive values, each box coloured.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoredTableau {
    shape: Shape,
    entries: BTreeMap<Point, (u32, Color)>,
}

impl ColoredTableau {
    pub fn new(shape: Shape, entries: BTreeMap<Point, (u32, Color)>) -> Result<Self, TableauError> {
        for p in entries.keys() {
            if !shape.contains(*p) {
                return Err(TableauError::OutsideShape(*p));
            }
        }
        if entries.len() != shape.size() {
            return Err(TableauError::NotFilled);
        }
        Ok(ColoredTableau { shape, entries })
    }

    /// Builds from rows of `(value, colour)`, left-justified in the geometry.
    pub fn from_rows(geometry: Geometry, rows: &[Vec<(u32, Color)>]) -> Result<Self, TableauError> {
        let lens: Vec<u32> = rows.iter().map(|r| r.len() as u32).collect();
        let shape = Shape::new(geometry, lens).map_err(|_| TableauError::NotFilled)?;
        let mut entries = BTreeMap::new();
        for (r, row) in rows.iter().enumerate() {
            let r = r as u32 + 1;
            let start = if geometry == Geometry::Octant { r } else { 1 };
            for (k, &e) in row.iter().enumerate() {
                entries.insert(Point::new(r, start + k as u32), e);
            }
        }
        ColoredTableau::new(shape, entries)
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn entries(&self) -> &BTreeMap<Point, (u32, Color)> {
        &self.entries
    }

    pub fn get(&self, p: Point) -> Option<(u32, Color)> {
        self.entries.get(&p).copied()
    }

    /// Rows of `(value, colour)` west to east.
    pub fn rows(&self) -> Vec<Vec<(u32, Color)>> {
        let mut rows: Vec<Vec<(u32, Color)>> = vec![Vec::new(); self.shape.rows().len()];
        for (p, e) in &self.entries {
            rows[p.row as usize - 1].push(*e);
        }
        rows
    }

    pub fn is_standard(&self) -> bool {
        let mut vals: Vec<u32> = self.entries.values().map(|e| e.0).collect();
        vals.sort_unstable();
        vals.iter().enumerate().all(|(k, &v)| v == k as u32 + 1)
    }

    pub fn is_increasing(&self) -> bool {
        self.entries.iter().all(|(p, (v, _))| {
            [Point::new(p.row + 1, p.col), Point::new(p.row, p.col + 1)]
                .iter()
                .all(|q| self.entries.get(q).is_none_or(|(w, _)| w > v))
        })
    }

    pub fn colors_fit(&self, inst: &Instantiation, channel: Channel) -> bool {
        self.entries
            .iter()
            .all(|(p, (_, c))| *c >= 1 && *c as u32 <= inst.weight(channel, *p))
    }

    pub fn validate(&self, inst: &Instantiation, channel: Channel) -> Result<(), TableauError> {
        if !self.is_standard() {
            return Err(TableauError::NotStandard);
        }
        if !self.is_increasing() {
            return Err(TableauError::NotIncreasing);
        }
        for (p, (_, c)) in &self.entries {
            if *c < 1 || *c as u32 > inst.weight(channel, *p) {
                return Err(TableauError::ColorOutOfRange {
                    point: *p,
                    color: *c,
                });
            }
        }
        Ok(())
    }

    pub fn strip_colors(&self) -> ColoredTableau {
        self.map(|_, (v, _)| (v, 1))
    }

    pub fn map(&self, f: impl Fn(Point, (u32, Color)) -> (u32, Color)) -> ColoredTableau {
        ColoredTableau {
            shape: self.shape.clone(),
            entries: self.entries.iter().map(|(p, e)| (*p, f(*p, *e))).collect(),
        }
    }

    pub fn map_colors(&self, f: impl Fn(Color) -> Color) -> ColoredTableau {
        self.map(|_, (v, c)| (v, f(c)))
    }

    /// Box holding `value`.
    pub fn position(&self, value: u32) -> Option<Point> {
        self.entries
            .iter()
            .find(|(_, e)| e.0 == value)
            .map(|(p, _)| *p)
    }

    pub fn transpose(&self) -> Option<ColoredTableau> {
        Some(ColoredTableau {
            shape: self.shape.transpose().ok()?,
            entries: self
                .entries
                .iter()
                .map(|(p, e)| (p.transpose(), *e))
                .collect(),
        })
    }

    /// The chain of shapes `shape(<= k)` for `k = 0..=max value`, with the
    /// box and colour added at each nonempty step.
    fn chain(&self) -> BTreeMap<u32, (Point, Color)> {
        self.entries
            .iter()
            .map(|(p, (v, c))| (*v, (*p, *c)))
            .collect()
    }
}

impl fmt::Display for ColoredTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| {
                r.iter()
                    .map(|(v, c)| format!("{v}{}", if *c == 2 { "o" } else { "" }))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        f.write_str(&rows.join(" / "))
    }
}

pub fn extract_p(g: &GrowthDiagram) -> ColoredTableau {
    let mut entries = BTreeMap::new();
    for i in 1..=g.n {
        if let Some(p) = g.node(i - 1, g.m).cover_box(g.node(i, g.m)) {
            entries.insert(p, (i, g.hcolor(i, g.m).expect("colour on growing edge")));
        }
    }
    ColoredTableau {
        shape: g.northeast().clone(),
        entries,
    }
}

pub fn extract_q(g: &GrowthDiagram) -> ColoredTableau {
    let mut entries = BTreeMap::new();
    for j in 1..=g.m {
        if let Some(p) = g.node(g.n, j - 1).cover_box(g.node(g.n, j)) {
            entries.insert(p, (j, g.vcolor(g.n, j).expect("colour on growing edge")));
        }
    }
    ColoredTableau {
        shape: g.northeast().clone(),
        entries,
    }
}

/// Reconstructs the full generalized permutation whose growth yields `p` and
/// `q`, sweeping cells from the northeast.
pub fn invert_growth<C: Correspondence + ?Sized>(
    alg: &C,
    p: &ColoredTableau,
    q: &ColoredTableau,
) -> Result<GeneralizedPermutation, TableauError> {
    let inst = alg.instantiation();
    if p.shape != q.shape {
        return Err(TableauError::ShapeMismatch(
            p.shape.clone(),
            q.shape.clone(),
        ));
    }
    if p.shape.geometry() != inst.geometry {
        return Err(TableauError::ShapeMismatch(
            p.shape.clone(),
            q.shape.clone(),
        ));
    }
    p.validate(inst, Channel::Ascending)?;
    q.validate(inst, Channel::Descending)?;
    let size = p.shape.size() as u32;
    let (n, m) = (size, size);
    let geometry = inst.geometry;
    let not_image = |e: CellError| TableauError::NotInImage(e.to_string());

    // Current row j: nodes 0..=n and ascending colours on its edges.
    let mut row: Vec<Shape> = Vec::with_capacity(n as usize + 1);
    let mut row_h: Vec<Option<Color>> = vec![None; n as usize + 1];
    let pchain = p.chain();
    let mut cur = Shape::empty(geometry);
    row.push(cur.clone());
    for i in 1..=n {
        let (bx, c) = pchain[&i];
        cur = cur
            .add_box(bx)
            .map_err(|e| TableauError::NotInImage(e.to_string()))?;
        row.push(cur.clone());
        row_h[i as usize] = Some(c);
    }
    // East column from Q.
    let qchain = q.chain();
    let mut east: Vec<Shape> = vec![Shape::empty(geometry)];
    for j in 1..=m {
        let (bx, _) = qchain[&j];
        let next = east[j as usize - 1]
            .add_box(bx)
            .map_err(|e| TableauError::NotInImage(e.to_string()))?;
        east.push(next);
    }

    let mut steps = vec![None; m as usize];
    for j in (1..=m).rev() {
        let mut below: Vec<Shape> = vec![Shape::empty(geometry); n as usize + 1];
        let mut below_h: Vec<Option<Color>> = vec![None; n as usize + 1];
        below[n as usize] = east[j as usize - 1].clone();
        let mut b2 = Some(qchain[&j].1);
        for i in (1..=n).rev() {
            let x = below[i as usize].clone();
            let y = &row[i as usize - 1];
            let z = &row[i as usize];
            let cell = cell_inverse(alg, &x, y, z, row_h[i as usize], b2)
                .map_err(|e| not_image(e.at(i, j)))?;
            if cell.alpha != 0 {
                if steps[j as usize - 1].is_some() {
                    return Err(TableauError::NotInImage(format!("row {j} has two entries")));
                }
                steps[j as usize - 1] = Some((i, cell.alpha));
            }
            below[i as usize - 1] = cell.t;
            below_h[i as usize] = cell.a1;
            b2 = cell.a2;
        }
        if !below[0].is_empty() || b2.is_some() {
            return Err(TableauError::NotInImage(format!(
                "west border nonempty at row {}",
                j - 1
            )));
        }
        row = below;
        row_h = below_h;
    }
    if row.iter().any(|s| !s.is_empty()) || row_h.iter().any(|c| c.is_some()) {
        return Err(TableauError::NotInImage("south border nonempty".into()));
    }
    let gp = GeneralizedPermutation::new(n, steps)
        .map_err(|e| TableauError::NotInImage(e.to_string()))?;
    Ok(gp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_compact_forms() {
        let gp: GeneralizedPermutation = "2 3 4 1".parse().unwrap();
        let e: Vec<_> = gp.entries().map(|(i, j, _)| (i, j)).collect();
        assert_eq!(e, vec![(2, 1), (3, 2), (4, 3), (1, 4)]);
        let gp: GeneralizedPermutation = "1 3 2 _ 4o".parse().unwrap();
        assert_eq!(gp.m(), 5);
        assert_eq!(gp.n(), 4);
        assert_eq!(gp.alpha(4, 5), 2);
        assert!(!gp.is_full());
        assert_eq!(gp.to_string(), "1 3 2 _ 4o");
        assert!("1 1".parse::<GeneralizedPermutation>().is_err());
        assert!("1x".parse::<GeneralizedPermutation>().is_err());
        let gp: GeneralizedPermutation = "6o 4ob 7 5b".parse().unwrap();
        assert_eq!(gp.to_string(), "6o 4ob 7 5b");
    }

    #[test]
    fn inverse_of_2341() {
        let gp = GeneralizedPermutation::from_word(&[2, 3, 4, 1]).unwrap();
        assert_eq!(gp.inverse().to_string(), "4 1 2 3");
        assert_eq!(gp.inverse().inverse(), gp);
    }

    #[test]
    fn subword_compacts() {
        let gp = GeneralizedPermutation::from_word(&[2, 3, 4, 1]).unwrap();
        assert_eq!(gp.subword(3).to_string(), "2 3 1");
        assert_eq!(gp.subword(0).m(), 0);
    }

    #[test]
    fn tableau_checks() {
        let t = ColoredTableau::from_rows(
            Geometry::Quadrant,
            &[vec![(1, 1), (3, 1), (4, 1)], vec![(2, 1)]],
        )
        .unwrap();
        assert!(t.is_standard() && t.is_increasing());
        assert_eq!(t.to_string(), "1 3 4 / 2");
        let bad = ColoredTableau::from_rows(Geometry::Quadrant, &[vec![(2, 1), (1, 1)]]).unwrap();
        assert!(bad.is_standard() && !bad.is_increasing());
        let t = ColoredTableau::from_rows(Geometry::Octant, &[vec![(1, 1), (2, 2)], vec![(3, 1)]])
            .unwrap();
        assert_eq!(t.get(Point::new(2, 2)), Some((3, 1)));
        assert!(t.is_increasing());
    }

    fn q(rows: &[u32]) -> Shape {
        Shape::new(Geometry::Quadrant, rows.to_vec()).unwrap()
    }

    #[test]
    fn cell_cases_on_rs_row() {
        let alg = crate::catalog::get("rs-row").unwrap();
        let e = Shape::empty(Geometry::Quadrant);
        let out = cell_forward(alg.as_ref(), &e, &e, &e, None, None, 0).unwrap();
        assert_eq!(
            (out.z, out.b1, out.case),
            (e.clone(), None, CellCase::Empty)
        );
        let out =
            cell_forward(alg.as_ref(), &q(&[1]), &q(&[2]), &q(&[1]), Some(1), None, 0).unwrap();
        assert_eq!(
            (out.z, out.b2, out.case),
            (q(&[2]), None, CellCase::PassNorth)
        );
        let out = cell_forward(alg.as_ref(), &e, &q(&[1]), &q(&[1]), Some(1), Some(1), 0).unwrap();
        assert_eq!((out.z, out.case), (q(&[1, 1]), CellCase::Bump));
        let out = cell_forward(
            alg.as_ref(),
            &q(&[2]),
            &q(&[2, 1]),
            &q(&[3]),
            Some(1),
            Some(1),
            0,
        )
        .unwrap();
        assert_eq!((out.z, out.case), (q(&[3, 1]), CellCase::Join));
        assert_eq!(
            cell_forward(alg.as_ref(), &e, &q(&[1]), &e, Some(1), None, 1),
            Err(CellError::AlphaOnGrowingCell)
        );
    }

    #[test]
    fn cell_inverse_examples() {
        let alg = crate::catalog::get("rs-row").unwrap();
        let s = q(&[2, 1]);
        let back = cell_inverse(alg.as_ref(), &s, &s, &s, None, None).unwrap();
        assert_eq!((back.t, back.alpha), (s, 0));
        let back = cell_inverse(
            alg.as_ref(),
            &q(&[1]),
            &q(&[1]),
            &q(&[1, 1]),
            Some(1),
            Some(1),
        )
        .unwrap();
        assert_eq!(
            (back.t, back.a1, back.a2),
            (Shape::empty(Geometry::Quadrant), Some(1), Some(1))
        );
        let back = cell_inverse(
            alg.as_ref(),
            &q(&[2, 1]),
            &q(&[3]),
            &q(&[3, 1]),
            Some(1),
            Some(1),
        )
        .unwrap();
        assert_eq!((back.t, back.alpha), (q(&[2]), 0));
    }

    #[test]
    fn one_by_one_grid() {
        let alg = crate::catalog::get("rs-row").unwrap();
        let gp = GeneralizedPermutation::from_word(&[1]).unwrap();
        let g = run_growth(alg.as_ref(), &gp).unwrap();
        assert_eq!(g.case(1, 1), CellCase::Alpha);
        assert_eq!(g.northeast(), &q(&[1]));
        assert_eq!(g.restrict(0).northeast(), &Shape::empty(Geometry::Quadrant));
        assert_eq!(g.restrict(1), g);
    }

    #[test]
    fn invert_rejects_mismatch() {
        let alg = crate::catalog::get("rs-row").unwrap();
        let p = ColoredTableau::from_rows(Geometry::Quadrant, &[vec![(1, 1), (2, 1)]]).unwrap();
        let qt =
            ColoredTableau::from_rows(Geometry::Quadrant, &[vec![(1, 1)], vec![(2, 1)]]).unwrap();
        assert!(matches!(
            invert_growth(alg.as_ref(), &p, &qt),
            Err(TableauError::ShapeMismatch(..))
        ));
        let bad = ColoredTableau::from_rows(Geometry::Quadrant, &[vec![(2, 1), (1, 1)]]).unwrap();
        assert!(invert_growth(alg.as_ref(), &bad, &p).is_err());
    }

    #[test]
    fn invert_pq31() {
        let alg = crate::catalog::get("rs-row").unwrap();
        let p = ColoredTableau::from_rows(
            Geometry::Quadrant,
            &[vec![(1, 1), (3, 1), (4, 1)], vec![(2, 1)]],
        )
        .unwrap();
        let qt = ColoredTableau::from_rows(
            Geometry::Quadrant,
            &[vec![(1, 1), (2, 1), (3, 1)], vec![(4, 1)]],
        )
        .unwrap();
        assert_eq!(
            invert_growth(alg.as_ref(), &p, &qt).unwrap().to_string(),
            "2 3 4 1"
        );
    }
}
