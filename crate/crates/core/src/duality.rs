//! Inversion and transpose dualities between algorithms.

use std::sync::Arc;

use thiserror::Error;

use crate::catalog::{self, AlgorithmSpec};
use crate::exec::{self, Strategy};
use crate::growth::{extract_p, extract_q, run_growth, ColoredTableau, GeneralizedPermutation};
use crate::insdiag::{Arrow, Color, ColorPair, Correspondence, InsertionDiagram};
use crate::lattice::{Geometry, Shape};
use crate::oracle::enumerate_gps;
use crate::wdgg::Instantiation;

pub fn invert_gp(gp: &GeneralizedPermutation) -> GeneralizedPermutation {
    gp.inverse()
}

/// A permutation of colours, `map[c-1]` being the image of `c`. Colours
/// beyond its length are fixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorPerm(Vec<Color>);

impl ColorPerm {
    pub fn identity() -> Self {
        ColorPerm(Vec::new())
    }

    pub fn from_images(images: Vec<Color>) -> Option<Self> {
        let mut sorted = images.clone();
        sorted.sort_unstable();
        let ok = sorted.iter().enumerate().all(|(k, &c)| c as usize == k + 1);
        ok.then_some(ColorPerm(images))
    }

    /// Exchanges colours `a` and `b`.
    pub fn swap(a: Color, b: Color) -> Self {
        let len = a.max(b) as usize;
        let mut v: Vec<Color> = (1..=len as Color).collect();
        v.swap(a as usize - 1, b as usize - 1);
        ColorPerm(v)
    }

    pub fn apply(&self, c: Color) -> Color {
        self.0.get(c as usize - 1).copied().unwrap_or(c)
    }

    pub fn inverse(&self) -> ColorPerm {
        let mut v = vec![0; self.0.len()];
        for (k, &c) in self.0.iter().enumerate() {
            v[c as usize - 1] = k as Color + 1;
        }
        ColorPerm(v)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(k, &c)| c as usize == k + 1)
    }
}

/// Colour maps for the two edge channels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeMap {
    pub g1: ColorPerm,
    pub g2: ColorPerm,
}

impl EdgeMap {
    pub fn identity() -> Self {
        EdgeMap {
            g1: ColorPerm::identity(),
            g2: ColorPerm::identity(),
        }
    }

    /// `perm` on every channel with a weight above 1, identity elsewhere.
    pub fn on_weighted(inst: &Instantiation, perm: ColorPerm) -> Self {
        let pick = |trivial: bool| {
            if trivial {
                ColorPerm::identity()
            } else {
                perm.clone()
            }
        };
        EdgeMap {
            g1: pick(inst.w1.is_trivial()),
            g2: pick(inst.w2.is_trivial()),
        }
    }

    pub fn pair(&self, c: ColorPair) -> ColorPair {
        ColorPair::new(self.g1.apply(c.g1), self.g2.apply(c.g2))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualityError {
    #[error("transpose duality needs a quadrant algorithm, {0} is shifted")]
    NotQuadrant(String),
    #[error("algorithms {0} and {1} have incompatible instantiations")]
    Incompatible(String, String),
}

/// The diagram of `spec` at the conjugate shape, transposed and recoloured.
pub fn transpose_diagram(
    spec: &AlgorithmSpec,
    shape: &Shape,
    f: &ColorPerm,
    g: &EdgeMap,
) -> InsertionDiagram {
    let src = spec.diagram(&shape.transpose().expect("quadrant"));
    src.map_arrows(shape.clone(), |a| match *a {
        Arrow::Alpha { color, target, out } => Arrow::Alpha {
            color: f.apply(color),
            target: target.transpose(),
            out: g.pair(out),
        },
        Arrow::Bump {
            source,
            input,
            target,
            out,
        } => Arrow::Bump {
            source: source.transpose(),
            input: g.pair(input),
            target: target.transpose(),
            out: g.pair(out),
        },
    })
}

/// Conjugates every shape and arrow of `spec`, relabelling alpha colours by
/// `f` and edge colours by `g`.
pub fn transpose_dual(
    spec: Arc<AlgorithmSpec>,
    f: ColorPerm,
    g: EdgeMap,
) -> Result<AlgorithmSpec, DualityError> {
    let inst = spec.instantiation().clone();
    if inst.geometry != Geometry::Quadrant {
        return Err(DualityError::NotQuadrant(spec.name().to_string()));
    }
    let name = format!("{}-transposed", spec.name());
    let palette = spec.palette().clone();
    let src = spec.clone();
    Ok(AlgorithmSpec::new(
        &name,
        inst,
        palette,
        Arc::new(move |s: &Shape| transpose_diagram(&src, s, &f, &g)),
    ))
}

/// Both families agree on every shape up to `max_size`.
pub fn same_diagrams(a: &dyn Correspondence, b: &dyn Correspondence, max_size: usize) -> bool {
    let g = a.instantiation().geometry;
    g == b.instantiation().geometry
        && Shape::all_up_to(g, max_size)
            .iter()
            .all(|s| a.diagram(s) == b.diagram(s))
}

#[derive(Clone, Debug, Default)]
pub struct DualityReport {
    pub checked: usize,
    pub failures: usize,
    /// The first few counterexamples, as the offending input.
    pub counterexamples: Vec<String>,
}

impl DualityReport {
    pub fn ok(&self) -> bool {
        self.failures == 0
    }

    fn collect(results: Vec<Result<(), String>>) -> Self {
        let mut rep = DualityReport {
            checked: results.len(),
            ..Default::default()
        };
        for r in results {
            if let Err(e) = r {
                rep.failures += 1;
                if rep.counterexamples.len() < 10 {
                    rep.counterexamples.push(e);
                }
            }
        }
        rep
    }
}

fn all_gps_up_to(n: u32, r: u32) -> Vec<GeneralizedPermutation> {
    (1..=n).flat_map(|k| enumerate_gps(k, r)).collect()
}

fn tableaux(
    alg: &AlgorithmSpec,
    gp: &GeneralizedPermutation,
) -> Result<(ColoredTableau, ColoredTableau), String> {
    let g = run_growth(alg, gp).map_err(|e| format!("{gp}: {e}"))?;
    Ok((extract_p(&g), extract_q(&g)))
}

/// For every gp up to size `n`, `b` on the `f`-recoloured gp yields the
/// transposes of `a`'s tableaux, P colours mapped by `g.g1` and Q colours by
/// `g.g2`.
pub fn check_transpose_duality(
    a: &AlgorithmSpec,
    b: &AlgorithmSpec,
    f: &ColorPerm,
    g: &EdgeMap,
    n: u32,
    strategy: Strategy,
) -> Result<DualityReport, DualityError> {
    for alg in [a, b] {
        if alg.instantiation().geometry != Geometry::Quadrant {
            return Err(DualityError::NotQuadrant(alg.name().to_string()));
        }
    }
    if a.instantiation().r != b.instantiation().r {
        return Err(DualityError::Incompatible(a.name().into(), b.name().into()));
    }
    let gps = all_gps_up_to(n, a.instantiation().r);
    Ok(DualityReport::collect(exec::map(strategy, &gps, |gp| {
        let (pa, qa) = tableaux(a, gp)?;
        let (pb, qb) = tableaux(b, &gp.map_colors(|c| f.apply(c)))?;
        let want_p = pa
            .transpose()
            .expect("quadrant")
            .map_colors(|c| g.g1.apply(c));
        let want_q = qa
            .transpose()
            .expect("quadrant")
            .map_colors(|c| g.g2.apply(c));
        if pb == want_p && qb == want_q {
            Ok(())
        } else {
            Err(format!("{gp}: P {pb} vs {want_p}, Q {qb} vs {want_q}"))
        }
    })))
}

/// How tableau colours of `a` on a gp relate to those of `b` on its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InversionRule {
    /// `P_b(gp') = Q_a(gp)` and `Q_b(gp') = P_a(gp)` with colours mapped,
    /// where `gp'` is the inverse with alpha colours mapped by `alpha`.
    Transfer { alpha: ColorPerm, colors: ColorPerm },
    /// Colourless tableaux swap; each colour stays with its entry of the
    /// gp, so the colour of value `v` in `P_a(gp)` sits on the row index of
    /// `v` in `P_b(gp')`, and likewise for Q.
    Relocate,
}

pub fn check_inversion_duality(
    a: &AlgorithmSpec,
    b: &AlgorithmSpec,
    rule: &InversionRule,
    n: u32,
    strategy: Strategy,
) -> Result<DualityReport, DualityError> {
    let (ia, ib) = (a.instantiation(), b.instantiation());
    if ia.geometry != ib.geometry || ia.r != ib.r {
        return Err(DualityError::Incompatible(a.name().into(), b.name().into()));
    }
    if matches!(rule, InversionRule::Transfer { .. }) && (ia.w1 != ib.w2 || ia.w2 != ib.w1) {
        return Err(DualityError::Incompatible(a.name().into(), b.name().into()));
    }
    let gps = all_gps_up_to(n, ia.r);
    Ok(DualityReport::collect(exec::map(strategy, &gps, |gp| {
        let (pa, qa) = tableaux(a, gp)?;
        let ok = match rule {
            InversionRule::Transfer { alpha, colors } => {
                let inv = gp.inverse().map_colors(|c| alpha.apply(c));
                let (pb, qb) = tableaux(b, &inv)?;
                pb == qa.map_colors(|c| colors.apply(c)) && qb == pa.map_colors(|c| colors.apply(c))
            }
            InversionRule::Relocate => {
                let inv = gp.inverse();
                let (pb, qb) = tableaux(b, &inv)?;
                let row_of = |v: u32| inv.steps()[v as usize - 1].map(|s| s.0);
                let col_of = |j: u32| gp.steps()[j as usize - 1].map(|s| s.0);
                pb.strip_colors() == qa.strip_colors()
                    && qb.strip_colors() == pa.strip_colors()
                    && relocated(&pa, &pb, row_of)
                    && relocated(&qa, &qb, col_of)
            }
        };
        if ok {
            Ok(())
        } else {
            Err(gp.to_string())
        }
    })))
}

// Colour of each value `v` in `from` equals the colour of `partner(v)` in `to`.
fn relocated(
    from: &ColoredTableau,
    to: &ColoredTableau,
    partner: impl Fn(u32) -> Option<u32>,
) -> bool {
    let colour_of =
        |t: &ColoredTableau, v: u32| t.entries().values().find(|e| e.0 == v).map(|e| e.1);
    from.entries()
        .values()
        .all(|&(v, c)| partner(v).and_then(|w| colour_of(to, w)) == Some(c))
}

/// Node grids of `alg` on a permutation and on its inverse are transposes.
pub fn check_node_transpose(alg: &AlgorithmSpec, n: u32, strategy: Strategy) -> DualityReport {
    let gps = all_gps_up_to(n, 1);
    DualityReport::collect(exec::map(strategy, &gps, |gp| {
        let g = run_growth(alg, gp).map_err(|e| e.to_string())?;
        let h = run_growth(alg, &gp.inverse()).map_err(|e| e.to_string())?;
        for i in 0..=g.n() {
            for j in 0..=g.m() {
                if g.node(i, j) != h.node(j, i) {
                    return Err(format!("{gp} at ({i},{j})"));
                }
            }
        }
        Ok(())
    }))
}

#[derive(Clone, Debug)]
pub struct InversionPair {
    pub a: &'static str,
    pub b: &'static str,
    pub rule: InversionRule,
}

/// Declared inversion dualities among the built-in algorithms.
pub fn inversion_pairs() -> Vec<InversionPair> {
    let id = || InversionRule::Transfer {
        alpha: ColorPerm::identity(),
        colors: ColorPerm::identity(),
    };
    vec![
        InversionPair {
            a: "rs-row",
            b: "rs-row",
            rule: id(),
        },
        InversionPair {
            a: "left-right",
            b: "mixed",
            rule: id(),
        },
        InversionPair {
            a: "mixed",
            b: "left-right",
            rule: id(),
        },
        InversionPair {
            a: "worley-sagan",
            b: "shifted-mixed",
            rule: id(),
        },
        InversionPair {
            a: "shifted-mixed",
            b: "worley-sagan",
            rule: id(),
        },
        InversionPair {
            a: "shifted-column",
            b: "dual-shifted-column",
            rule: id(),
        },
        InversionPair {
            a: "dual-shifted-column",
            b: "shifted-column",
            rule: id(),
        },
        InversionPair {
            a: "shifted-column",
            b: "shifted-column",
            rule: InversionRule::Relocate,
        },
        InversionPair {
            a: "double-circle",
            b: "double-circle",
            rule: InversionRule::Transfer {
                alpha: ColorPerm::swap(2, 3),
                colors: ColorPerm::identity(),
            },
        },
    ]
}

pub fn inversion_rule(a: &str, b: &str) -> Option<InversionRule> {
    inversion_pairs()
        .into_iter()
        .find(|p| p.a == a && p.b == b)
        .map(|p| p.rule)
}

#[derive(Clone, Debug)]
pub struct TransposePair {
    pub a: &'static str,
    pub b: &'static str,
    pub f: ColorPerm,
    /// Applied to every channel whose weight exceeds 1.
    pub g: ColorPerm,
}

/// Declared transpose dualities among the built-in algorithms.
pub fn transpose_pairs() -> Vec<TransposePair> {
    let id = ColorPerm::identity;
    let uc = || ColorPerm::swap(1, 2);
    vec![
        TransposePair {
            a: "rs-row",
            b: "rs-col",
            f: id(),
            g: id(),
        },
        TransposePair {
            a: "rs-col",
            b: "rs-row",
            f: id(),
            g: id(),
        },
        TransposePair {
            a: "left-right",
            b: "left-right",
            f: uc(),
            g: uc(),
        },
        TransposePair {
            a: "mixed",
            b: "mixed",
            f: uc(),
            g: uc(),
        },
    ]
}

pub fn transpose_maps(a: &str, b: &str) -> Option<(ColorPerm, EdgeMap)> {
    let pair = transpose_pairs()
        .into_iter()
        .find(|p| p.a == a && p.b == b)?;
    let inst = catalog::get(a).ok()?.instantiation().clone();
    Some((pair.f, EdgeMap::on_weighted(&inst, pair.g)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invert_examples() {
        let gp = GeneralizedPermutation::from_word(&[2, 3, 4, 1]).unwrap();
        assert_eq!(invert_gp(&gp).to_string(), "4 1 2 3");
        let id = GeneralizedPermutation::from_word(&[1, 2, 3]).unwrap();
        assert_eq!(invert_gp(&id), id);
        let gp: GeneralizedPermutation = "6o 4o 7 5 2 3 1o".parse().unwrap();
        assert_eq!(invert_gp(&gp).to_string(), "7o 5 6 2o 4 1o 3");
    }

    #[test]
    fn color_perm_basics() {
        let s = ColorPerm::swap(2, 3);
        assert_eq!(
            (s.apply(1), s.apply(2), s.apply(3), s.apply(4)),
            (1, 3, 2, 4)
        );
        assert_eq!(s.inverse(), s);
        assert!(ColorPerm::identity().is_identity());
        assert!(ColorPerm::from_images(vec![2, 2]).is_none());
    }

    #[test]
    fn rs_row_transposes_to_rs_col() {
        let row = catalog::get("rs-row").unwrap();
        let col = catalog::get("rs-col").unwrap();
        let t = transpose_dual(row, ColorPerm::identity(), EdgeMap::identity()).unwrap();
        assert!(same_diagrams(&t, col.as_ref(), 8));
    }

    #[test]
    fn shifted_rejected() {
        let s = catalog::get("sagan1").unwrap();
        assert!(transpose_dual(s, ColorPerm::identity(), EdgeMap::identity()).is_err());
    }

    #[test]
    fn rs_row_not_transpose_self_dual() {
        let row = catalog::get("rs-row").unwrap();
        let rep = check_transpose_duality(
            &row,
            &row,
            &ColorPerm::identity(),
            &EdgeMap::identity(),
            3,
            Strategy::Sequential,
        )
        .unwrap();
        assert!(!rep.ok());
        assert!(!rep.counterexamples.is_empty());
    }
}
