//! Exhaustive small-size checks: bijectivity onto pairs of standard coloured
//! tableaux, round trips and restriction.

use std::collections::{BTreeMap, HashMap, HashSet};

use itertools::Itertools;

use crate::catalog::AlgorithmSpec;
use crate::exec::{self, Strategy};
use crate::growth::{
    extract_p, extract_q, invert_growth, run_growth, ColoredTableau, GeneralizedPermutation,
};
use crate::insdiag::{Color, Correspondence};
use crate::lattice::{Point, Shape};
use crate::wdgg::{Channel, Instantiation};

/// Every full `n x n` generalized permutation with colours in `1..=r`.
pub fn enumerate_gps(n: u32, r: u32) -> Vec<GeneralizedPermutation> {
    let colorings: Vec<Vec<Color>> = (0..n)
        .map(|_| 1..=r as Color)
        .multi_cartesian_product()
        .collect();
    let colorings = if n == 0 { vec![Vec::new()] } else { colorings };
    (1..=n)
        .permutations(n as usize)
        .flat_map(|perm| {
            colorings.iter().map(move |cols| {
                let word: Vec<(u32, Color)> =
                    perm.iter().copied().zip(cols.iter().copied()).collect();
                GeneralizedPermutation::new(n, word.into_iter().map(Some).collect())
                    .expect("permutation")
            })
        })
        .collect()
}

/// Standard fillings of `shape`, one per colour assignment within the
/// channel's weights.
pub fn enumerate_sct(inst: &Instantiation, channel: Channel, shape: &Shape) -> Vec<ColoredTableau> {
    let mut fillings = Vec::new();
    standard_fillings(shape, &mut BTreeMap::new(), &mut fillings);
    let mut out = Vec::new();
    for filling in fillings {
        let boxes: Vec<Point> = filling.keys().copied().collect();
        let choices = boxes
            .iter()
            .map(|p| 1..=inst.weight(channel, *p) as Color)
            .multi_cartesian_product();
        let choices: Vec<Vec<Color>> = if boxes.is_empty() {
            vec![Vec::new()]
        } else {
            choices.collect()
        };
        for colors in choices {
            let entries = boxes
                .iter()
                .zip(colors)
                .map(|(p, c)| (*p, (filling[p], c)))
                .collect();
            out.push(ColoredTableau::new(shape.clone(), entries).expect("filling"));
        }
    }
    out
}

// Peels off the largest value from each corner in turn.
fn standard_fillings(
    shape: &Shape,
    acc: &mut BTreeMap<Point, u32>,
    out: &mut Vec<BTreeMap<Point, u32>>,
) {
    if shape.is_empty() {
        out.push(acc.clone());
        return;
    }
    let v = shape.size() as u32;
    for (p, lower) in shape.lower_covers() {
        acc.insert(p, v);
        standard_fillings(&lower, acc, out);
        acc.remove(&p);
    }
}

/// Weighted count of saturated chains from the empty shape, by recursion on
/// the last box.
pub fn chain_count(inst: &Instantiation, channel: Channel, shape: &Shape) -> u64 {
    fn go(
        inst: &Instantiation,
        channel: Channel,
        s: &Shape,
        memo: &mut HashMap<Shape, u64>,
    ) -> u64 {
        if s.is_empty() {
            return 1;
        }
        if let Some(&v) = memo.get(s) {
            return v;
        }
        let v = s
            .lower_covers()
            .map(|(p, lower)| inst.weight(channel, p) as u64 * go(inst, channel, &lower, memo))
            .sum();
        memo.insert(s.clone(), v);
        v
    }
    go(inst, channel, shape, &mut HashMap::new())
}

pub type TableauPair = (ColoredTableau, ColoredTableau);

#[derive(Clone, Debug, Default)]
pub struct BijectionReport {
    pub algorithm: String,
    pub n: u32,
    pub inputs: usize,
    pub distinct_images: usize,
    /// Same-shape pairs of standard coloured tableaux of size `n`.
    pub expected_pairs: usize,
    /// Sum over shapes of `f1 * f2` by the chain recurrence.
    pub identity_lhs: u64,
    /// `n! * r^n`.
    pub identity_rhs: u64,
    pub failures: Vec<String>,
}

impl BijectionReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

const MAX_LISTED: usize = 10;

fn note(failures: &mut Vec<String>, msg: String) {
    if failures.len() < MAX_LISTED {
        failures.push(msg);
    }
}

pub fn check_bijection(alg: &AlgorithmSpec, n: u32) -> BijectionReport {
    check_bijection_with(alg, n, Strategy::default())
}

pub fn check_bijection_with(alg: &AlgorithmSpec, n: u32, strategy: Strategy) -> BijectionReport {
    let inst = alg.instantiation();
    let gps = enumerate_gps(n, inst.r);
    let images = exec::map(strategy, &gps, |gp| {
        run_growth(alg, gp).map(|g| (extract_p(&g), extract_q(&g)))
    });

    let mut rep = BijectionReport {
        algorithm: alg.name().to_string(),
        n,
        inputs: gps.len(),
        identity_rhs: (1..=n as u64).product::<u64>() * (inst.r as u64).pow(n),
        ..Default::default()
    };

    let mut seen: HashMap<TableauPair, &GeneralizedPermutation> = HashMap::new();
    for (gp, img) in gps.iter().zip(images) {
        match img {
            Err(e) => note(&mut rep.failures, format!("{gp}: growth failed: {e}")),
            Ok(pair) => {
                if let Some(prev) = seen.insert(pair, gp) {
                    note(&mut rep.failures, format!("{gp} and {prev} share an image"));
                }
            }
        }
    }
    rep.distinct_images = seen.len();

    let shapes = Shape::all_of_size(inst.geometry, n as usize);
    let expected: HashSet<TableauPair> = shapes
        .iter()
        .flat_map(|s| {
            let ps = enumerate_sct(inst, Channel::Ascending, s);
            let qs = enumerate_sct(inst, Channel::Descending, s);
            ps.into_iter().cartesian_product(qs).collect::<Vec<_>>()
        })
        .collect();
    rep.expected_pairs = expected.len();
    rep.identity_lhs = shapes
        .iter()
        .map(|s| {
            chain_count(inst, Channel::Ascending, s) * chain_count(inst, Channel::Descending, s)
        })
        .sum();

    for (pair, gp) in &seen {
        if !expected.contains(pair) {
            note(
                &mut rep.failures,
                format!(
                    "{gp}: image ({}, {}) is not a standard pair",
                    pair.0, pair.1
                ),
            );
        }
    }
    if let Some(missing) = expected.iter().find(|p| !seen.contains_key(*p)) {
        note(
            &mut rep.failures,
            format!("pair ({}, {}) is never hit", missing.0, missing.1),
        );
    }
    if rep.identity_lhs != rep.identity_rhs {
        note(
            &mut rep.failures,
            format!(
                "sum of f1*f2 is {} but n!*r^n is {}",
                rep.identity_lhs, rep.identity_rhs
            ),
        );
    }
    rep
}

#[derive(Clone, Debug, Default)]
pub struct SweepReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl SweepReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn collect(results: Vec<Result<usize, String>>) -> SweepReport {
        let mut rep = SweepReport::default();
        for r in results {
            match r {
                Ok(k) => rep.checked += k,
                Err(e) => note(&mut rep.failures, e),
            }
        }
        rep
    }
}

/// `invert_growth` undoes `run_growth` on every full gp of size `n`.
pub fn check_roundtrip(alg: &AlgorithmSpec, n: u32, strategy: Strategy) -> SweepReport {
    let gps = enumerate_gps(n, alg.instantiation().r);
    SweepReport::collect(exec::map(strategy, &gps, |gp| {
        let g = run_growth(alg, gp).map_err(|e| format!("{gp}: {e}"))?;
        let back =
            invert_growth(alg, &extract_p(&g), &extract_q(&g)).map_err(|e| format!("{gp}: {e}"))?;
        if &back == gp {
            Ok(1)
        } else {
            Err(format!("{gp} came back as {back}"))
        }
    }))
}

/// Truncating the grid at each column gives the P tableau of the subword.
pub fn check_restriction(alg: &AlgorithmSpec, n: u32, strategy: Strategy) -> SweepReport {
    let gps = enumerate_gps(n, alg.instantiation().r);
    SweepReport::collect(exec::map(strategy, &gps, |gp| {
        let g = run_growth(alg, gp).map_err(|e| format!("{gp}: {e}"))?;
        for i_max in 0..=n {
            let restricted = extract_p(&g.restrict(i_max));
            let sub = gp.subword(i_max);
            let direct = run_growth(alg, &sub).map_err(|e| format!("{sub}: {e}"))?;
            if restricted != extract_p(&direct) {
                return Err(format!("{gp} at column {i_max}"));
            }
        }
        Ok(n as usize + 1)
    }))
}
