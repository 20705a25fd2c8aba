use proptest::prelude::*;

use growthkit::catalog::{self, ALGORITHM_NAMES};
use growthkit::growth::{
    cell_forward, extract_p, extract_q, invert_growth, run_growth, GeneralizedPermutation,
};
use growthkit::{Correspondence, Geometry, Shape};

fn geometry() -> impl Strategy<Value = Geometry> {
    prop_oneof![Just(Geometry::Quadrant), Just(Geometry::Octant)]
}

fn shape(g: Geometry, max: usize) -> impl Strategy<Value = Shape> {
    let all = Shape::all_up_to(g, max);
    (0..all.len()).prop_map(move |k| all[k].clone())
}

fn any_shape() -> impl Strategy<Value = Shape> {
    geometry().prop_flat_map(|g| shape(g, 14))
}

fn perm(max_n: usize) -> impl Strategy<Value = Vec<u32>> {
    (1..=max_n).prop_flat_map(|n| Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle())
}

/// A full gp with colours in `1..=r` and size up to `max_n`.
fn gp_for(r: u32, max_n: usize) -> impl Strategy<Value = GeneralizedPermutation> {
    perm(max_n).prop_flat_map(move |w| {
        let n = w.len();
        prop::collection::vec(1..=r as u8, n).prop_map(move |cols| {
            let word: Vec<(u32, u8)> = w.iter().copied().zip(cols).collect();
            GeneralizedPermutation::from_colored(&word).unwrap()
        })
    })
}

fn alg_and_gp(max_n: usize) -> impl Strategy<Value = (&'static str, GeneralizedPermutation)> {
    (0..ALGORITHM_NAMES.len()).prop_flat_map(move |k| {
        let name = ALGORITHM_NAMES[k];
        let r = catalog::get(name).unwrap().instantiation().r;
        (Just(name), gp_for(r, max_n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn join_commutes_and_bounds(g in geometry(), k in 0usize..1000, l in 0usize..1000) {
        let all = Shape::all_up_to(g, 9);
        let (a, b) = (&all[k % all.len()], &all[l % all.len()]);
        let j = a.join(b).unwrap();
        prop_assert_eq!(&j, &b.join(a).unwrap());
        prop_assert!(a.is_subshape(&j) && b.is_subshape(&j));
        let m = a.meet(b).unwrap();
        prop_assert!(m.is_subshape(a) && m.is_subshape(b));
    }

    #[test]
    fn transpose_is_involution(s in shape(Geometry::Quadrant, 14)) {
        let t = s.transpose().unwrap();
        prop_assert_eq!(t.size(), s.size());
        prop_assert_eq!(t.transpose().unwrap(), s);
    }

    #[test]
    fn corners_alternate_counts(s in any_shape()) {
        let (ins, del) = (s.insertion_points().len(), s.deletion_points().len());
        let extra = match (s.geometry(), s.smallest_part()) {
            (Geometry::Octant, Some(1)) => 0,
            _ => 1,
        };
        prop_assert_eq!(ins, del + extra);
    }

    #[test]
    fn shape_text_roundtrip(s in any_shape()) {
        prop_assert_eq!(Shape::parse(s.geometry(), &s.to_string()).unwrap(), s);
    }

    #[test]
    fn gp_text_roundtrip((_, gp) in alg_and_gp(9), holes in prop::collection::vec(any::<bool>(), 9)) {
        // knock out some steps to exercise `_`
        let steps: Vec<_> = gp.steps().iter().zip(holes).map(|(s, h)| if h { None } else { *s }).collect();
        let gp = GeneralizedPermutation::new(gp.n(), steps).unwrap();
        let back: GeneralizedPermutation = gp.to_string().parse().unwrap();
        prop_assert_eq!(back.steps(), gp.steps());
        prop_assert_eq!(gp.inverse().inverse(), gp);
    }

    #[test]
    fn roundtrip_beyond_exhaustive_range((name, gp) in alg_and_gp(8)) {
        let alg = catalog::get(name).unwrap();
        let g = run_growth(alg.as_ref(), &gp).unwrap();
        let (p, q) = (extract_p(&g), extract_q(&g));
        prop_assert_eq!(p.shape(), q.shape());
        prop_assert!(p.is_standard() && p.is_increasing());
        prop_assert!(q.is_standard() && q.is_increasing());
        let back = invert_growth(alg.as_ref(), &p, &q).unwrap();
        prop_assert_eq!(back, gp);
    }

    #[test]
    fn restriction_matches_subword((name, gp) in alg_and_gp(7), cut in 0u32..8) {
        let alg = catalog::get(name).unwrap();
        let g = run_growth(alg.as_ref(), &gp).unwrap();
        let i_max = cut.min(gp.n());
        let direct = run_growth(alg.as_ref(), &gp.subword(i_max)).unwrap();
        prop_assert_eq!(extract_p(&g.restrict(i_max)), extract_p(&direct));
    }

    // Each row of cells is determined by its south border alone.
    #[test]
    fn rows_recompute_from_south_border((name, gp) in alg_and_gp(7)) {
        let alg = catalog::get(name).unwrap();
        let g = run_growth(alg.as_ref(), &gp).unwrap();
        for j in 1..=g.m() {
            let mut west = Shape::empty(alg.instantiation().geometry);
            let mut west_colour = None;
            for i in 1..=g.n() {
                let out = cell_forward(
                    alg.as_ref(),
                    g.node(i - 1, j - 1),
                    g.node(i, j - 1),
                    &west,
                    g.hcolor(i, j - 1),
                    west_colour,
                    gp.alpha(i, j),
                ).unwrap();
                prop_assert_eq!(&out.z, g.node(i, j));
                prop_assert_eq!(out.b1, g.hcolor(i, j));
                prop_assert_eq!(out.b2, g.vcolor(i, j));
                west = out.z;
                west_colour = out.b2;
            }
        }
    }
}
