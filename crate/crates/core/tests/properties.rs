//! Property tests over random small graphs and lattice images.

mod common;

use std::sync::Arc;

use proptest::prelude::*;

use digitop::homotopy::{class_fixed_stats, homotopy_class};
use digitop::image::LatticeSpec;
use digitop::invariants::{
    coincidence_spectrum, common_fixed_spectrum, fixed_point_spectrum, homotopy_coincidence_spectrum, min_numbers, MinKind,
};
use digitop::iso::are_isomorphic;
use digitop::map::{compose, continuity_oracle};
use digitop::search::{count_continuous_maps, enumerate_continuous_maps, PartialConstraint};
use digitop::{is_continuous, DigitalImage, DigitalMap, SearchBudget};

fn seq() -> SearchBudget {
    SearchBudget::sequential()
}

/// Random simple graph on 1 to `max` points.
fn graph(max: usize) -> impl Strategy<Value = Arc<DigitalImage>> {
    (1..=max).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|p| (p + 1..n).map(move |q| (p, q))).collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            let edges: Vec<_> = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e).collect();
            Arc::new(DigitalImage::from_graph(n, &edges).unwrap())
        })
    })
}

fn connected_graph(max: usize) -> impl Strategy<Value = Arc<DigitalImage>> {
    graph(max).prop_filter("connected", |x| x.is_connected())
}

fn with_map(max: usize) -> impl Strategy<Value = (Arc<DigitalImage>, Vec<usize>)> {
    graph(max).prop_flat_map(|x| {
        let n = x.size();
        (Just(x), proptest::collection::vec(0..n, n))
    })
}

fn with_perm(max: usize) -> impl Strategy<Value = (Arc<DigitalImage>, Vec<usize>)> {
    graph(max).prop_flat_map(|x| {
        let n = x.size();
        (Just(x), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

fn some_continuous(x: &Arc<DigitalImage>, pick: usize) -> DigitalMap {
    let maps = enumerate_continuous_maps(x, x, &PartialConstraint::none(), &seq()).unwrap().maps;
    maps[pick % maps.len()].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn continuity_agrees_with_oracles((x, a) in with_map(6)) {
        let f = DigitalMap::on(&x, a.clone()).unwrap();
        let adj = common::Adj::of(&x);
        prop_assert_eq!(is_continuous(&f), continuity_oracle(&f).unwrap());
        prop_assert_eq!(is_continuous(&f), common::continuous(&adj, &adj, &a));
    }

    #[test]
    fn fixed_spectrum_inside_cs_and_cfs(x in graph(5)) {
        let f = fixed_point_spectrum(&x, &seq()).unwrap().0;
        let cs = coincidence_spectrum(&x, &seq()).unwrap().0;
        let cfs = common_fixed_spectrum(&x, &seq()).unwrap().0;
        prop_assert!(f.complete && cs.complete && cfs.complete);
        prop_assert!(f.is_subset(&cs));
        prop_assert!(f.is_subset(&cfs));
        prop_assert!(cs.max() == Some(x.size()));
    }

    #[test]
    fn starred_spectrum_inside_unstarred(x in graph(5), i in 0usize..1000, j in 0usize..1000) {
        let f = some_continuous(&x, i);
        let g = some_continuous(&x, j);
        let star = homotopy_coincidence_spectrum(&f, &g, true, &seq()).unwrap().0;
        let full = homotopy_coincidence_spectrum(&f, &g, false, &seq()).unwrap().0;
        prop_assert!(star.is_subset(&full));
        let mc = min_numbers(&f, &g, MinKind::Mc, &seq()).unwrap().0;
        let mc_star = min_numbers(&f, &g, MinKind::McStar, &seq()).unwrap().0;
        prop_assert!(mc <= mc_star);
    }

    #[test]
    fn class_statistics_are_homotopy_invariant(x in graph(5), i in 0usize..1000) {
        let f = some_continuous(&x, i);
        let (s, _) = class_fixed_stats(&f, &seq()).unwrap();
        prop_assert!(s.min_fixed <= s.max_fixed && s.max_fixed <= x.size());
        let class = homotopy_class(&f, &seq()).unwrap();
        prop_assert!(class.contains(&f));
        for g in class.members().take(5) {
            let (t, _) = class_fixed_stats(&g, &seq()).unwrap();
            prop_assert_eq!(&t.spectrum, &s.spectrum);
            prop_assert_eq!(t.min_fixed, s.min_fixed);
        }
    }

    #[test]
    fn spectra_survive_relabeling((x, perm) in with_perm(6)) {
        let y = Arc::new(x.relabeled(&perm).unwrap());
        let (iso, _) = are_isomorphic(&x, &y, &seq()).unwrap();
        prop_assert!(iso.unwrap().is_valid_between(&x, &y));
        prop_assert_eq!(fixed_point_spectrum(&x, &seq()).unwrap().0, fixed_point_spectrum(&y, &seq()).unwrap().0);
        prop_assert_eq!(coincidence_spectrum(&x, &seq()).unwrap().0, coincidence_spectrum(&y, &seq()).unwrap().0);
        prop_assert_eq!(common_fixed_spectrum(&x, &seq()).unwrap().0, common_fixed_spectrum(&y, &seq()).unwrap().0);
    }

    #[test]
    fn results_do_not_depend_on_workers(x in graph(6), workers in 2usize..5) {
        let par = SearchBudget::sequential().with_parallelism(workers);
        let a = enumerate_continuous_maps(&x, &x, &PartialConstraint::none(), &seq()).unwrap();
        let b = enumerate_continuous_maps(&x, &x, &PartialConstraint::none(), &par).unwrap();
        prop_assert_eq!(a.maps, b.maps);
        prop_assert_eq!(a.stats.nodes_visited, b.stats.nodes_visited);
        prop_assert_eq!(a.stats.results_found, b.stats.results_found);
        let (sa, ta) = coincidence_spectrum(&x, &seq()).unwrap();
        let (sb, tb) = coincidence_spectrum(&x, &par).unwrap();
        prop_assert_eq!(sa, sb);
        prop_assert_eq!(ta.nodes_visited, tb.nodes_visited);
        prop_assert_eq!(fixed_point_spectrum(&x, &seq()).unwrap().0, fixed_point_spectrum(&x, &par).unwrap().0);
    }

    #[test]
    fn compositions_stay_continuous(x in graph(5), i in 0usize..1000, j in 0usize..1000) {
        let f = some_continuous(&x, i);
        let g = some_continuous(&x, j);
        prop_assert!(is_continuous(&compose(&g, &f).unwrap()));
    }

    #[test]
    fn count_matches_enumeration(x in graph(6)) {
        let (n, st) = count_continuous_maps(&x, &x, &seq()).unwrap();
        prop_assert!(st.exhausted);
        prop_assert_eq!(n as usize, common::continuous_self_maps(&x).len());
    }

    #[test]
    fn theorem_on_connected_graphs(x in connected_graph(5)) {
        let n = x.size();
        prop_assume!(n > 1);
        let maps = common::continuous_self_maps(&x);
        let cs = coincidence_spectrum(&x, &seq()).unwrap().0;
        let some_one = (0..n).any(|p| common::divergence(&maps, p) == Some(1));
        prop_assert_eq!(cs.contains(n - 1), some_one);
    }

    #[test]
    fn image_json_round_trip(x in graph(8)) {
        let back = DigitalImage::from_json(&x.to_json()).unwrap();
        prop_assert_eq!(back, (*x).clone());
    }

    #[test]
    fn lattice_json_round_trip(pts in proptest::collection::btree_set((-3i64..3, -3i64..3), 1..10), t in 1usize..3) {
        let points: Vec<Vec<i64>> = pts.into_iter().map(|(a, b)| vec![a, b]).collect();
        let x = DigitalImage::from_lattice(LatticeSpec { dim: 2, t, points }).unwrap();
        let back = DigitalImage::from_json(&x.to_json()).unwrap();
        prop_assert_eq!(back, x);
    }
}
