//! Library results against the brute-force references in `common`.

mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use common::Adj;
use digitop::catalog;
use digitop::homotopy::{are_homotopic, homotopy_class, is_contractible};
use digitop::invariants::{
    coincidence_spectrum, common_fixed_spectrum, divergence_degree, fixed_point_spectrum, homotopy_common_fixed_spectrum,
};
use digitop::search::{count_continuous_maps, enumerate_continuous_maps, find_retraction, PartialConstraint};
use digitop::{is_continuous, DigitalImage, DigitalMap, PointId, SearchBudget};

fn seq() -> SearchBudget {
    SearchBudget::sequential()
}

/// Every labeled simple graph on `n` points.
fn labeled_graphs(n: usize) -> Vec<Arc<DigitalImage>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|p| (p + 1..n).map(move |q| (p, q))).collect();
    (0u32..(1 << pairs.len()))
        .map(|bits| {
            let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, &e)| e).collect();
            Arc::new(DigitalImage::from_graph(n, &edges).unwrap())
        })
        .collect()
}

#[test]
fn enumeration_matches_brute_force_on_all_small_graphs() {
    for n in 1..=4 {
        for x in labeled_graphs(n) {
            let brute = common::continuous_self_maps(&x);
            let got: Vec<Vec<usize>> = enumerate_continuous_maps(&x, &x, &PartialConstraint::none(), &seq())
                .unwrap()
                .maps
                .into_iter()
                .map(|m| m.into_assignment())
                .collect();
            assert_eq!(got, brute, "{:?}", x.edges());
        }
    }
}

#[test]
fn homotopy_matches_layered_oracle_on_all_small_graphs() {
    for n in 1..=3 {
        for x in labeled_graphs(n) {
            let adj = Adj::of(&x);
            let maps = common::continuous_self_maps(&x);
            for f in &maps {
                for g in &maps {
                    let lib = are_homotopic(&DigitalMap::on(&x, f.clone()).unwrap(), &DigitalMap::on(&x, g.clone()).unwrap(), &seq()).unwrap();
                    assert_eq!(lib, common::homotopic_by_layers(&adj, &adj, f, g), "{:?} {f:?} {g:?}", x.edges());
                }
            }
        }
    }
}

#[test]
fn spectra_match_brute_force_on_all_small_graphs() {
    for n in 1..=4 {
        for x in labeled_graphs(n) {
            let maps = common::continuous_self_maps(&x);
            assert_eq!(fixed_point_spectrum(&x, &seq()).unwrap().0.values, common::f_spectrum(&maps));
            assert_eq!(coincidence_spectrum(&x, &seq()).unwrap().0.values, common::pair_spectrum(&maps, common::coincide));
            assert_eq!(common_fixed_spectrum(&x, &seq()).unwrap().0.values, common::pair_spectrum(&maps, common::common_fixed));
        }
    }
}

#[test]
fn continuity_matches_subset_oracle_between_images() {
    let x = catalog::load_key("interval:0:3").unwrap();
    let y = catalog::load_key("cycle:4").unwrap();
    let (ax, ay) = (Adj::of(&x), Adj::of(&y));
    let mut continuous = 0;
    for a in common::all_functions(4, 4) {
        let f = DigitalMap::new(x.clone(), y.clone(), a.clone()).unwrap();
        let lib = is_continuous(&f);
        assert_eq!(lib, common::continuous_by_subsets(&ax, &ay, &a), "{a:?}");
        continuous += usize::from(lib);
    }
    assert_eq!(count_continuous_maps(&x, &y, &seq()).unwrap().0, continuous as u64);
}

#[test]
fn derived_examples() {
    let c5 = catalog::load_key("cycle:5").unwrap();
    let maps = common::continuous_self_maps(&c5);
    assert_eq!(maps.len(), 265);
    assert_eq!(common::f_spectrum(&maps), vec![0, 1, 2, 3, 5]);
    assert_eq!(fixed_point_spectrum(&c5, &seq()).unwrap().0.values, vec![0, 1, 2, 3, 5]);

    let i = catalog::load_key("interval:0:1").unwrap();
    let imaps = common::continuous_self_maps(&i);
    assert_eq!(imaps.len(), 4);
    assert_eq!(common::pair_spectrum(&imaps, common::common_fixed), vec![0, 1, 2]);
    assert_eq!(common::divergence(&imaps, 0), Some(1));
    assert_eq!(divergence_degree(&i, PointId(0), &seq()).unwrap().0.k, 1);

    let id = DigitalMap::identity(&c5);
    assert_eq!(homotopy_common_fixed_spectrum(&id, &id, &seq()).unwrap().0.values, vec![0, 5]);
}

#[test]
fn divergence_matches_brute_force() {
    for key in ["interval:0:2", "interval:0:3", "cycle:4", "cycle:5"] {
        let x = catalog::load_key(key).unwrap();
        let maps = common::continuous_self_maps(&x);
        for p in x.points() {
            let (pair, _) = divergence_degree(&x, p, &seq()).unwrap();
            assert_eq!(Some(pair.k), common::divergence(&maps, p.index()), "{key} {p}");
        }
    }
    // disconnected: the two points of an edgeless image
    let x = Arc::new(DigitalImage::from_graph(2, &[]).unwrap());
    let maps = common::continuous_self_maps(&x);
    let (pair, _) = divergence_degree(&x, PointId(0), &seq()).unwrap();
    assert_eq!(Some(pair.k), common::divergence(&maps, 0));
}

#[test]
fn classes_from_any_member_agree() {
    for key in ["interval:0:2", "cycle:4", "cycle:5"] {
        let x = catalog::load_key(key).unwrap();
        let mut seen: BTreeSet<Vec<Vec<usize>>> = BTreeSet::new();
        for a in common::continuous_self_maps(&x) {
            let class = homotopy_class(&DigitalMap::on(&x, a.clone()).unwrap(), &seq()).unwrap();
            assert!(class.contains(&DigitalMap::on(&x, a).unwrap()));
            seen.insert(class.assignments().to_vec());
        }
        // each map sees the same class as every other member, so classes partition the maps
        let total: usize = seen.iter().map(|c| c.len()).sum();
        assert_eq!(total, common::continuous_self_maps(&x).len(), "{key}");
    }
}

#[test]
fn contractible_images_have_one_class() {
    for key in ["interval:0:1", "interval:0:3", "cube"] {
        let x = catalog::load_key(key).unwrap();
        assert!(is_contractible(&x, &seq()).unwrap());
        let c = DigitalMap::constant(&x, &x, PointId(0)).unwrap();
        let class = homotopy_class(&c, &seq()).unwrap();
        let (count, _) = count_continuous_maps(&x, &x, &seq()).unwrap();
        assert_eq!(class.len() as u64, count, "{key}");
    }
}

#[test]
fn retractions_are_brute_force_complete() {
    for key in ["interval:0:3", "cycle:4", "cycle:5"] {
        let x = catalog::load_key(key).unwrap();
        let maps = common::continuous_self_maps(&x);
        for mask in 1u64..(1 << x.size()) {
            let pts: Vec<PointId> = (0..x.size()).filter(|&p| mask >> p & 1 == 1).map(PointId).collect();
            let brute = maps.iter().any(|f| {
                (0..x.size()).all(|p| if mask >> p & 1 == 1 { f[p] == p } else { mask >> f[p] & 1 == 1 })
            });
            let (r, _) = find_retraction(&x, &pts, &seq()).unwrap();
            assert_eq!(r.is_some(), brute, "{key} {pts:?}");
        }
    }
}
