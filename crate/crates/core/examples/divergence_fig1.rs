//! Divergence degrees on the 18-point H image: the literal minimum over all
//! continuous pairs, and the minimum over the eight bundled maps compared
//! with previously reported values.

use digitop::catalog::{catalog_get, fig1_reported_divergence, FIG1_FAMILY};
use digitop::invariants::{divergence_degree, restricted_divergence};
use digitop::{is_continuous, PointId, SearchBudget};

fn main() -> digitop::Result<()> {
    let entry = catalog_get("fig1")?;
    let x = &entry.image;
    let family: Vec<_> = FIG1_FAMILY.iter().map(|n| entry.map(n).unwrap().clone()).collect();
    for (name, f) in &entry.maps {
        println!("{name:>3} continuous: {}  {:?}", is_continuous(f), f.assignment());
    }

    println!("label  family  reported  literal  witness");
    for p in x.points() {
        let r = restricted_divergence(x, p, &family)?;
        let (pair, _) = divergence_degree(x, p, &SearchBudget::sequential())?;
        let label = p.index() + 1;
        let reported = fig1_reported_divergence(label).map_or("-".into(), |k| k.to_string());
        println!(
            "{label:>5}  {:>6}  {reported:>8}  {:>7}  ({}, {})",
            r.k, pair.k, FIG1_FAMILY[r.first], FIG1_FAMILY[r.second]
        );
    }

    let r = restricted_divergence(x, PointId(6), &family)?;
    let labels: Vec<usize> = r.differing.iter().map(|q| q.index() + 1).collect();
    println!("label 7: pairs scanned {}, witness differs at {labels:?}", r.pairs_scanned);
    Ok(())
}
