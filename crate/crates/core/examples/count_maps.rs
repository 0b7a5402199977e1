//! Counting and enumerating continuous maps with the backtracking search,
//! under constraints and with several workers.

use digitop::search::{count_continuous_maps, enumerate_continuous_maps, PartialConstraint};
use digitop::{catalog, PointId, SearchBudget};

fn main() -> digitop::Result<()> {
    for key in ["interval:0:2", "cycle:5", "cycle:6", "cube", "fig1"] {
        let x = catalog::load_key(key)?;
        let (n, st) = count_continuous_maps(&x, &x, &SearchBudget::default().with_max_nodes(20_000_000))?;
        let note = if st.exhausted { "" } else { "  budget hit, lower bound" };
        println!("{key:>13}: {n:>10} self-maps  ({} nodes){note}", st.nodes_visited);
    }

    let c5 = catalog::load_key("cycle:5")?;
    let pinned = PartialConstraint::none().require(PointId(0), PointId(0)).forbid(PointId(1), PointId(1));
    let maps = enumerate_continuous_maps(&c5, &c5, &pinned, &SearchBudget::sequential())?;
    println!("C5 maps fixing 0 and moving 1: {}", maps.maps.len());
    for f in maps.maps.iter().take(4) {
        println!("  {:?}", f.assignment());
    }

    let capped = SearchBudget::sequential().with_max_nodes(300);
    let (n, st) = count_continuous_maps(&c5, &c5, &capped)?;
    println!("with a 300 node cap: {n} found, exhausted = {}", st.exhausted);
    Ok(())
}
