//! Spectra of the 8-point unit cube with 6-adjacency, and of the cube with
//! one corner removed.

use std::time::Instant;

use digitop::catalog::{cube_minus_corner, load_key};
use digitop::homotopy::{homotopy_class, is_contractible};
use digitop::invariants::{coincidence_spectrum, common_fixed_spectrum, fixed_point_spectrum, homotopy_common_fixed_spectrum};
use digitop::search::find_retraction;
use digitop::{DigitalMap, PointId, SearchBudget};

fn main() -> digitop::Result<()> {
    let budget = SearchBudget::sequential();
    let cube = load_key("cube")?;

    let t = Instant::now();
    let (f, st) = fixed_point_spectrum(&cube, &budget)?;
    println!("F(cube)   = {:?}  ({} continuous self-maps)", f.values, st.results_found);
    let (cs, _) = coincidence_spectrum(&cube, &budget)?;
    println!("CS(cube)  = {:?}", cs.values);
    let (cfs, _) = common_fixed_spectrum(&cube, &budget)?;
    println!("CFS(cube) = {:?}", cfs.values);

    let c = DigitalMap::constant(&cube, &cube, PointId(0))?;
    let (hfs, _) = homotopy_common_fixed_spectrum(&c, &c, &budget)?;
    println!("HFS(c, c) = {:?}", hfs.values);
    println!("contractible: {}", is_contractible(&cube, &budget)?);
    let class = homotopy_class(&c, &budget)?;
    println!("class of c: {} maps", class.len());

    let a = std::sync::Arc::new(cube_minus_corner()?);
    let (cs_a, _) = coincidence_spectrum(&a, &budget)?;
    println!("CS(A)     = {:?}", cs_a.values);
    let corners: Vec<PointId> = (1..8).map(PointId).collect();
    let (r, st) = find_retraction(&cube, &corners, &budget)?;
    println!("A is a retract: {}  (search exhausted: {})", r.is_some(), st.exhausted);
    println!("{:.2}s", t.elapsed().as_secs_f64());
    Ok(())
}
