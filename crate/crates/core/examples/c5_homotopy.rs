//! Homotopy classes on the 5-cycle: the identity only deforms into
//! rotations, while a constant map reaches maps with up to three fixed points.

use digitop::homotopy::{are_homotopic, class_fixed_stats, homotopy_class, is_contractible, is_rigid, RigidSubject};
use digitop::invariants::{homotopy_coincidence_spectrum, min_numbers, MinKind};
use digitop::{catalog, DigitalMap, PointId, SearchBudget};

fn main() -> digitop::Result<()> {
    let b = SearchBudget::sequential();
    let x = catalog::load_key("cycle:5")?;
    let id = DigitalMap::identity(&x);
    let c = DigitalMap::constant(&x, &x, PointId(0))?;

    let class = homotopy_class(&id, &b)?;
    println!("class of id:");
    for f in class.members() {
        println!("  {:?}", f.assignment());
    }
    println!("id ~ c: {}", are_homotopic(&id, &c, &b)?);
    println!("contractible: {}  rigid: {}", is_contractible(&x, &b)?, is_rigid(RigidSubject::Image(&x), &b)?);

    let (s, _) = class_fixed_stats(&c, &b)?;
    println!("S(c) = {:?}  MF = {}  XF = {}  ({} maps)", s.spectrum.values, s.min_fixed, s.max_fixed, s.class_size);

    for (name, f, g, star) in [("HCS*(id,c)", &id, &c, true), ("HCS(id,c)", &id, &c, false), ("HCS*(c,id)", &c, &id, true)] {
        println!("{name} = {:?}", homotopy_coincidence_spectrum(f, g, star, &b)?.0.values);
    }
    println!("MC(id,c) = {}", min_numbers(&id, &c, MinKind::Mc, &b)?.0);
    println!("MC*(id,c) = {}", min_numbers(&id, &c, MinKind::McStar, &b)?.0);
    Ok(())
}
