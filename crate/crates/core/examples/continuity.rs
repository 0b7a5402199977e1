//! Continuity checks: the neighbor test against the connected-subset
//! oracle, composition and coincidence sets.

use std::sync::Arc;

use digitop::map::{compose, continuity_oracle, coincidence_set, fixed_point_set, CoincidenceMode};
use digitop::{catalog, is_continuous, DigitalMap, PointId};

fn main() -> digitop::Result<()> {
    let c5 = catalog::load_key("cycle:5")?;

    let rot = DigitalMap::rotation(&c5, 2);
    println!("rot:2 continuous: {}", is_continuous(&rot));

    // moves one point across to the far side of the cycle
    let jump = DigitalMap::on(&c5, vec![0, 3, 2, 3, 4])?;
    println!("jump continuous: {}  oracle: {}", is_continuous(&jump), continuity_oracle(&jump)?);

    let fold = DigitalMap::on(&c5, vec![0, 1, 2, 1, 0])?;
    let both = compose(&rot, &fold)?;
    println!("rot:2 after fold = {:?}", both.assignment());

    let id = DigitalMap::identity(&c5);
    println!("Fix(fold) = {:?}", fixed_point_set(&fold)?);
    println!("C(fold, id) = {:?}", coincidence_set(&fold, &id, CoincidenceMode::Coincidence)?);
    println!("CF(fold, rot:2) = {:?}", coincidence_set(&fold, &rot, CoincidenceMode::CommonFixed)?);

    let i = Arc::new(digitop::digital_interval(0, 3)?);
    let squash = DigitalMap::constant(&i, &c5, PointId(4))?;
    println!("interval to cycle constant continuous: {}", is_continuous(&squash));
    Ok(())
}
