//! Retractions and deformation retractions, and the spectrum inclusions
//! they imply.

use std::sync::Arc;

use digitop::homotopy::is_deformation_retract;
use digitop::invariants::{coincidence_spectrum, common_fixed_spectrum};
use digitop::search::find_retraction;
use digitop::{catalog, PointId, SearchBudget};

fn main() -> digitop::Result<()> {
    let b = SearchBudget::sequential();
    let x = catalog::load_key("interval:0:4")?;
    let (cs_x, _) = coincidence_spectrum(&x, &b)?;
    let (cfs_x, _) = common_fixed_spectrum(&x, &b)?;
    println!("CS(X) = {:?}  CFS(X) = {:?}", cs_x.values, cfs_x.values);

    for subset in [vec![0], vec![1, 2, 3], vec![0, 4], vec![0, 1, 2]] {
        let pts: Vec<PointId> = subset.iter().copied().map(PointId).collect();
        let (r, _) = find_retraction(&x, &pts, &b)?;
        let Some(r) = r else {
            println!("{subset:?}: not a retract");
            continue;
        };
        let (def, _) = is_deformation_retract(&x, &pts, &b)?;
        let a = Arc::new(x.induced(&pts)?);
        let (cs_a, _) = coincidence_spectrum(&a, &b)?;
        println!(
            "{subset:?}: r = {:?}  deformation: {def}  CS(A) = {:?}  inside CS(X): {}",
            r.assignment(),
            cs_a.values,
            cs_a.is_subset(&cs_x)
        );
    }

    let cube = catalog::load_key("cube")?;
    let (def, r) = is_deformation_retract(&cube, &[PointId(0)], &b)?;
    println!("corner of the cube is a deformation retract: {def}  via {:?}", r.map(|r| r.into_assignment()));
    Ok(())
}
