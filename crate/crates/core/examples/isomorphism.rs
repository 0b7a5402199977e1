//! Isomorphism tests on relabeled images, and invariance of the spectra
//! under relabeling.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use digitop::invariants::{coincidence_spectrum, fixed_point_spectrum};
use digitop::iso::are_isomorphic;
use digitop::{catalog, SearchBudget};

fn main() -> digitop::Result<()> {
    let b = SearchBudget::sequential();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let x = catalog::load_key("cycle:6")?;
    let mut perm: Vec<usize> = (0..x.size()).collect();
    perm.shuffle(&mut rng);
    let y = Arc::new(x.relabeled(&perm)?);

    let (iso, _) = are_isomorphic(&x, &y, &b)?;
    let iso = iso.expect("relabeling is an isomorphism");
    println!("perm {perm:?}  found forward {:?}", iso.forward);
    println!("valid: {}", iso.is_valid_between(&x, &y));

    println!("F: {:?} vs {:?}", fixed_point_spectrum(&x, &b)?.0.values, fixed_point_spectrum(&y, &b)?.0.values);
    println!("CS: {:?} vs {:?}", coincidence_spectrum(&x, &b)?.0.values, coincidence_spectrum(&y, &b)?.0.values);

    let path = catalog::load_key("interval:0:5")?;
    let (none, st) = are_isomorphic(&x, &path, &b)?;
    println!("6-cycle vs 6-path isomorphic: {}  (exhausted: {})", none.is_some(), st.exhausted);
    let fig1 = catalog::load_key("fig1")?;
    let fig2 = catalog::load_key("fig2")?;
    println!("fig1 vs fig2 isomorphic: {}", are_isomorphic(&fig1, &fig2, &b)?.0.is_some());
    Ok(())
}
