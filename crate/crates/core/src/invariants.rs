//! Spectra of fixed, coincidence and common fixed point counts, their
//! homotopy versions and minima, the fixed point property and divergence.
//!
//! Pair spectra are scanned row by row over the first map. Rows run in
//! fixed-size chunks, concurrently within a chunk, and the scan stops after
//! the first chunk that completes the value set. The chunk boundary does not
//! depend on the worker count, so values and statistics are reproducible.

use std::ops::ControlFlow;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::homotopy::{fixed_stats_of, homotopy_class, HomotopyClass};
use crate::image::{DigitalImage, PointId};
use crate::map::{coincidence_mask_raw, is_continuous, DigitalMap};
use crate::search::engine::{run_split, Plan};
use crate::search::{
    enumerate_assignments, find_fixed_point_free, min_difference_pair, with_workers, DifferencePair, Meter, SearchBudget,
    SearchStats,
};

const ROW_CHUNK: usize = 64;

/// Achievable cardinalities, sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Spectrum {
    pub values: Vec<usize>,
    pub complete: bool,
}

impl Spectrum {
    pub fn from_mask(mask: u128, complete: bool) -> Spectrum {
        let values = (0..128).filter(|&v| mask >> v & 1 == 1).collect();
        Spectrum { values, complete }
    }

    pub fn mask(&self) -> u128 {
        self.values.iter().fold(0, |m, &v| m | 1 << v)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.values.binary_search(&v).is_ok()
    }

    pub fn is_subset(&self, other: &Spectrum) -> bool {
        self.mask() & !other.mask() == 0
    }

    pub fn min(&self) -> Option<usize> {
        self.values.first().copied()
    }

    pub fn max(&self) -> Option<usize> {
        self.values.last().copied()
    }
}

fn full_values(n: usize) -> u128 {
    (1u128 << (n + 1)) - 1
}

fn fix_count(a: &[usize]) -> usize {
    a.iter().enumerate().filter(|(i, &v)| *i == v).count()
}

fn fix_mask(a: &[usize]) -> u64 {
    a.iter().enumerate().fold(0, |m, (i, &v)| if i == v { m | 1 << i } else { m })
}

fn require_self_maps(fs: &[&DigitalMap]) -> Result<()> {
    for f in fs {
        if !f.is_self_map() {
            return Err(Error::ImageMismatch("expected a self-map".into()));
        }
        if !is_continuous(f) {
            return Err(Error::Precondition("maps must be continuous".into()));
        }
    }
    Ok(())
}

/// `F(X) = {#Fix(f)}` over continuous self-maps.
pub fn fixed_point_spectrum(x: &DigitalImage, budget: &SearchBudget) -> Result<(Spectrum, SearchStats)> {
    budget.validate()?;
    let meter = Meter::new(budget);
    let plan = Plan::new(x, vec![x.full_mask(); x.size()], None);
    let full = full_values(x.size());
    let parts = run_split(
        x,
        x,
        &plan,
        budget.parallelism,
        &meter,
        || (0u128, 0u64),
        |acc: &mut (u128, u64), a: &[usize]| {
            acc.0 |= 1 << fix_count(a);
            acc.1 += 1;
            if acc.0 == full {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        },
        |prefix| prefix.iter().fold(0, |m, p| m | p.acc.0) == full,
    );
    let nodes = parts.iter().map(|p| p.nodes).sum();
    let maps: u64 = parts.iter().map(|p| p.acc.1).sum();
    let mask = parts.iter().fold(0, |m, p| m | p.acc.0);
    let complete = mask == full || !meter.tripped();
    Ok((Spectrum::from_mask(mask, complete), meter.stats(nodes, maps, complete)))
}

/// Counts over `rows × cols`. Interrupted only by the node cap, checked
/// between chunks; returns the value mask, pairs examined and completeness.
fn pair_scan<A: Sync, B: Sync>(
    rows: &[A],
    cols: &[B],
    full: u128,
    workers: usize,
    mut allowance: u64,
    count: impl Fn(&A, &B) -> usize + Sync,
) -> (u128, u64, bool) {
    let row = |a: &A| {
        let mut m = 0u128;
        let mut seen = 0u64;
        for b in cols {
            m |= 1 << count(a, b);
            seen += 1;
            if m == full {
                break;
            }
        }
        (m, seen)
    };
    let mut mask = 0u128;
    let mut pairs = 0u64;
    for chunk in rows.chunks(ROW_CHUNK) {
        let cost = (chunk.len() * cols.len()) as u64;
        if cost > allowance {
            return (mask, pairs, false);
        }
        let done: Vec<(u128, u64)> = with_workers(workers, || {
            if workers <= 1 {
                chunk.iter().map(row).collect()
            } else {
                chunk.par_iter().map(row).collect()
            }
        });
        for (m, seen) in done {
            mask |= m;
            pairs += seen;
            allowance -= seen;
        }
        if mask == full {
            break;
        }
    }
    (mask, pairs, true)
}

fn all_self_maps(x: &DigitalImage, budget: &SearchBudget) -> Result<(Vec<Vec<usize>>, SearchStats)> {
    enumerate_assignments(x, x, vec![x.full_mask(); x.size()], budget)
}

fn distinct(mut masks: Vec<u64>) -> Vec<u64> {
    masks.sort_unstable();
    masks.dedup();
    masks
}

fn finish(x_size: usize, mask: u128, enum_stats: SearchStats, pairs: u64, scan_ok: bool) -> (Spectrum, SearchStats) {
    let full = full_values(x_size);
    let complete = mask == full || (enum_stats.exhausted && scan_ok);
    let stats = SearchStats {
        nodes_visited: enum_stats.nodes_visited + pairs,
        results_found: mask.count_ones() as u64,
        exhausted: complete,
        elapsed: enum_stats.elapsed,
    };
    (Spectrum::from_mask(mask, complete), stats)
}

fn remaining(budget: &SearchBudget, used: u64) -> u64 {
    budget.max_nodes.saturating_sub(used)
}

/// `CS(X) = {#C(f1, f2)}` over ordered pairs of continuous self-maps.
pub fn coincidence_spectrum(x: &DigitalImage, budget: &SearchBudget) -> Result<(Spectrum, SearchStats)> {
    let (maps, st) = all_self_maps(x, budget)?;
    let full = full_values(x.size());
    let (mask, pairs, ok) = pair_scan(&maps, &maps, full, budget.parallelism, remaining(budget, st.nodes_visited), |a, b| {
        coincidence_mask_raw(a, b).count_ones() as usize
    });
    Ok(finish(x.size(), mask, st, pairs, ok))
}

/// `CFS(X) = {#CF(f1, f2)}`, through the distinct fixed point sets.
pub fn common_fixed_spectrum(x: &DigitalImage, budget: &SearchBudget) -> Result<(Spectrum, SearchStats)> {
    let (maps, st) = all_self_maps(x, budget)?;
    let fixes = distinct(maps.iter().map(|a| fix_mask(a)).collect());
    let full = full_values(x.size());
    let (mask, pairs, ok) = pair_scan(&fixes, &fixes, full, budget.parallelism, remaining(budget, st.nodes_visited), |a, b| {
        (a & b).count_ones() as usize
    });
    Ok(finish(x.size(), mask, st, pairs, ok))
}

fn class_stats(classes: &[&HomotopyClass]) -> SearchStats {
    let mut stats = classes[0].stats.clone();
    for c in &classes[1..] {
        stats = stats.combine(&c.stats);
    }
    stats.exhausted = classes.iter().all(|c| c.complete);
    stats
}

/// `HCS(f1, f2)` over both classes; with `starred`, `f2` stays put.
pub fn homotopy_coincidence_spectrum(
    f1: &DigitalMap,
    f2: &DigitalMap,
    starred: bool,
    budget: &SearchBudget,
) -> Result<(Spectrum, SearchStats)> {
    if **f1.source() != **f2.source() || **f1.target() != **f2.target() {
        return Err(Error::ImageMismatch("maps must share source and target".into()));
    }
    if !is_continuous(f2) {
        return Err(Error::Precondition("maps must be continuous".into()));
    }
    let c1 = homotopy_class(f1, budget)?;
    let (cols, st) = if starred {
        (vec![f2.assignment().to_vec()], class_stats(&[&c1]))
    } else if f1 == f2 {
        (c1.assignments().to_vec(), class_stats(&[&c1]))
    } else {
        let c2 = homotopy_class(f2, budget)?;
        let st = class_stats(&[&c1, &c2]);
        (c2.assignments().to_vec(), st)
    };
    let full = full_values(f1.source().size());
    let (mask, pairs, ok) = pair_scan(
        c1.assignments(),
        &cols,
        full,
        budget.parallelism,
        remaining(budget, st.nodes_visited),
        |a, b| coincidence_mask_raw(a, b).count_ones() as usize,
    );
    Ok(finish(f1.source().size(), mask, st, pairs, ok))
}

/// `HFS(f1, f2) = {#CF(g1, g2)}` over both classes.
pub fn homotopy_common_fixed_spectrum(f1: &DigitalMap, f2: &DigitalMap, budget: &SearchBudget) -> Result<(Spectrum, SearchStats)> {
    require_self_maps(&[f1, f2])?;
    if **f1.source() != **f2.source() {
        return Err(Error::ImageMismatch("maps must share an image".into()));
    }
    let c1 = homotopy_class(f1, budget)?;
    if f1 == f2 {
        return Ok(common_fixed_spectrum_of_classes(&c1, &c1, budget));
    }
    let c2 = homotopy_class(f2, budget)?;
    Ok(common_fixed_spectrum_of_classes(&c1, &c2, budget))
}

/// `HFS` from classes already computed.
pub fn common_fixed_spectrum_of_classes(c1: &HomotopyClass, c2: &HomotopyClass, budget: &SearchBudget) -> (Spectrum, SearchStats) {
    let st = if std::ptr::eq(c1, c2) { class_stats(&[c1]) } else { class_stats(&[c1, c2]) };
    let rows = distinct(c1.assignments().iter().map(|a| fix_mask(a)).collect());
    let cols = distinct(c2.assignments().iter().map(|a| fix_mask(a)).collect());
    let n = c1.representative().source().size();
    let (mask, pairs, ok) = pair_scan(&rows, &cols, full_values(n), budget.parallelism, remaining(budget, st.nodes_visited), |a, b| {
        (a & b).count_ones() as usize
    });
    finish(n, mask, st, pairs, ok)
}

/// `S(f) = {#Fix(g) | g ≃ f}`.
pub fn fixed_spectrum_of_class(f: &DigitalMap, budget: &SearchBudget) -> Result<(Spectrum, SearchStats)> {
    require_self_maps(&[f])?;
    let class = homotopy_class(f, budget)?;
    Ok((fixed_stats_of(&class).spectrum, class.stats.clone()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MinKind {
    Mc,
    McStar,
    Mcf,
}

/// Minimum of the matching spectrum. An incomplete spectrum is an error.
pub fn min_numbers(f1: &DigitalMap, f2: &DigitalMap, which: MinKind, budget: &SearchBudget) -> Result<(usize, Spectrum, SearchStats)> {
    let (spectrum, stats) = match which {
        MinKind::Mc => homotopy_coincidence_spectrum(f1, f2, false, budget)?,
        MinKind::McStar => homotopy_coincidence_spectrum(f1, f2, true, budget)?,
        MinKind::Mcf => homotopy_common_fixed_spectrum(f1, f2, budget)?,
    };
    if !spectrum.complete {
        return Err(Error::BudgetExhausted(stats));
    }
    let min = spectrum.min().ok_or_else(|| Error::Invariant("empty spectrum".into()))?;
    Ok((min, spectrum, stats))
}

/// True when every continuous self-map has a fixed point. A fixed point
/// free map is returned as the counterexample.
pub fn has_fpp(x: &Arc<DigitalImage>, budget: &SearchBudget) -> Result<(bool, Option<DigitalMap>, SearchStats)> {
    let (free, stats) = find_fixed_point_free(x, budget)?;
    Ok((free.is_none(), free, stats))
}

/// `D(x)` over all pairs of continuous self-maps.
pub fn divergence_degree(x: &Arc<DigitalImage>, point: PointId, budget: &SearchBudget) -> Result<(DifferencePair, SearchStats)> {
    if !x.is_connected() {
        log::warn!("divergence on a disconnected image");
    }
    min_difference_pair(x, point, budget)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictedDivergence {
    pub k: usize,
    /// Family indices of the first minimizing ordered pair.
    pub first: usize,
    pub second: usize,
    pub differing: Vec<PointId>,
    pub pairs_scanned: usize,
}

/// `D(x)` with both maps drawn from `family`, over ordered pairs.
pub fn restricted_divergence(x: &DigitalImage, point: PointId, family: &[DigitalMap]) -> Result<RestrictedDivergence> {
    let p = x.check_point(point)?;
    if family.is_empty() {
        return Err(Error::Precondition("empty map family".into()));
    }
    for f in family {
        if **f.source() != *x || **f.target() != *x {
            return Err(Error::ImageMismatch("family maps must be self-maps of the image".into()));
        }
        if !is_continuous(f) {
            return Err(Error::Precondition("family maps must be continuous".into()));
        }
    }
    let mut best: Option<RestrictedDivergence> = None;
    let mut scanned = 0;
    for (i, a) in family.iter().enumerate() {
        for (j, b) in family.iter().enumerate() {
            if i == j {
                continue;
            }
            scanned += 1;
            let (a, b) = (a.assignment(), b.assignment());
            if a[p] == b[p] {
                continue;
            }
            let diff = x.full_mask() & !coincidence_mask_raw(a, b);
            let k = diff.count_ones() as usize;
            if best.as_ref().is_none_or(|r| k < r.k) {
                let differing = crate::image::bits(diff).map(PointId).collect();
                best = Some(RestrictedDivergence { k, first: i, second: j, differing, pairs_scanned: 0 });
            }
        }
    }
    let mut best = best.ok_or_else(|| Error::Precondition("no family pair differs at the point".into()))?;
    best.pairs_scanned = scanned;
    Ok(best)
}
