//! Isomorphism test for small images.
//!
//! Backtracking over bijections. Candidates for a point must match its
//! degree and the multiset of its neighbors' degrees, and must agree with
//! every pair already placed. The next point to place is the one with the
//! fewest remaining candidates.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::image::{bits, DigitalImage, PointId};
use crate::search::{Meter, SearchBudget, SearchStats};

/// Continuous bijection with continuous inverse.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Isomorphism {
    pub forward: Vec<PointId>,
    pub backward: Vec<PointId>,
}

impl Isomorphism {
    pub fn identity(n: usize) -> Self {
        let ids: Vec<PointId> = (0..n).map(PointId).collect();
        Isomorphism { forward: ids.clone(), backward: ids }
    }

    pub fn inverse(&self) -> Self {
        Isomorphism { forward: self.backward.clone(), backward: self.forward.clone() }
    }

    /// Verifies bijectivity and that adjacency is preserved both ways.
    pub fn is_valid_between(&self, x: &DigitalImage, y: &DigitalImage) -> bool {
        let n = x.size();
        if y.size() != n || self.forward.len() != n || self.backward.len() != n {
            return false;
        }
        for i in 0..n {
            let fi = self.forward[i].0;
            if fi >= n || self.backward[fi].0 != i {
                return false;
            }
        }
        (0..n).all(|a| (0..n).all(|b| x.is_adjacent(a, b) == y.is_adjacent(self.forward[a].0, self.forward[b].0)))
    }
}

fn signature(img: &DigitalImage, p: usize) -> (usize, Vec<usize>) {
    let mut nd: Vec<usize> = bits(img.neighbor_mask(p)).map(|q| img.degree(q)).collect();
    nd.sort_unstable();
    (img.degree(p), nd)
}

/// `Ok(None)` means the exhaustive search proved no isomorphism exists.
pub fn are_isomorphic(
    x: &DigitalImage,
    y: &DigitalImage,
    budget: &SearchBudget,
) -> Result<(Option<Isomorphism>, SearchStats)> {
    budget.validate()?;
    let meter = Meter::new(budget);
    let n = x.size();
    let mut sx: Vec<usize> = (0..n).map(|p| x.degree(p)).collect();
    let mut sy: Vec<usize> = (0..y.size()).map(|p| y.degree(p)).collect();
    sx.sort_unstable();
    sy.sort_unstable();
    if n != y.size() || x.edge_count() != y.edge_count() || sx != sy {
        return Ok((None, meter.stats(0, 0, true)));
    }

    let sig_y: Vec<_> = (0..n).map(|q| signature(y, q)).collect();
    let initial: Vec<u64> = (0..n)
        .map(|p| {
            let s = signature(x, p);
            (0..n).filter(|&q| sig_y[q] == s).fold(0u64, |m, q| m | 1 << q)
        })
        .collect();

    let mut state = IsoSearch {
        x,
        y,
        forward: vec![usize::MAX; n],
        used: 0,
        meter: &meter,
        nodes: 0,
    };
    let found = state.solve(&initial);
    let nodes = state.nodes;
    if meter.tripped() {
        return Err(Error::BudgetExhausted(meter.stats(nodes, 0, false)));
    }
    let witness = found.then(|| {
        let mut backward = vec![PointId(0); n];
        for (i, &f) in state.forward.iter().enumerate() {
            backward[f] = PointId(i);
        }
        Isomorphism { forward: state.forward.iter().map(|&f| PointId(f)).collect(), backward }
    });
    let results = u64::from(witness.is_some());
    Ok((witness, meter.stats(nodes, results, true)))
}

struct IsoSearch<'a> {
    x: &'a DigitalImage,
    y: &'a DigitalImage,
    forward: Vec<usize>,
    used: u64,
    meter: &'a Meter,
    nodes: u64,
}

impl IsoSearch<'_> {
    fn candidates(&self, p: usize, initial: u64) -> u64 {
        let mut c = initial & !self.used;
        for (q, &fq) in self.forward.iter().enumerate() {
            if fq == usize::MAX {
                continue;
            }
            c &= if self.x.is_adjacent(p, q) {
                self.y.neighbor_mask(fq)
            } else {
                !self.y.neighbor_mask(fq)
            };
        }
        c
    }

    fn solve(&mut self, initial: &[u64]) -> bool {
        // most constrained unplaced point
        let mut best: Option<(usize, u64)> = None;
        for (p, &init) in initial.iter().enumerate() {
            if self.forward[p] != usize::MAX {
                continue;
            }
            let c = self.candidates(p, init);
            if best.is_none_or(|(_, b)| c.count_ones() < b.count_ones()) {
                best = Some((p, c));
            }
        }
        let Some((p, cands)) = best else { return true };
        for q in bits(cands) {
            self.nodes += 1;
            if !self.meter.tick(1) {
                return false;
            }
            self.forward[p] = q;
            self.used |= 1 << q;
            if self.solve(initial) {
                return true;
            }
            self.used &= !(1 << q);
            self.forward[p] = usize::MAX;
            if self.meter.tripped() {
                return false;
            }
        }
        false
    }
}
