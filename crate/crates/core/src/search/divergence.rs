//! Branch and bound for the minimum-difference pair problem: two continuous
//! self-maps that must differ at a given point, with as few differing
//! points as possible.
//!
//! The pair is searched as one product assignment `y ↦ (f1(y), f2(y))`.
//! The running difference count is the bound; `f1(x) < f2(x)` breaks the
//! swap symmetry. Since the maps differ at `x`, one difference is a lower
//! bound for every pair, so an incumbent of size one is optimal.

use std::sync::Arc;

use serde::Serialize;

use super::engine::Plan;
use super::{Meter, SearchBudget, SearchStats};
use crate::error::{Error, Result};
use crate::image::{bits, DigitalImage, PointId};
use crate::map::DigitalMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferencePair {
    pub f1: DigitalMap,
    pub f2: DigitalMap,
    /// Number of points where `f1` and `f2` differ.
    pub k: usize,
    /// True when the search proved no pair does better.
    pub optimal: bool,
}

impl Serialize for DifferencePair {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("DifferencePair", 4)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("optimal", &self.optimal)?;
        st.serialize_field("f1", self.f1.assignment())?;
        st.serialize_field("f2", self.f2.assignment())?;
        st.end()
    }
}

/// `f2 = c_p`, `f1 = c_p` except `f1(x) = q` for some edge `p ~ q`.
fn perturbation_witness(x: &DigitalImage, point: usize) -> Option<(Vec<usize>, Vec<usize>)> {
    let p = (0..x.size()).find(|&p| x.degree(p) > 0)?;
    let q = x.neighbor_mask(p).trailing_zeros() as usize;
    let f2 = vec![p; x.size()];
    let mut f1 = f2.clone();
    f1[point] = q;
    Some((f1, f2))
}

pub fn min_difference_pair(x: &Arc<DigitalImage>, point: PointId, budget: &SearchBudget) -> Result<(DifferencePair, SearchStats)> {
    solve(x, point, budget, true)
}

/// The same search without the perturbation incumbent.
pub fn min_difference_pair_unseeded(x: &Arc<DigitalImage>, point: PointId, budget: &SearchBudget) -> Result<(DifferencePair, SearchStats)> {
    solve(x, point, budget, false)
}

fn solve(x: &Arc<DigitalImage>, point: PointId, budget: &SearchBudget, seeded: bool) -> Result<(DifferencePair, SearchStats)> {
    budget.validate()?;
    let p = x.check_point(point)?;
    if x.size() < 2 {
        return Err(Error::Precondition("divergence needs an image with more than one point".into()));
    }
    let meter = Meter::new(budget);
    let plan = Plan::new(x, vec![x.full_mask(); x.size()], Some(p));
    let mut bb = Bnb {
        x,
        plan: &plan,
        point: p,
        meter: &meter,
        f1: vec![0; x.size()],
        f2: vec![0; x.size()],
        best: None,
        nodes: 0,
        budget_hit: false,
    };
    if seeded {
        if let Some((a, b)) = perturbation_witness(x, p) {
            bb.best = Some((1, a, b));
        }
    }
    bb.descend(0, 0);
    let nodes = bb.nodes;
    let budget_hit = bb.budget_hit;
    let Some((k, a, b)) = bb.best else {
        return Err(Error::BudgetExhausted(meter.stats(nodes, 0, false)));
    };
    let optimal = !budget_hit || k == 1;
    let pair = DifferencePair {
        f1: DigitalMap::from_parts_unchecked(x.clone(), x.clone(), a),
        f2: DigitalMap::from_parts_unchecked(x.clone(), x.clone(), b),
        k,
        optimal,
    };
    Ok((pair, meter.stats(nodes, 1, !budget_hit)))
}

struct Bnb<'a> {
    x: &'a DigitalImage,
    plan: &'a Plan,
    point: usize,
    meter: &'a Meter,
    f1: Vec<usize>,
    f2: Vec<usize>,
    best: Option<(usize, Vec<usize>, Vec<usize>)>,
    nodes: u64,
    budget_hit: bool,
}

impl Bnb<'_> {
    fn bound(&self) -> usize {
        self.best.as_ref().map_or(usize::MAX, |b| b.0)
    }

    /// Returns false to abandon the whole search.
    fn descend(&mut self, pos: usize, cost: usize) -> bool {
        if pos == self.plan.order.len() {
            if cost < self.bound() {
                self.best = Some((cost, self.f1.clone(), self.f2.clone()));
            }
            // nothing beats one difference
            return cost > 1;
        }
        let v = self.plan.order[pos];
        let mut c1 = self.x.full_mask();
        let mut c2 = self.x.full_mask();
        for u in bits(self.plan.earlier[pos]) {
            c1 &= self.x.closed_mask(self.f1[u]);
            c2 &= self.x.closed_mask(self.f2[u]);
        }
        let forced_diff = v == self.point;
        // equal pairs first, they keep the count low
        if !forced_diff && cost < self.bound() {
            for a in bits(c1 & c2) {
                if cost >= self.bound() {
                    return true;
                }
                if !self.step(v, a, a, pos, cost) {
                    return false;
                }
            }
        }
        if cost + 1 >= self.bound() {
            return true;
        }
        for a in bits(c1) {
            for b in bits(c2) {
                if a == b || (forced_diff && a > b) {
                    continue;
                }
                if cost + 1 >= self.bound() {
                    return true;
                }
                if !self.step(v, a, b, pos, cost + 1) {
                    return false;
                }
            }
        }
        true
    }

    fn step(&mut self, v: usize, a: usize, b: usize, pos: usize, cost: usize) -> bool {
        self.nodes += 1;
        if !self.meter.tick(1) {
            self.budget_hit = true;
            return false;
        }
        self.f1[v] = a;
        self.f2[v] = b;
        self.descend(pos + 1, cost)
    }
}
