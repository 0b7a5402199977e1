//! Homotopy classes as connected components of the one-step graph.
//!
//! Two continuous maps are one-step homotopic when they are pointwise equal
//! or adjacent. A homotopy of length `m` is a chain of `m` such steps, each
//! time slice continuous, so a class is the breadth-first closure of a map
//! under one-step moves that land on continuous maps.
//!
//! The closure expands one level at a time. The one-step neighbors of a map
//! `g` are exactly the continuous maps `h` with `h(x) ∈ N(g(x))` for all
//! `x`, which the search engine enumerates with per-point domains. Frontier
//! members expand concurrently and merge in frontier order.

use std::collections::HashSet;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::image::{DigitalImage, PointId};
use crate::invariants::Spectrum;
use crate::map::{is_continuous, DigitalMap};
use crate::search::engine::{collect_all, Plan};
use crate::search::{find_retraction, retraction_domains, subset_mask, with_workers, Meter, SearchBudget, SearchStats};

/// Members are sorted lexicographically by assignment.
#[derive(Clone, Debug)]
pub struct HomotopyClass {
    representative: DigitalMap,
    members: Vec<Vec<usize>>,
    pub complete: bool,
    pub stats: SearchStats,
}

impl HomotopyClass {
    pub fn representative(&self) -> &DigitalMap {
        &self.representative
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn assignments(&self) -> &[Vec<usize>] {
        &self.members
    }

    pub fn contains(&self, f: &DigitalMap) -> bool {
        self.members.binary_search_by(|m| m.as_slice().cmp(f.assignment())).is_ok()
    }

    pub fn members(&self) -> impl Iterator<Item = DigitalMap> + '_ {
        let (s, t) = (self.representative.source().clone(), self.representative.target().clone());
        self.members.iter().map(move |a| DigitalMap::from_parts_unchecked(s.clone(), t.clone(), a.clone()))
    }
}

struct Exploration {
    order: Vec<Vec<usize>>,
    complete: bool,
    hit: Option<Vec<usize>>,
    nodes: u64,
}

fn one_step_neighbors(x: &DigitalImage, y: &DigitalImage, g: &[usize], meter: &Meter) -> (Vec<Vec<usize>>, u64, bool) {
    let domains = g.iter().map(|&v| y.closed_mask(v)).collect();
    let plan = Plan::new(x, domains, None);
    collect_all(x, y, &plan, meter)
}

/// Breadth-first closure from `start`. Stops after the level in which
/// `stop` accepts a newly found member.
fn explore(f: &DigitalMap, budget: &SearchBudget, stop: &(dyn Fn(&[usize]) -> bool + Sync)) -> Result<(Exploration, Meter)> {
    budget.validate()?;
    if !is_continuous(f) {
        return Err(Error::Precondition("homotopy class needs a continuous map".into()));
    }
    let meter = Meter::new(budget);
    let (x, y) = (&**f.source(), &**f.target());
    let start = f.assignment().to_vec();
    let mut visited: HashSet<Vec<usize>> = HashSet::from([start.clone()]);
    let mut order = vec![start.clone()];
    let mut frontier = vec![start.clone()];
    let mut nodes = 0u64;
    let cap = budget.max_results.map(|c| c as usize);
    if stop(&start) {
        return Ok((Exploration { order, complete: true, hit: Some(start), nodes }, meter));
    }
    while !frontier.is_empty() {
        let expanded: Vec<(Vec<Vec<usize>>, u64, bool)> = with_workers(budget.parallelism, || {
            if budget.parallelism <= 1 {
                frontier.iter().map(|g| one_step_neighbors(x, y, g, &meter)).collect()
            } else {
                frontier.par_iter().map(|g| one_step_neighbors(x, y, g, &meter)).collect()
            }
        });
        let mut next = Vec::new();
        let mut hit = None;
        let mut complete = true;
        for (nbrs, n, ok) in expanded {
            nodes += n;
            complete &= ok;
            for h in nbrs {
                if !visited.contains(&h) {
                    if hit.is_none() && stop(&h) {
                        hit = Some(h.clone());
                    }
                    visited.insert(h.clone());
                    order.push(h.clone());
                    next.push(h);
                }
            }
        }
        let over_cap = cap.is_some_and(|c| order.len() > c);
        if hit.is_some() || !complete || over_cap {
            return Ok((Exploration { order, complete: complete && !over_cap && hit.is_none(), hit, nodes }, meter));
        }
        frontier = next;
    }
    Ok((Exploration { order, complete: true, hit: None, nodes }, meter))
}

pub fn homotopy_class(f: &DigitalMap, budget: &SearchBudget) -> Result<HomotopyClass> {
    let (mut ex, meter) = explore(f, budget, &|_| false)?;
    ex.order.sort_unstable();
    let results = ex.order.len() as u64;
    Ok(HomotopyClass {
        representative: f.clone(),
        members: ex.order,
        complete: ex.complete,
        stats: meter.stats(ex.nodes, results, ex.complete),
    })
}

/// Existential reachability query; `Err(BudgetExhausted)` when undecided.
fn reaches(f: &DigitalMap, budget: &SearchBudget, stop: &(dyn Fn(&[usize]) -> bool + Sync)) -> Result<(bool, Option<Vec<usize>>, SearchStats)> {
    let (ex, meter) = explore(f, budget, stop)?;
    let results = ex.order.len() as u64;
    if ex.hit.is_some() {
        return Ok((true, ex.hit, meter.stats(ex.nodes, results, true)));
    }
    if !ex.complete {
        return Err(Error::BudgetExhausted(meter.stats(ex.nodes, results, false)));
    }
    Ok((false, None, meter.stats(ex.nodes, results, true)))
}

fn same_images(f: &DigitalMap, g: &DigitalMap) -> Result<()> {
    if **f.source() != **g.source() || **f.target() != **g.target() {
        return Err(Error::ImageMismatch("maps must share source and target".into()));
    }
    Ok(())
}

pub fn are_homotopic(f: &DigitalMap, g: &DigitalMap, budget: &SearchBudget) -> Result<bool> {
    same_images(f, g)?;
    if !is_continuous(g) {
        return Err(Error::Precondition("both maps must be continuous".into()));
    }
    let goal = g.assignment().to_vec();
    Ok(reaches(f, budget, &|a| a == goal.as_slice())?.0)
}

pub fn is_nullhomotopic(f: &DigitalMap, budget: &SearchBudget) -> Result<bool> {
    Ok(reaches(f, budget, &|a| a.windows(2).all(|w| w[0] == w[1]))?.0)
}

pub fn is_contractible(x: &Arc<DigitalImage>, budget: &SearchBudget) -> Result<bool> {
    is_nullhomotopic(&DigitalMap::identity(x), budget)
}

pub enum RigidSubject<'a> {
    Map(&'a DigitalMap),
    Image(&'a Arc<DigitalImage>),
}

/// A map is rigid when its class is just itself; an image when its identity is.
pub fn is_rigid(subject: RigidSubject<'_>, budget: &SearchBudget) -> Result<bool> {
    let f = match subject {
        RigidSubject::Map(f) => f.clone(),
        RigidSubject::Image(x) => DigitalMap::identity(x),
    };
    let start = f.assignment().to_vec();
    Ok(!reaches(&f, budget, &|a| a != start.as_slice())?.0)
}

/// Whether some retraction `r` onto `subset` has `i ∘ r ≃ id`. Returns the
/// first such retraction met while growing the class of the identity.
pub fn is_deformation_retract(
    x: &Arc<DigitalImage>,
    subset: &[PointId],
    budget: &SearchBudget,
) -> Result<(bool, Option<DigitalMap>)> {
    let mask = subset_mask(x, subset)?;
    let (r, _) = find_retraction(x, subset, budget)?;
    if r.is_none() {
        return Ok((false, None));
    }
    let domains = retraction_domains(x, mask);
    let is_retraction = move |a: &[usize]| a.iter().zip(&domains).all(|(&v, &d)| d >> v & 1 == 1);
    let (ok, hit, _) = reaches(&DigitalMap::identity(x), budget, &is_retraction)?;
    Ok((ok, hit.map(|a| DigitalMap::from_parts_unchecked(x.clone(), x.clone(), a))))
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassFixedStats {
    /// `{#Fix(g) | g ≃ f}`
    pub spectrum: Spectrum,
    pub min_fixed: usize,
    pub max_fixed: usize,
    pub class_size: usize,
}

pub fn class_fixed_stats(f: &DigitalMap, budget: &SearchBudget) -> Result<(ClassFixedStats, SearchStats)> {
    if !f.is_self_map() {
        return Err(Error::ImageMismatch("fixed points need a self-map".into()));
    }
    let class = homotopy_class(f, budget)?;
    Ok((fixed_stats_of(&class), class.stats.clone()))
}

pub(crate) fn fixed_stats_of(class: &HomotopyClass) -> ClassFixedStats {
    let mut mask = 0u128;
    for a in class.assignments() {
        let fixed = a.iter().enumerate().filter(|(i, &v)| *i == v).count();
        mask |= 1 << fixed;
    }
    let spectrum = Spectrum::from_mask(mask, class.complete);
    ClassFixedStats {
        min_fixed: spectrum.min().unwrap_or(0),
        max_fixed: spectrum.max().unwrap_or(0),
        spectrum,
        class_size: class.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::image::digital_interval;

    fn c5() -> Arc<DigitalImage> {
        Arc::new(DigitalImage::from_graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap())
    }

    #[test]
    fn c5_identity_class_is_rotations() {
        let x = c5();
        let class = homotopy_class(&DigitalMap::identity(&x), &SearchBudget::sequential()).unwrap();
        assert!(class.complete);
        assert_eq!(class.len(), 5);
        for k in 0..5 {
            assert!(class.contains(&DigitalMap::rotation(&x, k)));
        }
    }

    #[test]
    fn single_point_class() {
        let x = Arc::new(DigitalImage::from_graph(1, &[]).unwrap());
        let class = homotopy_class(&DigitalMap::identity(&x), &SearchBudget::sequential()).unwrap();
        assert_eq!(class.len(), 1);
        assert!(is_rigid(RigidSubject::Image(&x), &SearchBudget::sequential()).unwrap());
        assert!(is_contractible(&x, &SearchBudget::sequential()).unwrap());
    }

    #[test]
    fn c5_queries() {
        let x = c5();
        let b = SearchBudget::sequential();
        let id = DigitalMap::identity(&x);
        let c = DigitalMap::constant(&x, &x, PointId(0)).unwrap();
        assert!(are_homotopic(&id, &DigitalMap::rotation(&x, 1), &b).unwrap());
        assert!(!are_homotopic(&id, &c, &b).unwrap());
        assert!(is_nullhomotopic(&c, &b).unwrap());
        assert!(!is_nullhomotopic(&id, &b).unwrap());
        assert!(!is_contractible(&x, &b).unwrap());
        assert!(!is_rigid(RigidSubject::Image(&x), &b).unwrap());
        assert!(!is_rigid(RigidSubject::Map(&c), &b).unwrap());
    }

    #[test]
    fn c5_fixed_stats() {
        let x = c5();
        let b = SearchBudget::sequential();
        let c = DigitalMap::constant(&x, &x, PointId(0)).unwrap();
        let (s, _) = class_fixed_stats(&c, &b).unwrap();
        assert_eq!(s.spectrum.values, vec![0, 1, 2, 3]);
        assert_eq!((s.min_fixed, s.max_fixed), (0, 3));
        let (s, _) = class_fixed_stats(&DigitalMap::identity(&x), &b).unwrap();
        assert_eq!(s.spectrum.values, vec![0, 5]);
    }

    #[test]
    fn interval_deformation_retracts() {
        let x = Arc::new(digital_interval(0, 2).unwrap());
        let b = SearchBudget::sequential();
        assert!(is_deformation_retract(&x, &[PointId(0)], &b).unwrap().0);
        let all: Vec<PointId> = x.points().collect();
        let (ok, r) = is_deformation_retract(&x, &all, &b).unwrap();
        assert!(ok);
        assert_eq!(r.unwrap(), DigitalMap::identity(&x));
    }

    #[test]
    fn discontinuous_input_rejected() {
        let x = c5();
        let f = DigitalMap::on(&x, vec![0, 3, 2, 3, 4]).unwrap();
        assert!(homotopy_class(&f, &SearchBudget::sequential()).is_err());
    }

    #[test]
    fn budget_marks_partial_class() {
        let x = c5();
        let c = DigitalMap::constant(&x, &x, PointId(0)).unwrap();
        let tiny = SearchBudget::sequential().with_max_nodes(20);
        let class = homotopy_class(&c, &tiny).unwrap();
        assert!(!class.complete);
        assert!(matches!(is_contractible(&x, &tiny), Err(Error::BudgetExhausted(_))));
    }
}
