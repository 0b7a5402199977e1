//! Exhaustive search for continuous maps.
//!
//! A continuous map `X → Y` is a homomorphism from `X` into the reflexive
//! closure of `Y`. The engine assigns source points in breadth-first order
//! so that every point after the first in its component has an assigned
//! neighbor. A point's candidates are the intersection of the closed
//! neighborhoods of its assigned neighbors' images, restricted by the
//! point's domain.
//!
//! Work is split on the value of the first assigned point. Subtrees run
//! sequentially or on a rayon pool and are merged in canonical order, so
//! results and reported counters do not depend on the worker count.

mod divergence;
pub(crate) mod engine;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::ops::ControlFlow;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::{Arc, Mutex, OnceLock};
use std::time::{Duration, Instant};

use serde::Serialize;

pub use divergence::{min_difference_pair, min_difference_pair_unseeded, DifferencePair};

use crate::error::{Error, Result};
use crate::image::{DigitalImage, PointId};
use crate::map::DigitalMap;
use engine::{run_split, Plan};

pub const DEFAULT_MAX_NODES: u64 = 1_000_000_000;

/// Resource limits for one search.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_results: Option<u64>,
    pub max_seconds: Option<f64>,
    pub parallelism: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: DEFAULT_MAX_NODES,
            max_results: None,
            max_seconds: None,
            parallelism: default_parallelism(),
        }
    }
}

pub fn default_parallelism() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

impl SearchBudget {
    pub fn sequential() -> Self {
        SearchBudget { parallelism: 1, ..Self::default() }
    }

    pub fn with_parallelism(mut self, workers: usize) -> Self {
        self.parallelism = workers;
        self
    }

    pub fn with_max_nodes(mut self, nodes: u64) -> Self {
        self.max_nodes = nodes;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_nodes == 0 {
            return Err(Error::InvalidBudget("max_nodes must be positive".into()));
        }
        if self.max_results == Some(0) {
            return Err(Error::InvalidBudget("max_results must be positive".into()));
        }
        if let Some(s) = self.max_seconds {
            if !(s > 0.0 && s.is_finite()) {
                return Err(Error::InvalidBudget("max_seconds must be positive".into()));
            }
        }
        if self.parallelism == 0 {
            return Err(Error::InvalidBudget("parallelism must be positive".into()));
        }
        Ok(())
    }
}

/// Counters reported by every search. `exhausted` is true iff the search
/// space was fully explored (no cap fired).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchStats {
    pub nodes_visited: u64,
    pub results_found: u64,
    pub exhausted: bool,
    /// Wall-clock seconds; left out of serialized output so that output is reproducible.
    #[serde(skip)]
    pub elapsed: f64,
}

impl Default for SearchStats {
    fn default() -> Self {
        SearchStats { nodes_visited: 0, results_found: 0, exhausted: true, elapsed: 0.0 }
    }
}

impl SearchStats {
    pub fn combine(&self, other: &SearchStats) -> SearchStats {
        SearchStats {
            nodes_visited: self.nodes_visited + other.nodes_visited,
            results_found: self.results_found + other.results_found,
            exhausted: self.exhausted && other.exhausted,
            elapsed: self.elapsed + other.elapsed,
        }
    }
}

/// Assignments a search must respect.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PartialConstraint {
    pub required: BTreeMap<PointId, PointId>,
    pub forbidden: BTreeSet<(PointId, PointId)>,
}

impl PartialConstraint {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn require(mut self, from: PointId, to: PointId) -> Self {
        self.required.insert(from, to);
        self
    }

    pub fn forbid(mut self, from: PointId, to: PointId) -> Self {
        self.forbidden.insert((from, to));
        self
    }

    /// Per-source-point allowed target masks.
    pub(crate) fn domains(&self, x: &DigitalImage, y: &DigitalImage) -> Result<Vec<u64>> {
        let mut domains = vec![y.full_mask(); x.size()];
        for (&from, &to) in &self.required {
            let p = x.check_point(from)?;
            let q = y.check_point(to)?;
            if self.forbidden.contains(&(from, to)) {
                return Err(Error::Precondition(format!(
                    "assignment {from} -> {to} is both required and forbidden"
                )));
            }
            domains[p] = 1 << q;
        }
        for &(from, to) in &self.forbidden {
            let p = x.check_point(from)?;
            let q = y.check_point(to)?;
            domains[p] &= !(1u64 << q);
        }
        Ok(domains)
    }

    pub fn admits(&self, f: &DigitalMap) -> bool {
        self.required.iter().all(|(&p, &q)| f.apply(p) == q)
            && self.forbidden.iter().all(|&(p, q)| f.apply(p) != q)
    }
}

/// Shared budget accounting for the workers of one search.
pub(crate) struct Meter {
    max_nodes: u64,
    max_results: Option<u64>,
    deadline: Option<Instant>,
    started: Instant,
    nodes: AtomicU64,
    results: AtomicU64,
    tripped: AtomicBool,
}

impl Meter {
    pub(crate) fn new(budget: &SearchBudget) -> Meter {
        let started = Instant::now();
        Meter {
            max_nodes: budget.max_nodes,
            max_results: budget.max_results,
            deadline: budget.max_seconds.map(|s| started + Duration::from_secs_f64(s)),
            started,
            nodes: AtomicU64::new(0),
            results: AtomicU64::new(0),
            tripped: AtomicBool::new(false),
        }
    }

    /// Charges `n` nodes. Returns false once any cap has fired.
    pub(crate) fn tick(&self, n: u64) -> bool {
        if self.tripped.load(Ordering::Relaxed) {
            return false;
        }
        let total = self.nodes.fetch_add(n, Ordering::Relaxed) + n;
        let late = self.deadline.is_some_and(|d| Instant::now() >= d);
        if total > self.max_nodes || late {
            self.tripped.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    /// Records one result. Returns false if the result cap is now reached.
    pub(crate) fn add_result(&self) -> bool {
        let total = self.results.fetch_add(1, Ordering::Relaxed) + 1;
        match self.max_results {
            Some(cap) if total >= cap => {
                self.tripped.store(true, Ordering::Relaxed);
                false
            }
            _ => true,
        }
    }

    pub(crate) fn tripped(&self) -> bool {
        self.tripped.load(Ordering::Relaxed)
    }

    pub(crate) fn stats(&self, nodes: u64, results: u64, exhausted: bool) -> SearchStats {
        SearchStats {
            nodes_visited: nodes,
            results_found: results,
            exhausted,
            elapsed: self.started.elapsed().as_secs_f64(),
        }
    }
}

/// Thread pools are reused per requested size.
pub(crate) fn pool(workers: usize) -> Arc<rayon::ThreadPool> {
    static POOLS: OnceLock<Mutex<HashMap<usize, Arc<rayon::ThreadPool>>>> = OnceLock::new();
    let mut pools = POOLS.get_or_init(Default::default).lock().expect("pool registry poisoned");
    pools
        .entry(workers)
        .or_insert_with(|| {
            Arc::new(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(workers)
                    .build()
                    .expect("thread pool builds"),
            )
        })
        .clone()
}

/// Runs `job` on a pool of `workers` threads, or inline for one worker.
pub(crate) fn with_workers<R: Send>(workers: usize, job: impl FnOnce() -> R + Send) -> R {
    if workers <= 1 {
        job()
    } else {
        pool(workers).install(job)
    }
}

/// Continuous maps found by [`enumerate_continuous_maps`], lexicographic by assignment.
#[derive(Clone, Debug)]
pub struct MapEnumeration {
    pub maps: Vec<DigitalMap>,
    pub stats: SearchStats,
}

impl IntoIterator for MapEnumeration {
    type Item = DigitalMap;
    type IntoIter = std::vec::IntoIter<DigitalMap>;
    fn into_iter(self) -> Self::IntoIter {
        self.maps.into_iter()
    }
}

/// Raw sorted assignments with explicit domains.
pub(crate) fn enumerate_assignments(
    x: &DigitalImage,
    y: &DigitalImage,
    domains: Vec<u64>,
    budget: &SearchBudget,
) -> Result<(Vec<Vec<usize>>, SearchStats)> {
    budget.validate()?;
    let meter = Meter::new(budget);
    let plan = Plan::new(x, domains, None);
    let parts = run_split(
        x,
        y,
        &plan,
        budget.parallelism,
        &meter,
        Vec::new,
        |acc: &mut Vec<Vec<usize>>, a: &[usize]| {
            acc.push(a.to_vec());
            if meter.add_result() {
                ControlFlow::Continue(())
            } else {
                ControlFlow::Break(())
            }
        },
        |_| false,
    );
    let nodes = parts.iter().map(|p| p.nodes).sum();
    let mut all: Vec<Vec<usize>> = parts.into_iter().flat_map(|p| p.acc).collect();
    all.sort_unstable();
    let results = all.len() as u64;
    Ok((all, meter.stats(nodes, results, !meter.tripped())))
}

pub fn enumerate_continuous_maps(
    x: &Arc<DigitalImage>,
    y: &Arc<DigitalImage>,
    constraint: &PartialConstraint,
    budget: &SearchBudget,
) -> Result<MapEnumeration> {
    let domains = constraint.domains(x, y)?;
    let (assigns, stats) = enumerate_assignments(x, y, domains, budget)?;
    let maps = assigns
        .into_iter()
        .map(|a| DigitalMap::from_parts_unchecked(x.clone(), y.clone(), a))
        .collect();
    Ok(MapEnumeration { maps, stats })
}

/// Counts without materializing maps.
pub fn count_continuous_maps(x: &DigitalImage, y: &DigitalImage, budget: &SearchBudget) -> Result<(u64, SearchStats)> {
    budget.validate()?;
    let meter = Meter::new(budget);
    let plan = Plan::new(x, vec![y.full_mask(); x.size()], None);
    let parts = run_split(
        x,
        y,
        &plan,
        budget.parallelism,
        &meter,
        || 0u64,
        |acc: &mut u64, _| {
            *acc += 1;
            if meter.add_result() {
                ControlFlow::Continue(())
            } else {
                ControlFlow::Break(())
            }
        },
        |_| false,
    );
    let nodes = parts.iter().map(|p| p.nodes).sum();
    let count = parts.iter().map(|p| p.acc).sum();
    Ok((count, meter.stats(nodes, count, !meter.tripped())))
}

/// Streams maps to `visitor` in search order on the calling thread.
/// The visitor may stop the search early by returning `Break`.
pub fn visit_continuous_maps(
    x: &DigitalImage,
    y: &DigitalImage,
    constraint: &PartialConstraint,
    budget: &SearchBudget,
    mut visitor: impl FnMut(&[usize]) -> ControlFlow<()>,
) -> Result<SearchStats> {
    budget.validate()?;
    let domains = constraint.domains(x, y)?;
    let meter = Meter::new(budget);
    let plan = Plan::new(x, domains, None);
    let mut results = 0u64;
    let mut stopped = false;
    let nodes = engine::run_sequential(x, y, &plan, &meter, &mut |a: &[usize]| {
        results += 1;
        let flow = visitor(a);
        if flow.is_break() {
            stopped = true;
            return flow;
        }
        if meter.add_result() {
            ControlFlow::Continue(())
        } else {
            ControlFlow::Break(())
        }
    });
    Ok(meter.stats(nodes, results, !meter.tripped() && !stopped))
}

/// First map (in search order) satisfying the domains.
fn find_first(x: &DigitalImage, y: &DigitalImage, domains: Vec<u64>, budget: &SearchBudget) -> Result<(Option<Vec<usize>>, SearchStats)> {
    budget.validate()?;
    let meter = Meter::new(budget);
    let plan = Plan::new(x, domains, None);
    let parts = run_split(
        x,
        y,
        &plan,
        budget.parallelism,
        &meter,
        || None,
        |acc: &mut Option<Vec<usize>>, a: &[usize]| {
            *acc = Some(a.to_vec());
            ControlFlow::Break(())
        },
        |done| done.iter().any(|p| p.acc.is_some()),
    );
    let nodes = parts.iter().map(|p| p.nodes).sum();
    let found = parts.into_iter().find_map(|p| p.acc);
    if found.is_none() && meter.tripped() {
        return Err(Error::BudgetExhausted(meter.stats(nodes, 0, false)));
    }
    let results = u64::from(found.is_some());
    Ok((found, meter.stats(nodes, results, true)))
}

/// Mask of a non-empty point subset.
pub(crate) fn subset_mask(x: &DigitalImage, subset: &[PointId]) -> Result<u64> {
    let mut mask = 0u64;
    for &p in subset {
        mask |= 1 << x.check_point(p)?;
    }
    if mask == 0 {
        return Err(Error::Precondition("subset must be non-empty".into()));
    }
    Ok(mask)
}

pub(crate) fn retraction_domains(x: &DigitalImage, subset: u64) -> Vec<u64> {
    (0..x.size()).map(|p| if subset >> p & 1 == 1 { 1 << p } else { subset }).collect()
}

/// A continuous `r` with `r(a) = a` on the subset and range inside it,
/// returned as a self-map of `X`. `None` with `exhausted` proves the subset
/// is not a retract.
pub fn find_retraction(
    x: &Arc<DigitalImage>,
    subset: &[PointId],
    budget: &SearchBudget,
) -> Result<(Option<DigitalMap>, SearchStats)> {
    let mask = subset_mask(x, subset)?;
    let (found, stats) = find_first(x, x, retraction_domains(x, mask), budget)?;
    Ok((found.map(|a| DigitalMap::from_parts_unchecked(x.clone(), x.clone(), a)), stats))
}

/// A continuous self-map without fixed points, if one exists.
pub fn find_fixed_point_free(x: &Arc<DigitalImage>, budget: &SearchBudget) -> Result<(Option<DigitalMap>, SearchStats)> {
    let domains = (0..x.size()).map(|p| x.full_mask() & !(1u64 << p)).collect();
    let (found, stats) = find_first(x, x, domains, budget)?;
    Ok((found.map(|a| DigitalMap::from_parts_unchecked(x.clone(), x.clone(), a)), stats))
}
