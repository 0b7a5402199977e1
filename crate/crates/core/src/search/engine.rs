use std::ops::ControlFlow;

use rayon::prelude::*;

use super::{with_workers, Meter};
use crate::image::{bits, DigitalImage};

/// Nodes are charged to the shared meter in batches of this size.
const TICK_BATCH: u64 = 256;

/// Assignment order and per-point domains for one search.
#[derive(Clone, Debug)]
pub(crate) struct Plan {
    /// Source points in assignment order.
    pub order: Vec<usize>,
    /// For each position, the source neighbors assigned at earlier positions.
    pub earlier: Vec<u64>,
    /// Allowed targets per source point.
    pub domains: Vec<u64>,
}

impl Plan {
    /// Breadth-first order, one component at a time. Each component starts
    /// from its highest-degree point (lowest index on ties) unless `start`
    /// names the first point.
    pub fn new(x: &DigitalImage, domains: Vec<u64>, start: Option<usize>) -> Plan {
        let n = x.size();
        let mut placed = 0u64;
        let mut order = Vec::with_capacity(n);
        let mut next_root = start;
        while order.len() < n {
            let root = next_root.take().unwrap_or_else(|| {
                (0..n)
                    .filter(|&p| placed >> p & 1 == 0)
                    .max_by_key(|&p| (x.degree(p), std::cmp::Reverse(p)))
                    .expect("unplaced point exists")
            });
            placed |= 1 << root;
            let mut head = order.len();
            order.push(root);
            while head < order.len() {
                let p = order[head];
                head += 1;
                for q in bits(x.neighbor_mask(p) & !placed) {
                    placed |= 1 << q;
                    order.push(q);
                }
            }
        }
        let mut before = 0u64;
        let earlier = order
            .iter()
            .map(|&p| {
                let e = x.neighbor_mask(p) & before;
                before |= 1 << p;
                e
            })
            .collect();
        Plan { order, earlier, domains }
    }

    pub fn root_values(&self) -> Vec<usize> {
        bits(self.domains[self.order[0]]).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Flow {
    Go,
    Stop,
    Budget,
}

struct Dfs<'a, V> {
    plan: &'a Plan,
    target: &'a DigitalImage,
    meter: &'a Meter,
    assign: Vec<usize>,
    nodes: u64,
    pending: u64,
    visit: V,
}

impl<V: FnMut(&[usize]) -> ControlFlow<()>> Dfs<'_, V> {
    fn charge(&mut self) -> bool {
        self.nodes += 1;
        self.pending += 1;
        if self.pending >= TICK_BATCH {
            let n = std::mem::take(&mut self.pending);
            return self.meter.tick(n);
        }
        true
    }

    fn flush(&mut self) -> bool {
        let n = std::mem::take(&mut self.pending);
        n == 0 || self.meter.tick(n)
    }

    fn descend(&mut self, pos: usize) -> Flow {
        if pos == self.plan.order.len() {
            return match (self.visit)(&self.assign) {
                ControlFlow::Continue(()) => Flow::Go,
                ControlFlow::Break(()) => Flow::Stop,
            };
        }
        let v = self.plan.order[pos];
        let mut cand = self.plan.domains[v];
        for u in bits(self.plan.earlier[pos]) {
            cand &= self.target.closed_mask(self.assign[u]);
        }
        for c in bits(cand) {
            if !self.charge() {
                return Flow::Budget;
            }
            self.assign[v] = c;
            let f = self.descend(pos + 1);
            if f != Flow::Go {
                return f;
            }
        }
        Flow::Go
    }

    fn subtree(&mut self, root_value: usize) -> Flow {
        if !self.charge() {
            return Flow::Budget;
        }
        self.assign[self.plan.order[0]] = root_value;
        let f = self.descend(1);
        if !self.flush() && f == Flow::Go {
            return Flow::Budget;
        }
        f
    }
}

/// Result of one first-level subtree.
pub(crate) struct Subtree<T> {
    pub acc: T,
    pub nodes: u64,
}

fn run_one<T, I, V>(x: &DigitalImage, y: &DigitalImage, plan: &Plan, meter: &Meter, root: usize, init: &I, visit: &V) -> Subtree<T>
where
    I: Fn() -> T,
    V: Fn(&mut T, &[usize]) -> ControlFlow<()>,
{
    let mut acc = init();
    let nodes = {
        let mut dfs = Dfs {
            plan,
            target: y,
            meter,
            assign: vec![0; x.size()],
            nodes: 0,
            pending: 0,
            visit: |a: &[usize]| visit(&mut acc, a),
        };
        dfs.subtree(root);
        dfs.nodes
    };
    Subtree { acc, nodes }
}

/// Runs every first-level subtree and returns them in canonical order.
///
/// `done` is consulted on prefixes of the canonical sequence: the result is
/// truncated after the first prefix it accepts. With one worker the
/// remaining subtrees are never started; with several they may run but are
/// discarded, so both cases report the same subtrees.
#[allow(clippy::too_many_arguments)]
pub(crate) fn run_split<T, I, V, D>(
    x: &DigitalImage,
    y: &DigitalImage,
    plan: &Plan,
    workers: usize,
    meter: &Meter,
    init: I,
    visit: V,
    done: D,
) -> Vec<Subtree<T>>
where
    T: Send,
    I: Fn() -> T + Sync,
    V: Fn(&mut T, &[usize]) -> ControlFlow<()> + Sync,
    D: Fn(&[Subtree<T>]) -> bool,
{
    let roots = plan.root_values();
    if workers <= 1 || roots.len() <= 1 {
        let mut out = Vec::with_capacity(roots.len());
        for r in roots {
            if meter.tripped() {
                break;
            }
            out.push(run_one(x, y, plan, meter, r, &init, &visit));
            if done(&out) {
                break;
            }
        }
        return out;
    }
    let mut all: Vec<Subtree<T>> = with_workers(workers, || {
        roots
            .par_iter()
            .map(|&r| run_one(x, y, plan, meter, r, &init, &visit))
            .collect()
    });
    if let Some(cut) = (1..=all.len()).find(|&k| done(&all[..k])) {
        all.truncate(cut);
    }
    all
}

/// Plain depth-first run over all subtrees on the calling thread.
pub(crate) fn run_sequential(
    x: &DigitalImage,
    y: &DigitalImage,
    plan: &Plan,
    meter: &Meter,
    visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
) -> u64 {
    let mut dfs = Dfs {
        plan,
        target: y,
        meter,
        assign: vec![0; x.size()],
        nodes: 0,
        pending: 0,
        visit: |a: &[usize]| visit(a),
    };
    for r in plan.root_values() {
        if dfs.subtree(r) != Flow::Go {
            break;
        }
    }
    dfs.nodes
}

/// All assignments on the calling thread, with node count and a completeness flag.
pub(crate) fn collect_all(x: &DigitalImage, y: &DigitalImage, plan: &Plan, meter: &Meter) -> (Vec<Vec<usize>>, u64, bool) {
    let mut out = Vec::new();
    let nodes = run_sequential(x, y, plan, meter, &mut |a| {
        out.push(a.to_vec());
        ControlFlow::Continue(())
    });
    let complete = !meter.tripped();
    (out, nodes, complete)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::image::digital_interval;

    #[test]
    fn bfs_order_has_assigned_neighbor() {
        let x = digital_interval(0, 5).unwrap();
        let plan = Plan::new(&x, vec![x.full_mask(); 6], None);
        assert_eq!(plan.order[0], 1);
        for pos in 1..6 {
            assert_ne!(plan.earlier[pos], 0);
        }
    }

    #[test]
    fn disconnected_components_each_get_a_root() {
        let x = DigitalImage::from_graph(4, &[(0, 1)]).unwrap();
        let plan = Plan::new(&x, vec![x.full_mask(); 4], None);
        assert_eq!(plan.order, vec![0, 1, 2, 3]);
        assert_eq!(plan.earlier, vec![0, 1, 0, 0]);
    }

    #[test]
    fn explicit_start() {
        let x = digital_interval(0, 3).unwrap();
        let plan = Plan::new(&x, vec![x.full_mask(); 4], Some(3));
        assert_eq!(plan.order, vec![3, 2, 1, 0]);
    }
}
