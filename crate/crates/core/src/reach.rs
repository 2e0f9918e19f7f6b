//! Weakly and strongly reachable sets of an order, the resulting coloring
//! numbers, and an exhaustive `wcol_r` oracle for tiny graphs.

use crate::degeneracy::degeneracy_order;
use crate::error::{Error, Result};
use crate::graph::{BoundedBfs, Graph, Vertex};
use crate::order::Order;

/// Per-vertex reachable sets. Every set contains its own vertex and only
/// vertices that are not later in the order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReachProfile {
    sets: Vec<Vec<Vertex>>,
}

impl ReachProfile {
    pub fn set(&self, v: Vertex) -> &[Vertex] {
        &self.sets[v]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.sets.iter().map(Vec::len).collect()
    }

    pub fn max_size(&self) -> usize {
        self.sets.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn into_sets(self) -> Vec<Vec<Vertex>> {
        self.sets
    }
}

/// Vertices `v` such that `u` is weakly `r`-reachable from `v`: a bounded
/// BFS from `u` through vertices that come after `u`.
pub fn weak_reach_targets(g: &Graph, order: &Order, u: Vertex, r: usize, bfs: &mut BoundedBfs) -> Vec<Vertex> {
    let pu = order.position(u);
    bfs.run(g, u, r, |w| order.position(w) < pu);
    bfs.reached().iter().map(|&(v, _)| v).collect()
}

/// `WReach_r[G, L, v]` for every `v`, each sorted by vertex id.
pub fn wreach_sets(g: &Graph, order: &Order, r: usize) -> ReachProfile {
    let mut sets = vec![Vec::new(); g.n()];
    let mut bfs = BoundedBfs::new(g.n());
    for u in order.iter() {
        for v in weak_reach_targets(g, order, u, r, &mut bfs) {
            sets[v].push(u);
        }
    }
    for s in sets.iter_mut() {
        s.sort_unstable();
    }
    ReachProfile { sets }
}

/// `|WReach_r[G, L, v]|` for every `v`, without materializing the sets.
pub fn wreach_sizes(g: &Graph, order: &Order, r: usize) -> Vec<usize> {
    let mut sizes = vec![0; g.n()];
    let mut bfs = BoundedBfs::new(g.n());
    for u in order.iter() {
        let pu = order.position(u);
        bfs.run(g, u, r, |w| order.position(w) < pu);
        for &(v, _) in bfs.reached() {
            sizes[v] += 1;
        }
    }
    sizes
}

/// `SReach_r[G, L, v]` for a single `v`: BFS from `v` that only continues
/// through vertices later than `v` and collects the earlier vertices it hits.
pub fn sreach_set(g: &Graph, order: &Order, v: Vertex, r: usize, bfs: &mut BoundedBfs) -> Vec<Vertex> {
    let pv = order.position(v);
    bfs.run_expanding(g, v, r, |_| false, |w| order.position(w) > pv);
    let mut out: Vec<Vertex> =
        bfs.reached().iter().map(|&(w, _)| w).filter(|&w| w == v || order.position(w) < pv).collect();
    out.sort_unstable();
    out
}

pub fn sreach_sets(g: &Graph, order: &Order, r: usize) -> ReachProfile {
    let mut bfs = BoundedBfs::new(g.n());
    let sets = g.vertices().map(|v| sreach_set(g, order, v, r, &mut bfs)).collect();
    ReachProfile { sets }
}

/// Largest weakly `r`-reachable set under `order`.
pub fn wcol_of_order(g: &Graph, order: &Order, r: usize) -> usize {
    wreach_sizes(g, order, r).into_iter().max().unwrap_or(0)
}

/// Largest strongly `r`-reachable set under `order`.
pub fn col_of_order(g: &Graph, order: &Order, r: usize) -> usize {
    sreach_sets(g, order, r).max_size()
}

pub const DEFAULT_EXACT_LIMIT: usize = 9;

/// Exact `wcol_r(G)` with a witnessing order, by branch and bound over all
/// orders. Refuses graphs with more than [`DEFAULT_EXACT_LIMIT`] vertices.
pub fn exact_wcol(g: &Graph, r: usize) -> Result<(usize, Order)> {
    exact_wcol_with_limit(g, r, DEFAULT_EXACT_LIMIT)
}

pub fn exact_wcol_with_limit(g: &Graph, r: usize, limit: usize) -> Result<(usize, Order)> {
    if g.n() > limit {
        return Err(Error::TooLarge { n: g.n(), limit });
    }
    if r == 0 {
        return Err(Error::InvalidParameter("radius must be at least 1".into()));
    }
    let (seed_order, _) = degeneracy_order(g);
    let seed_value = wcol_of_order(g, &seed_order, r);
    let mut search = ExactSearch {
        g,
        r,
        pos: vec![usize::MAX; g.n()],
        prefix: Vec::with_capacity(g.n()),
        best: seed_value,
        best_order: seed_order,
        bfs: BoundedBfs::new(g.n()),
    };
    search.extend(0);
    Ok((search.best, search.best_order))
}

/// Builds orders left to right. The weakly reachable set of a vertex only
/// depends on the vertices before it, so the running maximum over the
/// prefix is final and bounds every completion.
struct ExactSearch<'a> {
    g: &'a Graph,
    r: usize,
    pos: Vec<usize>,
    prefix: Vec<Vertex>,
    best: usize,
    best_order: Order,
    bfs: BoundedBfs,
}

impl ExactSearch<'_> {
    fn size_if_next(&mut self, v: Vertex) -> usize {
        let mut size = 1;
        for i in 0..self.prefix.len() {
            let u = self.prefix[i];
            let pos = &self.pos;
            self.bfs.run(self.g, u, self.r, |w| pos[w] <= i);
            if self.bfs.reached().iter().any(|&(w, _)| w == v) {
                size += 1;
            }
        }
        size
    }

    fn extend(&mut self, current_max: usize) {
        let n = self.g.n();
        if self.prefix.len() == n {
            if current_max < self.best {
                self.best = current_max;
                self.best_order = Order::from_sequence(self.prefix.clone()).expect("complete prefix");
            }
            return;
        }
        for v in 0..n {
            if self.pos[v] != usize::MAX {
                continue;
            }
            let value = current_max.max(self.size_if_next(v));
            if value >= self.best {
                continue;
            }
            self.pos[v] = self.prefix.len();
            self.prefix.push(v);
            self.extend(value);
            self.prefix.pop();
            self.pos[v] = usize::MAX;
        }
    }
}
