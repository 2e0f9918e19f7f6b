//! Distance-constrained transitive-fraternal augmentations.
//!
//! An arc `u -> v` points from the later to the earlier endpoint, so that it
//! matches `v ∈ WReach[u]`. Arcs added in step `i` get weight `i` and keep it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::degeneracy::degeneracy_order;
use crate::graph::{Graph, Vertex};
use crate::order::Order;

#[derive(Clone, Debug)]
pub struct DtfGraph {
    out: Vec<BTreeMap<Vertex, u32>>,
    steps: usize,
}

impl DtfGraph {
    pub fn n(&self) -> usize {
        self.out.len()
    }

    /// Number of augmentation steps performed (the radius).
    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn weight(&self, u: Vertex, v: Vertex) -> Option<u32> {
        self.out[u].get(&v).copied()
    }

    pub fn out_arcs(&self, u: Vertex) -> impl Iterator<Item = (Vertex, u32)> + '_ {
        self.out[u].iter().map(|(&v, &w)| (v, w))
    }

    /// All arcs `(tail, head, weight)` sorted by tail, then head.
    pub fn arcs(&self) -> impl Iterator<Item = (Vertex, Vertex, u32)> + '_ {
        self.out.iter().enumerate().flat_map(|(u, m)| m.iter().map(move |(&v, &w)| (u, v, w)))
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(BTreeMap::len).sum()
    }

    pub fn max_out_degree(&self) -> usize {
        self.out.iter().map(BTreeMap::len).max().unwrap_or(0)
    }

    /// Underlying undirected graph on the same vertex ids.
    pub fn underlying(&self) -> Graph {
        Graph::from_edges(self.n(), self.arcs().map(|(u, v, _)| (u, v)))
    }

    /// One `u v ω` line per arc, using the original labels of `g`.
    pub fn dump(&self, g: &Graph) -> String {
        let mut s = String::new();
        for (u, v, w) in self.arcs() {
            let _ = writeln!(s, "{} {} {}", g.label(u), g.label(v), w);
        }
        s
    }

    fn joined(&self, u: Vertex, v: Vertex) -> bool {
        self.out[u].contains_key(&v) || self.out[v].contains_key(&u)
    }
}

pub fn dtf_augment(g: &Graph, r: usize) -> DtfGraph {
    assert!(r >= 1, "radius must be at least 1");
    let n = g.n();
    let (order, _) = degeneracy_order(g);
    let mut out: Vec<BTreeMap<Vertex, u32>> = vec![BTreeMap::new(); n];
    for (u, v) in g.edges() {
        let (tail, head) = if order.less(u, v) { (v, u) } else { (u, v) };
        out[tail].insert(head, 1);
    }
    let mut aug = DtfGraph { out, steps: 1 };

    for i in 2..=r as u32 {
        let mut inn: Vec<Vec<(Vertex, u32)>> = vec![Vec::new(); n];
        for (u, v, w) in aug.arcs() {
            inn[v].push((u, w));
        }

        // Transitive: w -> v (b), v -> u (a), a + b = i gives w -> u.
        let mut transitive: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();
        for (v, into_v) in inn.iter().enumerate() {
            for &(w, b) in into_v {
                for (&u, &a) in &aug.out[v] {
                    if a + b == i && u != w && !aug.joined(w, u) {
                        transitive.insert((w, u));
                    }
                }
            }
        }
        // The same pair found in both directions keeps the arc with the
        // smaller tail.
        let transitive: Vec<(Vertex, Vertex)> =
            transitive.iter().copied().filter(|&(w, u)| !(w > u && transitive.contains(&(u, w)))).collect();
        let new_pair: BTreeSet<(Vertex, Vertex)> = transitive.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();

        // Fraternal: u -> v (1), u -> w (i - 1).
        let mut fraternal: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();
        for u in 0..n {
            for (&v, &a) in &aug.out[u] {
                if a != 1 {
                    continue;
                }
                for (&w, &b) in &aug.out[u] {
                    if b + 1 == i && v != w {
                        let pair = (v.min(w), v.max(w));
                        if !aug.joined(v, w) && !new_pair.contains(&pair) {
                            fraternal.insert(pair);
                        }
                    }
                }
            }
        }

        for (w, u) in transitive {
            aug.out[w].insert(u, i);
        }
        if !fraternal.is_empty() {
            let aux = Graph::from_edges(n, fraternal.iter().copied());
            let (aux_order, _) = degeneracy_order(&aux);
            for (a, b) in fraternal {
                let (tail, head) = if aux_order.less(a, b) { (b, a) } else { (a, b) };
                aug.out[tail].insert(head, i);
            }
        }
        aug.steps = i as usize;
    }
    aug
}

/// Degeneracy order of the underlying graph of the `r`-th augmentation.
pub fn order_from_dtf(g: &Graph, r: usize) -> Order {
    degeneracy_order(&dtf_augment(g, r).underlying()).0
}

/// Right-hand side `(Δ⁺ + 1)·c + 1` of the bound on weakly reachable sets,
/// where `c` is the largest number of earlier neighbors in the underlying
/// augmented graph under `order`.
pub fn dtf_wreach_bound(aug: &DtfGraph, order: &Order) -> usize {
    let c = crate::degeneracy::max_back_degree(&aug.underlying(), order);
    (aug.max_out_degree() + 1) * c + 1
}
