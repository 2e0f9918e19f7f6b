//! Treedepth heuristic based on close minimal separators.
//!
//! Each connected part is split by a minimal separator. The initial
//! separator is `N(C)` for a smallest component `C` of `H - N[x]` where `x`
//! has maximum degree; it lies inside `N(x)` and is therefore close. From it
//! we generate the family of minimal separators `N(C')` for components `C'`
//! of `H - (S ∪ N(y))`, `y ∈ S`, and keep the one whose largest remaining
//! component is smallest. Separator vertices come first in the order, then
//! the components recursively. Cliques and single vertices end the recursion.

use std::cmp::Reverse;

use crate::graph::{Graph, Vertex};
use crate::order::Order;

#[derive(Clone, Debug)]
pub struct TreedepthDecomposition {
    pub order: Order,
    /// Height of the elimination forest built by the recursion.
    pub height: usize,
}

pub fn order_treedepth_heuristic(g: &Graph) -> Order {
    treedepth_decomposition(g).order
}

pub fn treedepth_decomposition(g: &Graph) -> TreedepthDecomposition {
    let mut scratch = Scratch::new(g.n());
    let mut at = Vec::with_capacity(g.n());
    let mut height = 0;
    // (vertex set of a connected part, depth of its top in the forest)
    let mut stack: Vec<(Vec<Vertex>, usize)> = Vec::new();
    let mut roots = g.components(|_| false);
    roots.sort_by_key(|c| (Reverse(c.len()), c[0]));
    stack.extend(roots.into_iter().rev().map(|c| (c, 0)));

    while let Some((part, depth)) = stack.pop() {
        let (top, children) = split(g, &part, &mut scratch);
        height = height.max(depth + top.len());
        let below = depth + top.len();
        at.extend(top);
        stack.extend(children.into_iter().rev().map(|c| (c, below)));
    }
    TreedepthDecomposition { order: Order::from_sequence(at).expect("every vertex emitted once"), height }
}

/// Splits a connected part into the vertices placed on top (ordered) and the
/// remaining connected parts (largest first).
fn split(g: &Graph, part: &[Vertex], scratch: &mut Scratch) -> (Vec<Vertex>, Vec<Vec<Vertex>>) {
    scratch.mark_set(part);
    let deg: Vec<usize> = part.iter().map(|&v| scratch.degree_in(g, v)).collect();
    let k = part.len();
    let by_degree = |vs: &mut Vec<Vertex>, scratch: &Scratch| {
        vs.sort_by_key(|&v| (Reverse(scratch.degree_in(g, v)), v));
    };

    if k <= 1 || deg.iter().all(|&d| d + 1 == k) {
        let mut top = part.to_vec();
        by_degree(&mut top, scratch);
        return (top, Vec::new());
    }

    // Universal vertices belong to every separator.
    let universal: Vec<Vertex> = part.iter().zip(&deg).filter(|&(_, &d)| d + 1 == k).map(|(&v, _)| v).collect();
    let separator = if !universal.is_empty() { universal } else { choose_separator(g, part, &deg, scratch) };

    scratch.mark_set(part);
    let mut top = separator;
    by_degree(&mut top, scratch);
    let mut children = scratch.components_without(g, part, &top);
    children.sort_by_key(|c| (Reverse(c.len()), c[0]));
    (top, children)
}

fn choose_separator(g: &Graph, part: &[Vertex], deg: &[usize], scratch: &mut Scratch) -> Vec<Vertex> {
    let x = part.iter().zip(deg).max_by_key(|&(&v, &d)| (d, Reverse(v))).map(|(&v, _)| v).expect("non-empty part");
    let mut closed: Vec<Vertex> = scratch.neighbors_in(g, x);
    closed.push(x);
    let comps = scratch.components_without(g, part, &closed);
    let smallest = comps.iter().min_by_key(|c| (c.len(), c[0])).expect("x is not universal, so H - N[x] is non-empty");
    let initial = scratch.boundary(g, smallest);

    let mut candidates = vec![initial.clone()];
    for &y in &initial {
        let mut removed = initial.clone();
        removed.extend(scratch.neighbors_in(g, y));
        for comp in scratch.components_without(g, part, &removed) {
            let sep = scratch.boundary(g, &comp);
            if !sep.is_empty() {
                candidates.push(sep);
            }
        }
    }
    candidates.sort();
    candidates.dedup();

    let mut best: Option<((usize, usize), Vec<Vertex>)> = None;
    for sep in candidates {
        let comps = scratch.components_without(g, part, &sep);
        if comps.len() < 2 {
            continue;
        }
        let largest = comps.iter().map(Vec::len).max().unwrap_or(0);
        let key = (largest, sep.len());
        if best.as_ref().is_none_or(|(k, s)| key < *k || (key == *k && sep < *s)) {
            best = Some((key, sep));
        }
    }
    best.map(|(_, s)| s).unwrap_or(initial)
}

/// Stamp-based membership for the current part.
struct Scratch {
    part: Vec<u32>,
    part_epoch: u32,
    aux: Vec<u32>,
    aux_epoch: u32,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch { part: vec![0; n], part_epoch: 0, aux: vec![0; n], aux_epoch: 0 }
    }

    fn mark_set(&mut self, part: &[Vertex]) {
        self.part_epoch += 1;
        for &v in part {
            self.part[v] = self.part_epoch;
        }
    }

    fn in_part(&self, v: Vertex) -> bool {
        self.part[v] == self.part_epoch
    }

    fn degree_in(&self, g: &Graph, v: Vertex) -> usize {
        g.neighbors(v).iter().filter(|&&w| self.in_part(w)).count()
    }

    fn neighbors_in(&self, g: &Graph, v: Vertex) -> Vec<Vertex> {
        g.neighbors(v).iter().copied().filter(|&w| self.in_part(w)).collect()
    }

    fn fresh_aux(&mut self) -> u32 {
        self.aux_epoch += 1;
        self.aux_epoch
    }

    /// Neighbors of `set` inside the part, excluding `set` itself; sorted.
    fn boundary(&mut self, g: &Graph, set: &[Vertex]) -> Vec<Vertex> {
        let e = self.fresh_aux();
        for &v in set {
            self.aux[v] = e;
        }
        let mut out = Vec::new();
        for &v in set {
            for &w in g.neighbors(v) {
                if self.in_part(w) && self.aux[w] != e {
                    self.aux[w] = e;
                    out.push(w);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Components of the part minus `removed`, each sorted.
    fn components_without(&mut self, g: &Graph, part: &[Vertex], removed: &[Vertex]) -> Vec<Vec<Vertex>> {
        let e = self.fresh_aux();
        for &v in removed {
            self.aux[v] = e;
        }
        let mut out = Vec::new();
        for &s in part {
            if self.aux[s] == e {
                continue;
            }
            self.aux[s] = e;
            let mut comp = vec![s];
            let mut head = 0;
            while head < comp.len() {
                let u = comp[head];
                head += 1;
                for &w in g.neighbors(u) {
                    if self.in_part(w) && self.aux[w] != e {
                        self.aux[w] = e;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}
