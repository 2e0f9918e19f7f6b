//! Lower-bound graphs `G(k, r, m')`.
//!
//! `T(k, r)` is a complete tree with branching degree `d = m' - 1` whose
//! root-to-leaf paths have `c = binom(k + r, r)` vertices. `G(1, r) = T(1, r)`,
//! `G(k, 1)` is the ancestor-descendant closure of `T(k, 1)`, and otherwise
//! `G(k, r)` is `G(k, r - 1)` with `d` copies of `G(k - 1, r)` below every
//! leaf, each copy fully adjacent to that leaf.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{BoundedBfs, Graph, Vertex};
use crate::reach::exact_wcol;
use crate::uqw::{maximum_independent_set, power_bitmasks, subsets};

/// Refuse to build instances with more vertices than this.
pub const MAX_LB_VERTICES: usize = 2_000_000;

#[derive(Clone, Debug)]
pub struct LbInstance {
    pub graph: Graph,
    /// Parent in the spanning tree `T`, `None` for the root.
    pub parent: Vec<Option<Vertex>>,
    /// Level in `T`, the root being on level 0.
    pub level: Vec<usize>,
    pub k: usize,
    pub r: usize,
    pub m_prime: usize,
    pub c: usize,
    pub d: usize,
    /// Number of levels kept when the instance was truncated.
    pub truncated_levels: Option<usize>,
}

pub fn binomial(n: usize, k: usize) -> Option<usize> {
    let k = k.min(n - k.min(n));
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

struct Builder {
    d: usize,
    cap: usize,
    parent: Vec<Option<Vertex>>,
    level: Vec<usize>,
    edges: Vec<(Vertex, Vertex)>,
}

struct Part {
    vertices: Vec<Vertex>,
    leaves: Vec<Vertex>,
}

impl Builder {
    fn vertex(&mut self, parent: Option<Vertex>, level: usize) -> Option<Vertex> {
        if level >= self.cap {
            return None;
        }
        let v = self.parent.len();
        self.parent.push(parent);
        self.level.push(level);
        if let Some(p) = parent {
            self.edges.push((p, v));
        }
        Some(v)
    }

    /// Complete tree with `levels` levels hanging from `parent`. With
    /// `closure`, every vertex is joined to all its ancestors inside the
    /// tree.
    fn tree(&mut self, parent: Option<Vertex>, level: usize, levels: usize, closure: bool) -> Part {
        let Some(root) = self.vertex(parent, level) else {
            return Part { vertices: Vec::new(), leaves: Vec::new() };
        };
        let mut vertices = vec![root];
        let mut frontier = vec![(root, vec![root])];
        for depth in 1..levels {
            let mut next = Vec::new();
            for (u, chain) in &frontier {
                for _ in 0..self.d {
                    let Some(v) = self.vertex(Some(*u), level + depth) else { break };
                    vertices.push(v);
                    if closure {
                        for &a in &chain[..chain.len() - 1] {
                            self.edges.push((a, v));
                        }
                    }
                    let mut ch = chain.clone();
                    ch.push(v);
                    next.push((v, ch));
                }
            }
            frontier = next;
        }
        let leaves = frontier.into_iter().map(|(v, _)| v).filter(|&v| self.level[v] == level + levels - 1).collect();
        Part { vertices, leaves }
    }

    fn build(&mut self, k: usize, r: usize, parent: Option<Vertex>, level: usize) -> Part {
        if k == 1 {
            return self.tree(parent, level, r + 1, false);
        }
        if r == 1 {
            return self.tree(parent, level, k + 1, true);
        }
        let top = self.build(k, r - 1, parent, level);
        let mut vertices = top.vertices;
        let mut leaves = Vec::new();
        for &leaf in &top.leaves {
            for _ in 0..self.d {
                let copy = self.build(k - 1, r, Some(leaf), self.level[leaf] + 1);
                for &v in &copy.vertices {
                    if self.parent[v] != Some(leaf) {
                        self.edges.push((leaf, v));
                    }
                }
                vertices.extend(copy.vertices);
                leaves.extend(copy.leaves);
            }
        }
        Part { vertices, leaves }
    }
}

/// Builds `G(k, r, m')`. With `truncate_levels`, only the top levels of the
/// tree are generated.
pub fn generate_lb(k: usize, r: usize, m_prime: usize, truncate_levels: Option<usize>) -> Result<LbInstance> {
    if k == 0 || r == 0 {
        return Err(Error::InvalidParameter("k and r must be at least 1".into()));
    }
    let c = binomial(k + r, r).ok_or_else(|| Error::InvalidParameter("binom(k+r, r) overflows".into()))?;
    if m_prime <= c {
        return Err(Error::InvalidParameter(format!("m' = {m_prime} must exceed c = binom(k+r, r) = {c}")));
    }
    if truncate_levels == Some(0) {
        return Err(Error::InvalidParameter("truncation must keep at least one level".into()));
    }
    let d = m_prime - 1;
    let levels = truncate_levels.map_or(c, |t| t.min(c));
    let mut count: usize = 0;
    let mut layer: usize = 1;
    for _ in 0..levels {
        count = count.saturating_add(layer);
        layer = layer.saturating_mul(d);
    }
    if count > MAX_LB_VERTICES {
        return Err(Error::TooLarge { n: count, limit: MAX_LB_VERTICES });
    }
    let mut b = Builder { d, cap: levels, parent: Vec::new(), level: Vec::new(), edges: Vec::new() };
    b.build(k, r, None, 0);
    let n = b.parent.len();
    Ok(LbInstance {
        graph: Graph::from_edges(n, b.edges),
        parent: b.parent,
        level: b.level,
        k,
        r,
        m_prime,
        c,
        d,
        truncated_levels: truncate_levels.filter(|&t| t < c),
    })
}

impl LbInstance {
    pub fn is_ancestor(&self, a: Vertex, mut v: Vertex) -> bool {
        while let Some(p) = self.parent[v] {
            if p == a {
                return true;
            }
            v = p;
        }
        false
    }

    /// `child parent` lines with original labels, the root omitted.
    pub fn parent_sidecar(&self) -> String {
        let mut s = String::new();
        for (v, p) in self.parent.iter().enumerate() {
            if let Some(p) = p {
                let _ = writeln!(s, "{} {}", self.graph.label(v), self.graph.label(*p));
            }
        }
        s
    }

    fn children(&self) -> Vec<Vec<Vertex>> {
        let mut ch = vec![Vec::new(); self.parent.len()];
        for (v, p) in self.parent.iter().enumerate() {
            if let Some(p) = p {
                ch[*p].push(v);
            }
        }
        ch
    }

    fn subtree(&self, children: &[Vec<Vertex>], t: Vertex) -> Vec<Vertex> {
        let mut out = vec![t];
        let mut i = 0;
        while i < out.len() {
            out.extend(children[out[i]].iter().copied());
            i += 1;
        }
        out
    }
}

#[derive(Clone, Debug, Default)]
pub struct LbReport {
    /// Every edge joins an ancestor-descendant pair of `T`.
    pub edges_ancestral: bool,
    /// Internal nodes have exactly `d` children and all leaves are on the
    /// last level.
    pub tree_shape: bool,
    /// `|V| >= (m' - 1)^c`; `None` for truncated instances.
    pub vertex_bound: Option<bool>,
    pub vertex_count: usize,
    /// Every vertex reaches each ancestor within distance `r` inside the
    /// tree path between them.
    pub claim: bool,
    /// Sampled subtrees induce subgraphs of diameter at most `2r`.
    pub subtree_diameter: bool,
    pub subtrees_checked: usize,
    /// Largest `|B|` found for each `|Z| = 0, 1, 2` and whether
    /// `|B| <= |Z|·m' + 1` held; `None` above the exhaustive limit.
    pub separation: Option<(Vec<usize>, bool)>,
    /// `wcol_r` from the exact oracle and whether it equals `c`.
    pub wcol: Option<(usize, bool)>,
}

impl LbReport {
    /// All checks that were run passed.
    pub fn all_hold(&self) -> bool {
        self.edges_ancestral
            && self.tree_shape
            && self.vertex_bound != Some(false)
            && self.claim
            && self.subtree_diameter
            && self.separation.as_ref().is_none_or(|s| s.1)
            && self.wcol.is_none_or(|w| w.1)
    }
}

const SUBTREE_SAMPLES: usize = 400;

pub fn check_lb_properties(inst: &LbInstance, exhaustive_limit: usize) -> LbReport {
    let g = &inst.graph;
    let n = g.n();
    let r = inst.r;
    let children = inst.children();
    let levels = inst.truncated_levels.unwrap_or(inst.c);
    let mut rep = LbReport { vertex_count: n, ..Default::default() };

    rep.edges_ancestral = g.edges().all(|(u, v)| inst.is_ancestor(u, v) || inst.is_ancestor(v, u));
    rep.tree_shape = (0..n).all(|v| {
        let ch = children[v].len();
        if inst.level[v] + 1 == levels {
            ch == 0
        } else {
            ch == inst.d
        }
    }) && inst.parent.iter().filter(|p| p.is_none()).count() == 1;
    if inst.truncated_levels.is_none() {
        let bound = (inst.d as u128).checked_pow(inst.c as u32);
        rep.vertex_bound = Some(bound.is_some_and(|b| n as u128 >= b));
    }

    // Ancestor reachability: BFS from v inside the tree path v..u for every ancestor u.
    let mut on_path = vec![false; n];
    let mut bfs = BoundedBfs::new(n);
    rep.claim = (0..n).all(|v| {
        let mut path = vec![v];
        on_path[v] = true;
        let mut ok = true;
        let mut at = v;
        while let Some(u) = inst.parent[at] {
            path.push(u);
            on_path[u] = true;
            bfs.run(g, v, r, |w| !on_path[w]);
            if !bfs.reached().iter().any(|&(w, _)| w == u) {
                ok = false;
                break;
            }
            at = u;
        }
        for &w in &path {
            on_path[w] = false;
        }
        ok
    });

    // Subtree diameters, on an evenly spaced sample of roots.
    let step = n.div_ceil(SUBTREE_SAMPLES).max(1);
    let mut inside = vec![false; n];
    rep.subtree_diameter = true;
    for t in (0..n).step_by(step) {
        let sub = inst.subtree(&children, t);
        for &w in &sub {
            inside[w] = true;
        }
        let sources: Vec<Vertex> = if sub.len() <= 200 { sub.clone() } else { vec![t] };
        let radius = if sub.len() <= 200 { 2 * r } else { r };
        let ok = sources.iter().all(|&s| {
            bfs.run(g, s, radius, |w| !inside[w]);
            bfs.reached().len() == sub.len()
        });
        for &w in &sub {
            inside[w] = false;
        }
        rep.subtrees_checked += 1;
        rep.subtree_diameter &= ok;
    }

    if n <= exhaustive_limit.min(64) {
        let mut best = vec![0usize; 3];
        let mut holds = true;
        for (z, slot) in best.iter_mut().enumerate() {
            for del in subsets(n, z) {
                let rest: Vec<Vertex> = (0..n).filter(|v| !del.contains(v)).collect();
                let b = maximum_independent_set(&power_bitmasks(g, &rest, 2 * r, &del)).count_ones() as usize;
                *slot = (*slot).max(b);
                holds &= b <= z * inst.m_prime + 1;
            }
        }
        rep.separation = Some((best, holds));
    }

    if n <= crate::reach::DEFAULT_EXACT_LIMIT && inst.truncated_levels.is_none() {
        if let Ok((w, _)) = exact_wcol(g, r) {
            rep.wcol = Some((w, w == inst.c));
        }
    }
    rep
}

/// Canonical edge set, for determinism checks.
pub fn edge_set(inst: &LbInstance) -> BTreeSet<(Vertex, Vertex)> {
    inst.graph.edges().collect()
}
