//! Distance-tree algorithms.
//!
//! The algorithm builds `i`-independent sets `A_1 ⊇ A_2 ⊇ ... ⊇ A_r`. For
//! `i >= 2` the vertices within distance `ρ = ⌊(i-1)/2⌋` of the current
//! centers are contracted into one node per center (the balls are disjoint
//! because the centers are `(i-1)`-independent). In the contracted graph `H`
//! two cells are adjacent iff their centers are at distance `2ρ+1`, and two
//! cells share a neighbor outside all cells iff their centers are at distance
//! `2ρ+2`. So odd steps are plain independent sets of `H` and even steps are
//! radius-2 problems on `H`, where only vertices outside the cells are
//! deleted.

use std::collections::BTreeSet;

use super::{greedy_independent_set, greedy_power_independent_set, keep_best, UqwResult};
use crate::graph::{BoundedBfs, Graph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    /// Distance at most the threshold.
    Left,
    /// Distance larger than the threshold.
    Right,
}

#[derive(Clone, Debug)]
pub struct TreeNode {
    pub vertex: Vertex,
    pub parent: Option<usize>,
    pub left: Option<usize>,
    pub right: Option<usize>,
}

/// Binary classification tree. Node `0` is the root; nodes are stored in
/// insertion order.
#[derive(Clone, Debug)]
pub struct DistanceTree {
    pub nodes: Vec<TreeNode>,
    pub threshold: usize,
}

/// Inserts `items` in order. Each item descends from the root, going left
/// when its distance in `g` minus `blocked` to the node's vertex is at most
/// `threshold`, and takes the first vacant position.
pub fn build_distance_tree(
    g: &Graph,
    items: &[Vertex],
    threshold: usize,
    blocked: impl Fn(Vertex) -> bool,
) -> DistanceTree {
    assert!(!items.is_empty(), "distance tree needs at least one vertex");
    let mut bfs = BoundedBfs::new(g.n());
    let mut near = vec![false; g.n()];
    let mut nodes = vec![TreeNode { vertex: items[0], parent: None, left: None, right: None }];
    for &a in &items[1..] {
        bfs.run(g, a, threshold, &blocked);
        for &(w, _) in bfs.reached() {
            near[w] = true;
        }
        let mut at = 0;
        let id = nodes.len();
        loop {
            let slot = if near[nodes[at].vertex] { &mut nodes[at].left } else { &mut nodes[at].right };
            match *slot {
                Some(next) => at = next,
                None => {
                    *slot = Some(id);
                    break;
                }
            }
        }
        nodes.push(TreeNode { vertex: a, parent: Some(at), left: None, right: None });
        for &(w, _) in bfs.reached() {
            near[w] = false;
        }
    }
    DistanceTree { nodes, threshold }
}

impl DistanceTree {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    fn branch_of(&self, node: usize) -> Option<Branch> {
        let p = self.nodes[node].parent?;
        Some(if self.nodes[p].left == Some(node) { Branch::Left } else { Branch::Right })
    }

    /// Address of a node as a word over `0` (left) and `1` (right).
    pub fn address(&self, node: usize) -> String {
        let mut word = Vec::new();
        let mut at = node;
        while let Some(b) = self.branch_of(at) {
            word.push(if b == Branch::Left { '0' } else { '1' });
            at = self.nodes[at].parent.expect("non-root has a parent");
        }
        word.iter().rev().collect()
    }

    pub fn node_at(&self, address: &str) -> Option<usize> {
        let mut at = 0;
        for c in address.chars() {
            at = match c {
                '0' => self.nodes[at].left?,
                '1' => self.nodes[at].right?,
                _ => return None,
            };
        }
        Some(at)
    }

    /// Nodes on a longest root-to-leaf path, root first. Among equally long
    /// paths the one ending at the lexicographically smallest address.
    fn longest_path(&self) -> Vec<usize> {
        let mut best: Option<(usize, String, usize)> = None;
        for i in 0..self.nodes.len() {
            if self.nodes[i].left.is_some() || self.nodes[i].right.is_some() {
                continue;
            }
            let addr = self.address(i);
            let better = match &best {
                None => true,
                Some((len, a, _)) => addr.len() > *len || (addr.len() == *len && addr < *a),
            };
            if better {
                best = Some((addr.len(), addr, i));
            }
        }
        let mut path = vec![best.expect("non-empty tree has a leaf").2];
        while let Some(p) = self.nodes[*path.last().unwrap()].parent {
            path.push(p);
        }
        path.reverse();
        path
    }

    /// Longest run of equal branch directions on a longest root-to-leaf
    /// path, as the list of vertices on it. Right runs win ties, then runs
    /// closer to the root. A single-node tree gives a right run.
    pub fn longest_monotone_subpath(&self) -> (Vec<Vertex>, Branch) {
        let path = self.longest_path();
        let mut best: (usize, usize, Branch) = (0, 0, Branch::Right);
        let mut start = 0;
        for k in 1..path.len() {
            let b = self.branch_of(path[k]).expect("non-root");
            if k > 1 && self.branch_of(path[k - 1]) != Some(b) {
                start = k - 1;
            }
            let len = k - start;
            if len > best.0 || (len == best.0 && b == Branch::Right && best.2 == Branch::Left) {
                best = (len, start, b);
            }
        }
        let (len, s, b) = best;
        (path[s..=s + len].iter().map(|&i| self.nodes[i].vertex).collect(), b)
    }

    /// Longest chain of right children anywhere in the tree; its vertices
    /// are pairwise farther apart than the threshold. Ties by insertion
    /// order of the top node.
    pub fn longest_right_chain(&self) -> Vec<Vertex> {
        let mut len = vec![1usize; self.nodes.len()];
        for i in (0..self.nodes.len()).rev() {
            if let Some(c) = self.nodes[i].right {
                len[i] = 1 + len[c];
            }
        }
        let top = (0..self.nodes.len()).max_by_key(|&i| (len[i], std::cmp::Reverse(i))).unwrap_or(0);
        let mut out = vec![self.nodes[top].vertex];
        let mut at = top;
        while let Some(c) = self.nodes[at].right {
            out.push(self.nodes[c].vertex);
            at = c;
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TreeVariant {
    /// Re-classify the whole input against the accumulated deletions.
    Tree1,
    /// Work on the shrinking near-set only.
    Tree2,
    /// Candidates from greedy independent sets of the squared graph.
    LdIt,
}

impl TreeVariant {
    pub fn name(self) -> &'static str {
        match self {
            TreeVariant::Tree1 => "tree1",
            TreeVariant::Tree2 => "tree2",
            TreeVariant::LdIt => "ld_it",
        }
    }
}

/// Below this many vertices the radius-2 engine stops deleting.
pub const STOP_THRESHOLD: usize = 4;

/// Contracted graph: nodes `0..centers.len()` are the cells, the remaining
/// nodes are the vertices of `G - S` outside all cells.
struct Contraction {
    h: Graph,
    /// Original vertex of each node (the center for cells).
    orig: Vec<Vertex>,
    cells: usize,
}

fn contract(g: &Graph, centers: &[Vertex], radius: usize, deleted: &[bool]) -> Contraction {
    let n = g.n();
    let mut owner = vec![usize::MAX; n];
    let mut queue: Vec<(Vertex, usize)> = Vec::new();
    for (i, &c) in centers.iter().enumerate() {
        owner[c] = i;
        queue.push((c, 0));
    }
    let mut head = 0;
    while head < queue.len() {
        let (u, d) = queue[head];
        head += 1;
        if d == radius {
            continue;
        }
        for &w in g.neighbors(u) {
            if !deleted[w] && owner[w] == usize::MAX {
                owner[w] = owner[u];
                queue.push((w, d + 1));
            }
        }
    }
    let mut node = vec![usize::MAX; n];
    let mut orig: Vec<Vertex> = centers.to_vec();
    for v in g.vertices() {
        if deleted[v] {
            continue;
        }
        if owner[v] != usize::MAX {
            node[v] = owner[v];
        } else {
            node[v] = orig.len();
            orig.push(v);
        }
    }
    let edges: BTreeSet<(usize, usize)> = g
        .edges()
        .filter(|&(u, v)| !deleted[u] && !deleted[v] && node[u] != node[v])
        .map(|(u, v)| (node[u].min(node[v]), node[u].max(node[v])))
        .collect();
    Contraction { h: Graph::from_edges(orig.len(), edges), orig, cells: centers.len() }
}

/// Radius-2 engine on the contracted graph. Returns candidates as
/// (deleted nodes, independent cell nodes).
fn radius_two_engine(c: &Contraction, variant: TreeVariant) -> Vec<(Vec<usize>, Vec<usize>)> {
    let h = &c.h;
    let input: Vec<usize> = (0..c.cells).collect();
    let mut removed = vec![false; h.n()];
    let mut d: Vec<usize> = Vec::new();
    let mut cur = input.clone();
    let mut candidates = Vec::new();
    loop {
        let tree_items = if variant == TreeVariant::Tree1 { &input } else { &cur };
        let tree = build_distance_tree(h, tree_items, 2, |w| removed[w]);
        let candidate = match variant {
            TreeVariant::LdIt => greedy_power_independent_set(h, &input, 2, &d),
            _ => tree.longest_right_chain(),
        };
        candidates.push((d.clone(), candidate));
        let (chain, kind) = tree.longest_monotone_subpath();
        if kind == Branch::Right || cur.len() < STOP_THRESHOLD {
            break;
        }
        let mut in_x = vec![false; h.n()];
        for &x in &chain {
            in_x[x] = true;
        }
        let w = (c.cells..h.n())
            .filter(|&w| !removed[w])
            .map(|w| (h.neighbors(w).iter().filter(|&&x| in_x[x]).count(), std::cmp::Reverse(w)))
            .max();
        let Some((hits, std::cmp::Reverse(w))) = w else { break };
        if hits == 0 {
            break;
        }
        removed[w] = true;
        d.push(w);
        cur = h.neighbors(w).iter().copied().filter(|&x| in_x[x]).collect();
    }
    candidates
}

pub fn uqw_tree(g: &Graph, a: &[Vertex], r: usize, variant: TreeVariant) -> UqwResult {
    assert!(r >= 1, "radius must be at least 1");
    let mut deleted_mask = vec![false; g.n()];
    let mut s: Vec<Vertex> = Vec::new();
    let mut centers = greedy_independent_set(g, a);
    if centers.is_empty() {
        return UqwResult::new(Vec::new(), Vec::new(), r);
    }
    for i in 2..=r {
        let rho = (i - 1) / 2;
        let c = contract(g, &centers, rho, &deleted_mask);
        if i % 2 == 1 {
            let cells: Vec<usize> = (0..c.cells).collect();
            centers = greedy_independent_set(&c.h, &cells).into_iter().map(|x| c.orig[x]).collect();
            continue;
        }
        let mut best = None;
        for (d, b) in radius_two_engine(&c, variant) {
            let mut del = s.clone();
            del.extend(d.iter().map(|&x| c.orig[x]));
            let cand = UqwResult::new(del, b.iter().map(|&x| c.orig[x]).collect(), i);
            keep_best(g, &mut best, cand);
        }
        let (chosen, _) = best.expect("the engine records at least one candidate");
        s = chosen.deleted;
        for &v in &s {
            deleted_mask[v] = true;
        }
        centers = chosen.independent;
    }
    UqwResult::new(s, centers, r)
}
