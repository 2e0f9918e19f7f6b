//! Greedy orderings driven by potential reachable sets.
//!
//! [`GreedyWreach`] builds the order left to right. The potential weakly
//! reachable set of an unplaced vertex is its `WReach_r` set if it were
//! placed next; it only depends on the placed prefix, and placing `v0` adds
//! `v0` to the potential sets of exactly the unplaced vertices found by a
//! depth-`r` BFS from `v0` avoiding the prefix.
//!
//! [`GreedySreach`] builds the order right to left using potential strongly
//! reachable sets, which only depend on which vertices are already placed.

use std::cmp::Reverse;
use std::collections::{BTreeSet, HashSet};

use crate::graph::{BoundedBfs, Graph, Vertex};
use crate::order::Order;

/// Left-to-right greedy state. Each step places the unplaced vertex with the
/// largest potential weakly reachable set, preferring larger degree, then
/// smaller id.
pub struct GreedyWreach<'a> {
    g: &'a Graph,
    r: usize,
    placed: Vec<bool>,
    at: Vec<Vertex>,
    potential: Vec<Vec<Vertex>>,
    queue: BTreeSet<(usize, usize, Reverse<Vertex>)>,
    bfs: BoundedBfs,
    visits: usize,
}

impl<'a> GreedyWreach<'a> {
    pub fn new(g: &'a Graph, r: usize) -> Self {
        assert!(r >= 1, "radius must be at least 1");
        let potential: Vec<Vec<Vertex>> = g.vertices().map(|v| vec![v]).collect();
        let queue = g.vertices().map(|v| (1, g.degree(v), Reverse(v))).collect();
        GreedyWreach {
            g,
            r,
            placed: vec![false; g.n()],
            at: Vec::with_capacity(g.n()),
            potential,
            queue,
            bfs: BoundedBfs::new(g.n()),
            visits: 0,
        }
    }

    /// Places the next vertex; `None` once all vertices are placed.
    pub fn step(&mut self) -> Option<Vertex> {
        let (_, _, Reverse(v0)) = self.queue.pop_last()?;
        self.placed[v0] = true;
        self.at.push(v0);
        let placed = &self.placed;
        self.bfs.run(self.g, v0, self.r, |w| placed[w]);
        self.visits += self.bfs.reached().len();
        for &(w, _) in &self.bfs.reached()[1..] {
            let key = (self.potential[w].len(), self.g.degree(w), Reverse(w));
            self.queue.remove(&key);
            self.potential[w].push(v0);
            self.queue.insert((key.0 + 1, key.1, key.2));
        }
        Some(v0)
    }

    pub fn is_placed(&self, v: Vertex) -> bool {
        self.placed[v]
    }

    pub fn prefix(&self) -> &[Vertex] {
        &self.at
    }

    /// Potential set of an unplaced vertex, or the final set of a placed one.
    pub fn potential(&self, v: Vertex) -> &[Vertex] {
        &self.potential[v]
    }

    /// Total number of vertices visited by all searches so far.
    pub fn bfs_visits(&self) -> usize {
        self.visits
    }

    pub fn finish(mut self) -> (Order, usize) {
        while self.step().is_some() {}
        (Order::from_sequence(self.at).expect("every vertex placed once"), self.visits)
    }
}

pub fn order_greedy_wreach(g: &Graph, r: usize) -> Order {
    GreedyWreach::new(g, r).finish().0
}

/// Right-to-left greedy state. Each step places, at the last free position,
/// the unplaced vertex with the smallest potential strongly reachable set,
/// preferring smaller degree, then smaller id.
pub struct GreedySreach<'a> {
    g: &'a Graph,
    r: usize,
    placed: Vec<bool>,
    rev: Vec<Vertex>,
    potential: Vec<HashSet<Vertex>>,
    queue: BTreeSet<(usize, usize, Vertex)>,
    bfs: BoundedBfs,
}

impl<'a> GreedySreach<'a> {
    pub fn new(g: &'a Graph, r: usize) -> Self {
        assert!(r >= 1, "radius must be at least 1");
        // With nothing placed yet, v would be the last vertex: every other
        // vertex is smaller, so exactly the neighbors are strongly reachable.
        let potential: Vec<HashSet<Vertex>> =
            g.vertices().map(|v| std::iter::once(v).chain(g.neighbors(v).iter().copied()).collect()).collect();
        let queue = g.vertices().map(|v| (potential[v].len(), g.degree(v), v)).collect();
        GreedySreach {
            g,
            r,
            placed: vec![false; g.n()],
            rev: Vec::with_capacity(g.n()),
            potential,
            queue,
            bfs: BoundedBfs::new(g.n()),
        }
    }

    fn key(&self, v: Vertex) -> (usize, usize, Vertex) {
        (self.potential[v].len(), self.g.degree(v), v)
    }

    pub fn step(&mut self) -> Option<Vertex> {
        let (_, _, v0) = self.queue.pop_first()?;
        let r = self.r;
        // Layers: unplaced vertices by shortest distance from v0 through
        // placed vertices only.
        let placed = &self.placed;
        self.bfs.run_expanding(self.g, v0, r, |_| false, |w| placed[w]);
        let mut layers: Vec<Vec<Vertex>> = vec![Vec::new(); r + 1];
        for &(w, d) in &self.bfs.reached()[1..] {
            if !self.placed[w] {
                layers[d as usize].push(w);
            }
        }
        self.placed[v0] = true;
        self.rev.push(v0);

        let touched: Vec<Vertex> = layers.iter().flatten().copied().collect();
        for &v in &touched {
            let key = self.key(v);
            self.queue.remove(&key);
        }
        for i in 1..=r {
            for j in 1..=r - i {
                for &v in &layers[i] {
                    for &w in &layers[j] {
                        if v != w {
                            self.potential[v].insert(w);
                        }
                    }
                }
            }
        }
        for &v in &touched {
            self.potential[v].remove(&v0);
            let key = self.key(v);
            self.queue.insert(key);
        }
        Some(v0)
    }

    pub fn is_placed(&self, v: Vertex) -> bool {
        self.placed[v]
    }

    /// Placed vertices, last position first.
    pub fn suffix_reversed(&self) -> &[Vertex] {
        &self.rev
    }

    pub fn potential(&self, v: Vertex) -> &HashSet<Vertex> {
        &self.potential[v]
    }

    pub fn finish(mut self) -> Order {
        while self.step().is_some() {}
        self.rev.reverse();
        Order::from_sequence(self.rev).expect("every vertex placed once")
    }
}

pub fn order_greedy_sreach(g: &Graph, r: usize) -> Order {
    GreedySreach::new(g, r).finish()
}
