//! Immutable undirected simple graphs, edge-list ingestion and bounded
//! breadth-first search.

use std::collections::{HashMap, VecDeque};
use std::io::BufRead;

use crate::error::{Error, Result};

/// Internal vertex id, always in `0..n`.
pub type Vertex = usize;

/// Undirected simple graph with sorted adjacency lists.
///
/// Vertices carry the label they had in the input file; internal ids are
/// dense and assigned in ascending label order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    labels: Vec<u64>,
    index: HashMap<u64, Vertex>,
    m: usize,
}

impl Graph {
    /// Builds a graph on `0..n` whose labels equal the internal ids.
    /// Self-loops are dropped and parallel edges collapsed.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            assert!(u < n && v < n, "edge ({u}, {v}) out of range for n = {n}");
            if u != v {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        Self::from_raw(adj, (0..n as u64).collect())
    }

    /// Builds a graph from labelled edges. Every label that occurs in an
    /// edge (including self-loops) becomes a vertex, as does every label in
    /// `isolated`.
    pub fn from_labeled_edges(edges: &[(u64, u64)], isolated: &[u64]) -> Self {
        let mut labels: Vec<u64> = edges.iter().flat_map(|&(a, b)| [a, b]).chain(isolated.iter().copied()).collect();
        labels.sort_unstable();
        labels.dedup();
        let index: HashMap<u64, Vertex> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let mut adj = vec![Vec::new(); labels.len()];
        for &(a, b) in edges {
            let (u, v) = (index[&a], index[&b]);
            if u != v {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        Self::from_raw(adj, labels)
    }

    fn from_raw(mut adj: Vec<Vec<Vertex>>, labels: Vec<u64>) -> Self {
        let mut twice_m = 0;
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
            twice_m += list.len();
        }
        let index = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        Graph { adj, labels, index, m: twice_m / 2 }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn average_degree(&self) -> f64 {
        if self.is_empty() {
            0.0
        } else {
            2.0 * self.m as f64 / self.n() as f64
        }
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Original label of an internal vertex.
    pub fn label(&self, v: Vertex) -> u64 {
        self.labels[v]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    /// Internal id of an original label.
    pub fn vertex_of(&self, label: u64) -> Option<Vertex> {
        self.index.get(&label).copied()
    }

    /// Subgraph induced by `vertices`, keeping original labels. The second
    /// component maps new ids back to ids of `self`.
    pub fn induced_subgraph(&self, vertices: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let mut keep: Vec<Vertex> = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            local[v] = i;
        }
        let adj = keep
            .iter()
            .map(|&v| self.adj[v].iter().filter(|&&w| local[w] != usize::MAX).map(|&w| local[w]).collect())
            .collect();
        let labels = keep.iter().map(|&v| self.labels[v]).collect();
        (Self::from_raw(adj, labels), keep)
    }

    /// Closed `r`-neighborhood of `v` in the graph minus the vertices for
    /// which `blocked` returns true. `v` itself is never blocked.
    pub fn ball_avoiding(&self, v: Vertex, r: usize, blocked: impl Fn(Vertex) -> bool) -> Vec<Vertex> {
        let mut bfs = BoundedBfs::new(self.n());
        bfs.run(self, v, r, blocked);
        bfs.reached().iter().map(|&(u, _)| u).collect()
    }

    /// Closed `r`-neighborhood `N_r[v]`.
    pub fn ball(&self, v: Vertex, r: usize) -> Vec<Vertex> {
        self.ball_avoiding(v, r, |_| false)
    }

    /// Distances from `v` to every vertex, `None` when unreachable or
    /// farther than `r`.
    pub fn distances_within(&self, v: Vertex, r: usize, blocked: impl Fn(Vertex) -> bool) -> Vec<Option<u32>> {
        let mut out = vec![None; self.n()];
        let mut bfs = BoundedBfs::new(self.n());
        bfs.run(self, v, r, blocked);
        for &(u, d) in bfs.reached() {
            out[u] = Some(d);
        }
        out
    }

    /// Connected components of the graph minus blocked vertices, each sorted,
    /// ordered by smallest member.
    pub fn components(&self, blocked: impl Fn(Vertex) -> bool) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for s in self.vertices() {
            if seen[s] || blocked(s) {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &w in &self.adj[u] {
                    if !seen[w] && !blocked(w) {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The `r`-th power: same vertices, `uv` an edge iff `0 < dist(u, v) <= r`.
    pub fn power(&self, r: usize) -> Graph {
        assert!(r >= 1, "power graph needs r >= 1");
        if r == 1 {
            return self.clone();
        }
        let mut bfs = BoundedBfs::new(self.n());
        let adj = self
            .vertices()
            .map(|v| {
                bfs.run(self, v, r, |_| false);
                bfs.reached().iter().map(|&(u, _)| u).filter(|&u| u != v).collect()
            })
            .collect();
        Self::from_raw(adj, self.labels.clone())
    }

    /// Canonical edge list: one `u v` per line with `u < v` in original
    /// labels, sorted.
    pub fn to_edge_list(&self) -> String {
        let mut pairs: Vec<(u64, u64)> = self
            .edges()
            .map(|(u, v)| {
                let (a, b) = (self.labels[u], self.labels[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        pairs.sort_unstable();
        let mut out = String::with_capacity(pairs.len() * 8);
        for (a, b) in pairs {
            out.push_str(&format!("{a} {b}\n"));
        }
        out
    }
}

/// Parses a whitespace-separated edge list. Lines starting with `#` or `%`
/// are comments; columns after the first two (weights, timestamps) are
/// ignored.
pub fn parse_edge_list(reader: impl BufRead) -> Result<Graph> {
    let mut edges = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let mut fields = trimmed.split_whitespace();
        let mut next = |what: &str| -> Result<u64> {
            let tok = fields
                .next()
                .ok_or_else(|| Error::Parse { line: i + 1, message: format!("missing {what} endpoint") })?;
            tok.parse::<u64>()
                .map_err(|_| Error::Parse { line: i + 1, message: format!("invalid vertex label {tok:?}") })
        };
        let a = next("first")?;
        let b = next("second")?;
        edges.push((a, b));
    }
    Ok(Graph::from_labeled_edges(&edges, &[]))
}

pub fn parse_edge_list_str(text: &str) -> Result<Graph> {
    parse_edge_list(text.as_bytes())
}

pub fn read_edge_list(path: impl AsRef<std::path::Path>) -> Result<Graph> {
    let file = std::fs::File::open(path)?;
    parse_edge_list(std::io::BufReader::new(file))
}

/// Reusable bounded BFS. Keeps its visitation stamps between runs so that
/// repeated searches cost only the size of the explored ball.
#[derive(Clone, Debug)]
pub struct BoundedBfs {
    stamp: Vec<u32>,
    epoch: u32,
    reached: Vec<(Vertex, u32)>,
}

impl BoundedBfs {
    pub fn new(n: usize) -> Self {
        BoundedBfs { stamp: vec![0; n], epoch: 0, reached: Vec::new() }
    }

    fn next_epoch(&mut self) {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
    }

    /// Explores from `source` up to depth `r`, never entering blocked
    /// vertices. Results are available through [`reached`](Self::reached)
    /// in BFS order, source first.
    pub fn run(&mut self, g: &Graph, source: Vertex, r: usize, blocked: impl Fn(Vertex) -> bool) {
        self.run_expanding(g, source, r, blocked, |_| true);
    }

    /// Like [`run`](Self::run), but only vertices for which `expand` holds
    /// (and the source) have their neighbors explored. Non-expanded vertices
    /// are still reported.
    pub fn run_expanding(
        &mut self,
        g: &Graph,
        source: Vertex,
        r: usize,
        blocked: impl Fn(Vertex) -> bool,
        expand: impl Fn(Vertex) -> bool,
    ) {
        self.next_epoch();
        self.reached.clear();
        self.stamp[source] = self.epoch;
        self.reached.push((source, 0));
        let mut head = 0;
        while head < self.reached.len() {
            let (u, d) = self.reached[head];
            head += 1;
            if d as usize >= r || (u != source && !expand(u)) {
                continue;
            }
            for &w in g.neighbors(u) {
                if self.stamp[w] != self.epoch && !blocked(w) {
                    self.stamp[w] = self.epoch;
                    self.reached.push((w, d + 1));
                }
            }
        }
    }

    pub fn reached(&self) -> &[(Vertex, u32)] {
        &self.reached
    }
}
