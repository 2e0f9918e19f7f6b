//! Uniform quasi-wideness: given `A` and `r`, find a small deletion set `S`
//! and a large `B ⊆ A \ S` that is `r`-independent in `G - S`.

pub mod tree;
pub mod wcol_based;

use std::cmp::Reverse;
use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{BoundedBfs, Graph, Vertex};

pub use tree::{build_distance_tree, uqw_tree, Branch, DistanceTree, TreeVariant};
pub use wcol_based::{uqw_mfcs, uqw_tgv, TgvMachine, TgvStep, TgvVariant};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UqwResult {
    /// The deletion set `S`, sorted.
    pub deleted: Vec<Vertex>,
    /// The scattered set `B`, sorted.
    pub independent: Vec<Vertex>,
    pub radius: usize,
}

impl UqwResult {
    pub fn new(mut deleted: Vec<Vertex>, mut independent: Vec<Vertex>, radius: usize) -> Self {
        deleted.sort_unstable();
        deleted.dedup();
        independent.sort_unstable();
        independent.dedup();
        UqwResult { deleted, independent, radius }
    }

    /// Two lines, `S: ...` and `B: ...`, with original labels.
    pub fn to_text(&self, g: &Graph) -> String {
        let mut s = String::from("S:");
        for &v in &self.deleted {
            let _ = write!(s, " {}", g.label(v));
        }
        s.push_str("\nB:");
        for &v in &self.independent {
            let _ = write!(s, " {}", g.label(v));
        }
        s.push('\n');
        s
    }
}

/// Graph in which profile distances to `S` are measured.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ProfileDistance {
    /// Distances in `G`.
    #[default]
    InGraph,
    /// Distances in `G - S`, each target `s` being the only undeleted
    /// vertex of `S` during its search.
    InGraphMinusS,
}

/// Checks `B ⊆ A \ S` and that `B` is `r`-independent in `G - S`.
pub fn verify_uqw(g: &Graph, a: &[Vertex], res: &UqwResult) -> bool {
    let mut in_a = vec![false; g.n()];
    for &v in a {
        in_a[v] = true;
    }
    res.independent.iter().all(|&b| in_a[b]) && is_scattered(g, res)
}

fn is_scattered(g: &Graph, res: &UqwResult) -> bool {
    let n = g.n();
    let mut del = vec![false; n];
    let mut in_b = vec![false; n];
    for &s in &res.deleted {
        if s >= n {
            return false;
        }
        del[s] = true;
    }
    for &b in &res.independent {
        if b >= n || del[b] || in_b[b] {
            return false;
        }
        in_b[b] = true;
    }
    let mut bfs = BoundedBfs::new(n);
    res.independent.iter().all(|&b| {
        bfs.run(g, b, res.radius, |w| del[w]);
        bfs.reached()[1..].iter().all(|&(w, _)| !in_b[w])
    })
}

/// Capped distance profile of every vertex of `B` on `S` (`None` = more
/// than `r`), in the order of `res.deleted`.
pub fn distance_profiles(g: &Graph, res: &UqwResult, mode: ProfileDistance) -> Vec<Vec<Option<u32>>> {
    let n = g.n();
    let mut del = vec![false; n];
    for &s in &res.deleted {
        del[s] = true;
    }
    let mut profiles = vec![Vec::with_capacity(res.deleted.len()); res.independent.len()];
    for &s in &res.deleted {
        let dist = match mode {
            ProfileDistance::InGraph => g.distances_within(s, res.radius, |_| false),
            ProfileDistance::InGraphMinusS => g.distances_within(s, res.radius, |w| del[w] && w != s),
        };
        for (p, &b) in profiles.iter_mut().zip(&res.independent) {
            p.push(dist[b]);
        }
    }
    profiles
}

/// Size of the largest class of `B` with equal distance profiles on `S`.
pub fn score(g: &Graph, res: &UqwResult) -> Result<usize> {
    score_with(g, res, ProfileDistance::InGraph)
}

pub fn score_with(g: &Graph, res: &UqwResult, mode: ProfileDistance) -> Result<usize> {
    if !is_scattered(g, res) {
        return Err(Error::InvalidResult(format!("B is not {}-independent in G - S or intersects S", res.radius)));
    }
    Ok(score_unchecked(g, res, mode))
}

fn score_unchecked(g: &Graph, res: &UqwResult, mode: ProfileDistance) -> usize {
    if res.deleted.is_empty() {
        return res.independent.len();
    }
    let mut classes: HashMap<Vec<Option<u32>>, usize> = HashMap::new();
    for p in distance_profiles(g, res, mode) {
        *classes.entry(p).or_default() += 1;
    }
    classes.into_values().max().unwrap_or(0)
}

/// Ranking key of candidate results: larger score, then fewer deletions,
/// then larger `B`.
pub(crate) fn rank(g: &Graph, res: &UqwResult) -> (usize, Reverse<usize>, usize) {
    (score_unchecked(g, res, ProfileDistance::InGraph), Reverse(res.deleted.len()), res.independent.len())
}

pub(crate) type Ranked = (UqwResult, (usize, Reverse<usize>, usize));

/// Keeps the best candidate; on equal rank the earlier one stays.
pub(crate) fn keep_best(g: &Graph, best: &mut Option<Ranked>, cand: UqwResult) {
    debug_assert!(is_scattered(g, &cand), "invalid candidate {cand:?}");
    let key = rank(g, &cand);
    if best.as_ref().is_none_or(|(_, k)| key > *k) {
        *best = Some((cand, key));
    }
}

/// Greedy maximal independent set of `G[A]`: repeatedly take a vertex of
/// minimum degree (smallest id on ties) and drop its neighbors.
pub fn greedy_independent_set(g: &Graph, a: &[Vertex]) -> Vec<Vertex> {
    let mut alive = vec![false; g.n()];
    for &v in a {
        alive[v] = true;
    }
    let mut deg = vec![0usize; g.n()];
    let mut queue = BTreeSet::new();
    for v in g.vertices().filter(|&v| alive[v]) {
        deg[v] = g.neighbors(v).iter().filter(|&&w| alive[w]).count();
        queue.insert((deg[v], v));
    }
    let mut out = Vec::new();
    while let Some((_, v)) = queue.pop_first() {
        out.push(v);
        alive[v] = false;
        let gone: Vec<Vertex> = g.neighbors(v).iter().copied().filter(|&w| alive[w]).collect();
        for &w in &gone {
            alive[w] = false;
            queue.remove(&(deg[w], w));
        }
        for &w in &gone {
            for &x in g.neighbors(w) {
                if alive[x] {
                    queue.remove(&(deg[x], x));
                    deg[x] -= 1;
                    queue.insert((deg[x], x));
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Greedy independent set of `(G - S)^r[A \ S]` without building the power
/// graph. Degrees are ball sizes, maintained by one search per removed
/// vertex.
pub fn greedy_power_independent_set(g: &Graph, a: &[Vertex], r: usize, deleted: &[Vertex]) -> Vec<Vertex> {
    let n = g.n();
    let mut del = vec![false; n];
    for &s in deleted {
        del[s] = true;
    }
    let mut alive = vec![false; n];
    for &v in a {
        alive[v] = !del[v];
    }
    let mut bfs = BoundedBfs::new(n);
    let mut deg = vec![0usize; n];
    let mut queue = BTreeSet::new();
    for v in g.vertices().filter(|&v| alive[v]) {
        bfs.run(g, v, r, |w| del[w]);
        deg[v] = bfs.reached()[1..].iter().filter(|&&(w, _)| alive[w]).count();
        queue.insert((deg[v], v));
    }
    let mut out = Vec::new();
    while let Some((_, v)) = queue.pop_first() {
        out.push(v);
        alive[v] = false;
        bfs.run(g, v, r, |w| del[w]);
        let gone: Vec<Vertex> = bfs.reached()[1..].iter().map(|&(w, _)| w).filter(|&w| alive[w]).collect();
        for &w in &gone {
            alive[w] = false;
            queue.remove(&(deg[w], w));
        }
        for &w in &gone {
            bfs.run(g, w, r, |x| del[x]);
            for &(x, _) in &bfs.reached()[1..] {
                if alive[x] {
                    queue.remove(&(deg[x], x));
                    deg[x] -= 1;
                    queue.insert((deg[x], x));
                }
            }
        }
    }
    out.sort_unstable();
    out
}

pub const DEFAULT_LD_DELETIONS: usize = 20;

/// For `k = 0..=K` delete the `k` highest-degree vertices and take a greedy
/// independent set of the `r`-th power; return the best by score, preferring
/// smaller `k`.
pub fn uqw_ld(g: &Graph, a: &[Vertex], r: usize, max_deleted: usize) -> UqwResult {
    assert!(r >= 1, "radius must be at least 1");
    let mut by_degree: Vec<Vertex> = g.vertices().collect();
    by_degree.sort_by_key(|&v| (Reverse(g.degree(v)), v));
    let mut best = None;
    for k in 0..=max_deleted.min(g.n()) {
        let s = &by_degree[..k];
        let b = greedy_power_independent_set(g, a, r, s);
        let cand = UqwResult::new(s.to_vec(), b, r);
        let key = (score_unchecked(g, &cand, ProfileDistance::InGraph), Reverse(k));
        if best.as_ref().is_none_or(|(_, bk)| key > *bk) {
            best = Some((cand, key));
        }
    }
    best.map(|(c, _)| c).expect("k = 0 is always tried")
}

/// Maximum independent set of a graph on at most 64 vertices given as
/// adjacency bitmasks. Returns the chosen vertices as a bitmask.
pub fn maximum_independent_set(adj: &[u64]) -> u64 {
    assert!(adj.len() <= 64, "bitmask solver handles at most 64 vertices");
    let all = if adj.len() == 64 { u64::MAX } else { (1u64 << adj.len()) - 1 };
    let mut best = 0u64;
    mis_branch(adj, all, 0, &mut best);
    best
}

fn mis_branch(adj: &[u64], mut cand: u64, mut chosen: u64, best: &mut u64) {
    // Vertices of degree <= 1 in the candidate set can always be taken.
    loop {
        let mut took = false;
        let mut rest = cand;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if cand & (1 << v) != 0 && (adj[v] & cand).count_ones() <= 1 {
                chosen |= 1 << v;
                cand &= !(adj[v] | (1 << v));
                took = true;
            }
        }
        if !took {
            break;
        }
    }
    if chosen.count_ones() + cand.count_ones() <= best.count_ones() {
        return;
    }
    if cand == 0 {
        *best = chosen;
        return;
    }
    let mut v = cand.trailing_zeros() as usize;
    let mut rest = cand;
    while rest != 0 {
        let u = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if (adj[u] & cand).count_ones() > (adj[v] & cand).count_ones() {
            v = u;
        }
    }
    mis_branch(adj, cand & !(adj[v] | (1 << v)), chosen | (1 << v), best);
    mis_branch(adj, cand & !(1 << v), chosen, best);
}

/// Adjacency bitmasks of `(G - S)^r[vertices]`, indexed like `vertices`.
pub fn power_bitmasks(g: &Graph, vertices: &[Vertex], r: usize, deleted: &[Vertex]) -> Vec<u64> {
    assert!(vertices.len() <= 64);
    let mut del = vec![false; g.n()];
    for &s in deleted {
        del[s] = true;
    }
    let mut index = vec![usize::MAX; g.n()];
    for (i, &v) in vertices.iter().enumerate() {
        index[v] = i;
    }
    let mut bfs = BoundedBfs::new(g.n());
    vertices
        .iter()
        .map(|&v| {
            bfs.run(g, v, r, |w| del[w]);
            bfs.reached()[1..]
                .iter()
                .filter(|&&(w, _)| index[w] != usize::MAX)
                .fold(0u64, |m, &(w, _)| m | (1 << index[w]))
        })
        .collect()
}

/// Best achievable score for every deletion-set size `0..=max_deleted`, by
/// enumerating all `S` and, per profile class of `A \ S`, a maximum
/// `r`-independent subset in `G - S`. Intended for graphs with at most
/// `limit` vertices.
pub fn exhaustive_best_scores(
    g: &Graph,
    a: &[Vertex],
    r: usize,
    max_deleted: usize,
    mode: ProfileDistance,
    limit: usize,
) -> Result<Vec<usize>> {
    if g.n() > limit || g.n() > 64 {
        return Err(Error::TooLarge { n: g.n(), limit: limit.min(64) });
    }
    let mut best = vec![0; max_deleted + 1];
    for (s, slot) in best.iter_mut().enumerate() {
        for del in subsets(g.n(), s) {
            let probe = UqwResult::new(del.clone(), Vec::new(), r);
            let rest: Vec<Vertex> = a.iter().copied().filter(|v| !del.contains(v)).collect();
            let with_b = UqwResult { independent: rest.clone(), ..probe };
            let profiles = distance_profiles(g, &with_b, mode);
            let mut classes: HashMap<&Vec<Option<u32>>, Vec<Vertex>> = HashMap::new();
            for (p, &v) in profiles.iter().zip(&rest) {
                classes.entry(p).or_default().push(v);
            }
            for class in classes.values() {
                let size = maximum_independent_set(&power_bitmasks(g, class, r, &del)).count_ones() as usize;
                *slot = (*slot).max(size);
            }
        }
    }
    Ok(best)
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}
