//! Small deterministic graph families used by tests, examples and the
//! bundled corpus tooling.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
}

pub fn cycle(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// `K_{1,leaves}` with the center at id 0.
pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i)))
}

/// Two adjacent centers 0 and 1; center 0 gets `left` leaves, center 1
/// gets `right` leaves.
pub fn double_star(left: usize, right: usize) -> Graph {
    let mut edges = vec![(0, 1)];
    edges.extend((0..left).map(|i| (0, 2 + i)));
    edges.extend((0..right).map(|i| (1, 2 + left + i)));
    Graph::from_edges(2 + left + right, edges)
}

pub fn grid(rows: usize, cols: usize) -> Graph {
    let id = |i: usize, j: usize| i * cols + j;
    let mut edges = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            if i + 1 < rows {
                edges.push((id(i, j), id(i + 1, j)));
            }
            if j + 1 < cols {
                edges.push((id(i, j), id(i, j + 1)));
            }
        }
    }
    Graph::from_edges(rows * cols, edges)
}

/// Erdős–Rényi `G(n, p)`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// Connected random graph: a uniformly random labelled tree (random
/// attachment over a shuffled vertex order) plus `G(n, p)` edges.
pub fn random_connected(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let mut edges = Vec::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        edges.push((perm[i], perm[j]));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

pub fn random_tree(n: usize, seed: u64) -> Graph {
    random_connected(n, 0.0, seed)
}
