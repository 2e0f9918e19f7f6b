use std::collections::{BTreeSet, HashSet};

use crate::graph::{Graph, Vertex};
use crate::order::Order;

/// Result of the minimum-degree elimination heuristic.
#[derive(Clone, Debug)]
pub struct Elimination {
    pub order: Order,
    /// Degree of each vertex in the elimination graph at the moment it was
    /// eliminated, i.e. `|SReach_inf[v]| - 1`.
    pub back_degree: Vec<usize>,
}

impl Elimination {
    pub fn max_back_degree(&self) -> usize {
        self.back_degree.iter().copied().max().unwrap_or(0)
    }
}

/// Minimum-degree heuristic for treewidth, filling the order from the last
/// position to the first. The eliminated vertex's remaining neighbors are
/// turned into a clique.
pub fn min_degree_elimination(g: &Graph) -> Elimination {
    let n = g.n();
    let mut adj: Vec<HashSet<Vertex>> = g.vertices().map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut queue: BTreeSet<(usize, Vertex)> = g.vertices().map(|v| (adj[v].len(), v)).collect();
    let mut at = vec![0; n];
    let mut back_degree = vec![0; n];
    for slot in (0..n).rev() {
        let (d, v) = queue.pop_first().expect("queue holds every uneliminated vertex");
        at[slot] = v;
        back_degree[v] = d;
        let mut nbrs: Vec<Vertex> = adj[v].drain().collect();
        nbrs.sort_unstable();
        for &u in &nbrs {
            queue.remove(&(adj[u].len(), u));
            adj[u].remove(&v);
        }
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                if adj[a].insert(b) {
                    adj[b].insert(a);
                }
            }
        }
        for &u in &nbrs {
            queue.insert((adj[u].len(), u));
        }
    }
    Elimination { order: Order::from_sequence(at).expect("every vertex eliminated once"), back_degree }
}

pub fn order_min_degree_elimination(g: &Graph) -> Order {
    min_degree_elimination(g).order
}
