use std::cmp::Reverse;
use std::collections::BTreeSet;

use crate::graph::{Graph, Vertex};
use crate::order::Order;

/// Degeneracy order and the degeneracy `d`.
///
/// Repeatedly removes a vertex of minimum residual degree and places it at
/// the last free position, so that every vertex has at most `d` neighbors
/// earlier in the order. Among tied vertices the largest id is removed, so
/// that tied vertices appear in the order by ascending id.
pub fn degeneracy_order(g: &Graph) -> (Order, usize) {
    let n = g.n();
    let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut queue: BTreeSet<(usize, Reverse<Vertex>)> = g.vertices().map(|v| (deg[v], Reverse(v))).collect();
    let mut removed = vec![false; n];
    let mut at = vec![0; n];
    let mut d = 0;
    for slot in (0..n).rev() {
        let (k, Reverse(v)) = queue.pop_first().expect("queue holds every unremoved vertex");
        d = d.max(k);
        removed[v] = true;
        at[slot] = v;
        for &w in g.neighbors(v) {
            if !removed[w] {
                queue.remove(&(deg[w], Reverse(w)));
                deg[w] -= 1;
                queue.insert((deg[w], Reverse(w)));
            }
        }
    }
    (Order::from_sequence(at).expect("every vertex placed once"), d)
}

/// Largest number of neighbors placed before a vertex.
pub fn max_back_degree(g: &Graph, order: &Order) -> usize {
    g.vertices().map(|v| g.neighbors(v).iter().filter(|&&u| order.less(u, v)).count()).max().unwrap_or(0)
}
