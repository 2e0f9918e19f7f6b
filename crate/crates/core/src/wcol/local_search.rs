//! Swap-based local search on orders.
//!
//! For every vertex `y` we keep `R(y)`, the vertices reached by a depth-`r`
//! BFS from `y` inside the vertices at positions `>= pos(y)`. Then
//! `y ∈ WReach_r[x]` iff `x ∈ R(y)`, so `|WReach_r[x]|` is a counter. Swapping
//! positions `i < j` only changes `R(y)` for the vertices at positions
//! `i..=j`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::deadline::Deadline;
use crate::graph::{BoundedBfs, Graph, Vertex};
use crate::order::Order;

#[derive(Clone, Debug)]
pub struct LsBudget {
    pub max_iterations: usize,
    /// Consecutive failed swaps that end a phase.
    pub max_no_improve: usize,
    pub seed: u64,
    pub deadline: Deadline,
}

impl LsBudget {
    /// `50·n` failures per phase and at most `1000·n` swaps overall.
    pub fn for_graph(g: &Graph, seed: u64) -> Self {
        let n = g.n().max(1);
        LsBudget { max_iterations: 1000 * n, max_no_improve: 50 * n, seed, deadline: Deadline::never() }
    }
}

/// Lexicographic objective: largest set, number of vertices attaining it,
/// total size. Smaller is better.
pub type Objective = (usize, usize, usize);

struct State<'a> {
    g: &'a Graph,
    r: usize,
    order: Order,
    reach: Vec<Vec<Vertex>>,
    size: Vec<usize>,
    bucket: Vec<Vec<Vertex>>,
    slot: Vec<usize>,
    max: usize,
    sum: usize,
    bfs: BoundedBfs,
}

impl<'a> State<'a> {
    fn new(g: &'a Graph, order: Order, r: usize) -> Self {
        let n = g.n();
        let mut st = State {
            g,
            r,
            order,
            reach: vec![Vec::new(); n],
            size: vec![0; n],
            bucket: vec![Vec::new(); n + 2],
            slot: vec![0; n],
            max: 0,
            sum: 0,
            bfs: BoundedBfs::new(n),
        };
        for y in g.vertices() {
            st.reach[y] = st.compute_reach(y);
            for &x in &st.reach[y] {
                st.size[x] += 1;
            }
        }
        for x in g.vertices() {
            st.slot[x] = st.bucket[st.size[x]].len();
            st.bucket[st.size[x]].push(x);
            st.sum += st.size[x];
            st.max = st.max.max(st.size[x]);
        }
        st
    }

    fn compute_reach(&mut self, y: Vertex) -> Vec<Vertex> {
        let order = &self.order;
        let p = order.position(y);
        self.bfs.run(self.g, y, self.r, |w| order.position(w) < p);
        self.bfs.reached().iter().map(|&(w, _)| w).collect()
    }

    fn objective(&self) -> Objective {
        (self.max, self.bucket[self.max].len(), self.sum)
    }

    fn bump(&mut self, x: Vertex, up: bool) {
        let s = self.size[x];
        let b = &mut self.bucket[s];
        let k = self.slot[x];
        b.swap_remove(k);
        if k < b.len() {
            self.slot[b[k]] = k;
        }
        let t = if up { s + 1 } else { s - 1 };
        self.size[x] = t;
        self.slot[x] = self.bucket[t].len();
        self.bucket[t].push(x);
        if up {
            self.sum += 1;
            self.max = self.max.max(t);
        } else {
            self.sum -= 1;
            while self.max > 0 && self.bucket[self.max].is_empty() {
                self.max -= 1;
            }
        }
    }

    fn install(&mut self, y: Vertex, set: Vec<Vertex>) {
        let old = std::mem::replace(&mut self.reach[y], set);
        for x in old {
            self.bump(x, false);
        }
        for i in 0..self.reach[y].len() {
            let x = self.reach[y][i];
            self.bump(x, true);
        }
    }

    /// Swaps positions `i < j`; returns the replaced sets for [`undo`].
    fn swap(&mut self, i: usize, j: usize) -> Vec<(Vertex, Vec<Vertex>)> {
        self.order.swap_positions(i, j);
        let mut saved = Vec::with_capacity(j - i + 1);
        for p in i..=j {
            let y = self.order.vertex_at(p);
            let set = self.compute_reach(y);
            saved.push((y, self.reach[y].clone()));
            self.install(y, set);
        }
        saved
    }

    fn undo(&mut self, i: usize, j: usize, saved: Vec<(Vertex, Vec<Vertex>)>) {
        self.order.swap_positions(i, j);
        for (y, set) in saved {
            self.install(y, set);
        }
    }

    fn random_max_vertex(&self, rng: &mut ChaCha8Rng) -> Vertex {
        let b = &self.bucket[self.max];
        b[rng.gen_range(0..b.len())]
    }
}

/// Improves `order` by swaps, accepting a swap only if it strictly improves
/// the [`Objective`]. The result is never worse than the input.
pub fn local_search(g: &Graph, order: &Order, r: usize, budget: &LsBudget) -> Order {
    assert!(r >= 1, "radius must be at least 1");
    if g.n() < 2 {
        return order.clone();
    }
    let mut st = State::new(g, order.clone(), r);
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let mut iterations = 0;
    let out_of_budget = |it: usize| it >= budget.max_iterations || budget.deadline.expired();

    'rounds: loop {
        let mut improved_round = false;
        for rule in [1, 2] {
            let mut failures = 0;
            while failures < budget.max_no_improve.max(1) {
                if out_of_budget(iterations) {
                    break 'rounds;
                }
                iterations += 1;
                let v = st.random_max_vertex(&mut rng);
                let j = st.order.position(v);
                if j == 0 {
                    failures += 1;
                    continue;
                }
                let i = if rule == 1 { rng.gen_range(0..j) } else { j - 1 };
                let before = st.objective();
                let saved = st.swap(i, j);
                if st.objective() < before {
                    failures = 0;
                    improved_round = true;
                } else {
                    st.undo(i, j, saved);
                    failures += 1;
                }
            }
        }
        if !improved_round {
            break;
        }
    }
    st.order
}

/// Objective of an order evaluated from scratch.
pub fn objective_of_order(g: &Graph, order: &Order, r: usize) -> Objective {
    let sizes = crate::reach::wreach_sizes(g, order, r);
    let max = sizes.iter().copied().max().unwrap_or(0);
    (max, sizes.iter().filter(|&&s| s == max).count(), sizes.iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, path, random_connected, star};
    use crate::reach::{exact_wcol, wcol_of_order};

    fn budget(g: &Graph, seed: u64) -> LsBudget {
        LsBudget::for_graph(g, seed)
    }

    #[test]
    fn star_from_worst_order() {
        let g = star(5);
        let worst = Order::from_sequence(vec![1, 2, 3, 4, 5, 0]).unwrap();
        assert_eq!(wcol_of_order(&g, &worst, 2), 6);
        let o = local_search(&g, &worst, 2, &budget(&g, 1));
        assert_eq!(wcol_of_order(&g, &o, 2), 2);
    }

    #[test]
    fn optimal_clique_order_is_kept() {
        let g = complete(4);
        let o = local_search(&g, &Order::identity(4), 2, &budget(&g, 0));
        assert_eq!(wcol_of_order(&g, &o, 2), 4);
    }

    #[test]
    fn path_of_three() {
        let g = path(3);
        assert_eq!(exact_wcol(&g, 2).unwrap().0, 2);
        // From the end-first order the center is swapped to the front.
        let o = local_search(&g, &Order::from_sequence(vec![2, 0, 1]).unwrap(), 2, &budget(&g, 0));
        assert_eq!(wcol_of_order(&g, &o, 2), 2);
        // The identity order is a strict local optimum: every swap of the
        // unique maximum keeps the objective at (3, 1, 6).
        let o = local_search(&g, &Order::identity(3), 2, &budget(&g, 0));
        assert_eq!(objective_of_order(&g, &o, 2), (3, 1, 6));
    }

    #[test]
    fn incremental_state_matches_recomputation() {
        for seed in 0..5 {
            let g = random_connected(25, 0.12, seed);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for r in 1..4 {
                let mut st = State::new(&g, Order::identity(g.n()), r);
                for _ in 0..60 {
                    let j = rng.gen_range(1..g.n());
                    let i = rng.gen_range(0..j);
                    let saved = st.swap(i, j);
                    assert_eq!(st.objective(), objective_of_order(&g, &st.order, r));
                    if rng.gen_bool(0.5) {
                        st.undo(i, j, saved);
                        assert_eq!(st.objective(), objective_of_order(&g, &st.order, r));
                    }
                }
            }
        }
    }

    #[test]
    fn never_worse_and_deterministic() {
        for seed in 0..20 {
            let g = random_connected(30, 0.1, seed);
            let start = Order::identity(g.n());
            for r in 1..4 {
                let a = local_search(&g, &start, r, &budget(&g, seed));
                let b = local_search(&g, &start, r, &budget(&g, seed));
                assert_eq!(a, b);
                assert!(objective_of_order(&g, &a, r) <= objective_of_order(&g, &start, r));
            }
        }
    }
}
