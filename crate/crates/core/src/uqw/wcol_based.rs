//! Scattered sets from an order with small weakly reachable sets.
//!
//! Both algorithms rely on one fact: if `dist_{G-S}(u, v) <= r`, the
//! `L`-minimum `m` of a shortest connecting path lies in
//! `WReach_r[u] ∩ WReach_r[v]` and not in `S`.

use super::{greedy_independent_set, greedy_power_independent_set, keep_best, UqwResult};
use crate::graph::{BoundedBfs, Graph, Vertex};
use crate::order::Order;
use crate::reach::wreach_sets;

/// `W[v] = WReach_r[v]` and `R[z] = {v : z ∈ W[v]}`.
fn reach_tables(g: &Graph, order: &Order, r: usize) -> (Vec<Vec<Vertex>>, Vec<Vec<Vertex>>) {
    let w = wreach_sets(g, order, r).into_sets();
    let mut rev = vec![Vec::new(); g.n()];
    for (v, set) in w.iter().enumerate() {
        for &z in set {
            rev[z].push(v);
        }
    }
    (w, rev)
}

/// Independent set of the conflict graph (`u ~ v` iff one weakly reaches
/// the other) on `A`, processed from the `L`-largest vertex down; when a
/// vertex is close to more than half of the remaining ones, its weakly
/// reachable set (minus itself) is deleted.
pub fn uqw_mfcs(g: &Graph, a: &[Vertex], r: usize, order: &Order) -> UqwResult {
    assert!(r >= 1, "radius must be at least 1");
    let (w, _) = reach_tables(g, order, r);
    let conflict = Graph::from_edges(
        g.n(),
        w.iter().enumerate().flat_map(|(v, set)| set.iter().filter(move |&&z| z != v).map(move |&z| (v, z))),
    );
    let mut cur = greedy_independent_set(&conflict, a);
    cur.sort_by_key(|&v| std::cmp::Reverse(order.position(v)));

    let mut deleted = vec![false; g.n()];
    let mut s = Vec::new();
    let mut b = Vec::new();
    let mut bfs = BoundedBfs::new(g.n());
    let mut near = vec![false; g.n()];
    while let Some((&v, rest)) = cur.split_first() {
        bfs.run(g, v, r, |x| deleted[x]);
        for &(x, _) in bfs.reached() {
            near[x] = true;
        }
        let (reached, far): (Vec<Vertex>, Vec<Vertex>) = rest.iter().partition(|&&x| near[x]);
        for &(x, _) in bfs.reached() {
            near[x] = false;
        }
        b.push(v);
        if 2 * reached.len() > rest.len() {
            for &z in &w[v] {
                if z != v && !deleted[z] {
                    deleted[z] = true;
                    s.push(z);
                }
            }
            cur = reached;
        } else {
            cur = far;
        }
    }
    UqwResult::new(s, b, r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TgvVariant {
    /// Conflicts are vertices whose weakly reachable sets meet outside `S`.
    New1,
    /// Conflicts are vertices within distance `r` in `G - S`.
    New2,
    /// Like `New2`, and after every step the partial solution is completed
    /// greedily into a candidate.
    NewLd,
}

impl TgvVariant {
    pub fn name(self) -> &'static str {
        match self {
            TgvVariant::New1 => "new1",
            TgvVariant::New2 => "new2",
            TgvVariant::NewLd => "new_ld",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TgvStep {
    /// `vertex` joined `B`; `removed` left the active set with it.
    Growth { vertex: Vertex, removed: Vec<Vertex> },
    /// `vertex` joined `S`; the active set had `before` vertices and kept
    /// `after`.
    Deletion { vertex: Vertex, before: usize, after: usize },
}

/// Step-wise state of the threshold algorithm for one threshold `t`.
pub struct TgvMachine<'a> {
    g: &'a Graph,
    r: usize,
    order: &'a Order,
    variant: TgvVariant,
    threshold: f64,
    w: std::rc::Rc<Vec<Vec<Vertex>>>,
    rev: std::rc::Rc<Vec<Vec<Vertex>>>,
    active: Vec<bool>,
    active_count: usize,
    in_s: Vec<bool>,
    in_b: Vec<bool>,
    s: Vec<Vertex>,
    b: Vec<Vertex>,
    log: Vec<TgvStep>,
    bfs: BoundedBfs,
    mark: Vec<bool>,
}

impl<'a> TgvMachine<'a> {
    pub fn new(g: &'a Graph, a: &[Vertex], r: usize, order: &'a Order, variant: TgvVariant, threshold: f64) -> Self {
        let (w, rev) = reach_tables(g, order, r);
        Self::with_tables(g, a, r, order, variant, threshold, std::rc::Rc::new(w), std::rc::Rc::new(rev))
    }

    #[allow(clippy::too_many_arguments)]
    fn with_tables(
        g: &'a Graph,
        a: &[Vertex],
        r: usize,
        order: &'a Order,
        variant: TgvVariant,
        threshold: f64,
        w: std::rc::Rc<Vec<Vec<Vertex>>>,
        rev: std::rc::Rc<Vec<Vec<Vertex>>>,
    ) -> Self {
        assert!(r >= 1, "radius must be at least 1");
        let n = g.n();
        let mut active = vec![false; n];
        for &v in a {
            active[v] = true;
        }
        let active_count = active.iter().filter(|&&x| x).count();
        TgvMachine {
            g,
            r,
            order,
            variant,
            threshold,
            w,
            rev,
            active,
            active_count,
            in_s: vec![false; n],
            in_b: vec![false; n],
            s: Vec::new(),
            b: Vec::new(),
            log: Vec::new(),
            bfs: BoundedBfs::new(n),
            mark: vec![false; n],
        }
    }

    pub fn active(&self) -> Vec<Vertex> {
        self.g.vertices().filter(|&v| self.active[v]).collect()
    }

    pub fn deleted(&self) -> &[Vertex] {
        &self.s
    }

    pub fn independent(&self) -> &[Vertex] {
        &self.b
    }

    pub fn log(&self) -> &[TgvStep] {
        &self.log
    }

    pub fn weak_reach(&self, v: Vertex) -> &[Vertex] {
        &self.w[v]
    }

    /// Active vertices other than `v` in conflict with `v`.
    fn conflicts(&mut self, v: Vertex) -> Vec<Vertex> {
        let mut out = Vec::new();
        match self.variant {
            TgvVariant::New1 => {
                for &m in &self.w[v] {
                    if self.in_s[m] || self.in_b[m] {
                        continue;
                    }
                    for &x in &self.rev[m] {
                        if x != v && self.active[x] && !self.mark[x] {
                            self.mark[x] = true;
                            out.push(x);
                        }
                    }
                }
                for &x in &out {
                    self.mark[x] = false;
                }
            }
            TgvVariant::New2 | TgvVariant::NewLd => {
                let in_s = &self.in_s;
                self.bfs.run(self.g, v, self.r, |x| in_s[x]);
                out.extend(self.bfs.reached()[1..].iter().map(|&(x, _)| x).filter(|&x| self.active[x]));
            }
        }
        out
    }

    /// Performs one step; `None` once the active set is empty.
    pub fn step(&mut self) -> Option<&TgvStep> {
        let v = self.g.vertices().filter(|&x| self.active[x]).min_by_key(|&x| self.order.position(x))?;
        let conflicts = self.conflicts(v);
        let step = if (conflicts.len() as f64) <= self.threshold * self.active_count as f64 {
            self.active[v] = false;
            for &x in &conflicts {
                self.active[x] = false;
            }
            self.active_count -= 1 + conflicts.len();
            self.in_b[v] = true;
            self.b.push(v);
            TgvStep::Growth { vertex: v, removed: conflicts }
        } else {
            let z = self
                .g
                .vertices()
                .filter(|&z| !self.in_s[z] && !self.in_b[z])
                .max_by_key(|&z| (self.rev[z].iter().filter(|&&x| self.active[x]).count(), std::cmp::Reverse(z)))
                .expect("a conflict implies an undeleted common weak reach vertex");
            for &x in &self.rev[z] {
                if self.active[x] {
                    self.mark[x] = true;
                }
            }
            let before = self.active_count;
            self.active_count = 0;
            for x in self.g.vertices() {
                self.active[x] = self.mark[x] && x != z;
                self.mark[x] = false;
                self.active_count += usize::from(self.active[x]);
            }
            self.in_s[z] = true;
            self.s.push(z);
            TgvStep::Deletion { vertex: z, before, after: self.active_count }
        };
        self.log.push(step);
        self.log.last()
    }

    /// Current partial solution completed by a greedy independent set of
    /// `(G - S)^r` on the active vertices.
    pub fn completed(&self) -> UqwResult {
        let mut b = self.b.clone();
        b.extend(greedy_power_independent_set(self.g, &self.active(), self.r, &self.s));
        UqwResult::new(self.s.clone(), b, self.r)
    }

    /// Runs to exhaustion and drops the trailing deletions that no growth
    /// step followed. Returns the result and `|S|` before the rollback.
    pub fn finish(mut self) -> (UqwResult, usize) {
        while self.step().is_some() {}
        let pre = self.s.len();
        let trailing = self.log.iter().rev().take_while(|st| matches!(st, TgvStep::Deletion { .. })).count();
        self.s.truncate(self.s.len() - trailing);
        (UqwResult::new(self.s, self.b, self.r), pre)
    }
}

pub const DEFAULT_THRESHOLDS: usize = 9;

/// Sweeps the thresholds `j/(k+1)`, `j = 1..=k`, and returns the best result
/// by score (then fewer deletions, then larger `B`).
pub fn uqw_tgv(g: &Graph, a: &[Vertex], r: usize, order: &Order, variant: TgvVariant, k: usize) -> UqwResult {
    let (w, rev) = reach_tables(g, order, r);
    let (w, rev) = (std::rc::Rc::new(w), std::rc::Rc::new(rev));
    let mut best = None;
    for j in 1..=k.max(1) {
        let t = j as f64 / (k.max(1) + 1) as f64;
        let mut m = TgvMachine::with_tables(g, a, r, order, variant, t, w.clone(), rev.clone());
        if variant == TgvVariant::NewLd {
            keep_best(g, &mut best, m.completed());
            while m.step().is_some() {
                keep_best(g, &mut best, m.completed());
            }
        }
        keep_best(g, &mut best, m.finish().0);
    }
    best.map(|(res, _)| res).unwrap_or_else(|| UqwResult::new(Vec::new(), Vec::new(), r))
}
