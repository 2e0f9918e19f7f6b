//! Baseline orderings: degree sort, degeneracy, random, and the same
//! heuristics applied to the `r`-th power graph.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::degeneracy::degeneracy_order;
use crate::graph::Graph;
use crate::order::Order;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimpleVariant {
    DegreeDesc,
    Degeneracy,
    Random { seed: u64 },
    PowerDegreeDesc { radius: usize },
    PowerDegeneracy { radius: usize },
}

pub fn order_simple(g: &Graph, variant: SimpleVariant) -> Order {
    match variant {
        SimpleVariant::DegreeDesc => degree_desc(g),
        SimpleVariant::Degeneracy => degeneracy_order(g).0,
        SimpleVariant::Random { seed } => {
            let mut at: Vec<usize> = g.vertices().collect();
            at.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            Order::from_sequence(at).expect("shuffled permutation")
        }
        SimpleVariant::PowerDegreeDesc { radius } => degree_desc(&g.power(radius.max(1))),
        SimpleVariant::PowerDegeneracy { radius } => degeneracy_order(&g.power(radius.max(1))).0,
    }
}

/// Vertices by degree, largest first, ties by id.
pub fn degree_desc(g: &Graph) -> Order {
    let mut at: Vec<usize> = g.vertices().collect();
    at.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    Order::from_sequence(at).expect("sorted permutation")
}
