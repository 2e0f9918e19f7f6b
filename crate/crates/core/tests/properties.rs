use gcol_core::degeneracy::degeneracy_order;
use gcol_core::graph::parse_edge_list_str;
use gcol_core::reach::{col_of_order, sreach_sets, wcol_of_order, wreach_sets};
use gcol_core::wcol::{local_search, objective_of_order, Algorithm, LsBudget};
use gcol_core::{Graph, Order, Vertex};
use proptest::prelude::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..=n * 2)
            .prop_map(move |edges| Graph::from_edges(n, edges.into_iter().filter(|(u, v)| u != v)))
    })
}

fn arb_graph_and_order(max_n: usize) -> impl Strategy<Value = (Graph, Order)> {
    arb_graph(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
            .prop_map(|(g, at)| (g, Order::from_sequence(at).unwrap()))
    })
}

/// WReach by enumerating all simple paths of length at most `r` from `v`.
fn naive_wreach(g: &Graph, o: &Order, v: Vertex, r: usize) -> Vec<Vertex> {
    fn walk(g: &Graph, o: &Order, path: &mut Vec<Vertex>, r: usize, out: &mut Vec<Vertex>) {
        let last = *path.last().unwrap();
        let min = *path.iter().min_by_key(|&&x| o.position(x)).unwrap();
        if min == last && !out.contains(&last) {
            out.push(last);
        }
        if path.len() > r {
            return;
        }
        for &w in g.neighbors(last) {
            if !path.contains(&w) {
                path.push(w);
                walk(g, o, path, r, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    walk(g, o, &mut vec![v], r, &mut out);
    out.sort_unstable();
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn wreach_matches_path_enumeration((g, o) in arb_graph_and_order(8), r in 1usize..5) {
        let w = wreach_sets(&g, &o, r);
        for v in g.vertices() {
            let mut got = w.set(v).to_vec();
            got.sort_unstable();
            prop_assert_eq!(got, naive_wreach(&g, &o, v, r));
        }
    }

    #[test]
    fn reach_sizes_are_monotone((g, o) in arb_graph_and_order(25)) {
        let mut prev = 0;
        for r in 1..=5 {
            let wcol = wcol_of_order(&g, &o, r);
            let col = col_of_order(&g, &o, r);
            prop_assert!(wcol >= prev);
            prop_assert!(col <= wcol);
            let s = sreach_sets(&g, &o, r);
            let w = wreach_sets(&g, &o, r);
            for v in g.vertices() {
                prop_assert!(s.set(v).iter().all(|u| w.set(v).contains(u)));
            }
            prev = wcol;
        }
    }

    #[test]
    fn degeneracy_identity(g in arb_graph(40)) {
        let (o, d) = degeneracy_order(&g);
        prop_assert_eq!(wcol_of_order(&g, &o, 1), d + 1);
    }

    #[test]
    fn ball_matches_full_bfs(g in arb_graph(30), r in 0usize..5) {
        for v in g.vertices() {
            let full = g.distances_within(v, g.n(), |_| false);
            let mut expected: Vec<Vertex> =
                g.vertices().filter(|&w| full[w].is_some_and(|d| d as usize <= r)).collect();
            let mut got = g.ball(v, r);
            expected.sort_unstable();
            got.sort_unstable();
            prop_assert_eq!(got, expected);
        }
    }

    #[test]
    fn edge_list_round_trip(g in arb_graph(30)) {
        let text = g.to_edge_list();
        let h = parse_edge_list_str(&text).unwrap();
        prop_assert_eq!(h.to_edge_list(), text);
        prop_assert_eq!(h.m(), g.m());
    }

    #[test]
    fn powers_are_nested(g in arb_graph(25)) {
        prop_assert_eq!(g.power(1).edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
        for r in 1..4 {
            let small = g.power(r);
            let big = g.power(r + 1);
            prop_assert!(small.edges().all(|(u, v)| big.has_edge(u, v)));
        }
    }

    #[test]
    fn local_search_never_worsens((g, o) in arb_graph_and_order(20), r in 1usize..4, seed in 0u64..1000) {
        let out = local_search(&g, &o, r, &LsBudget::for_graph(&g, seed));
        prop_assert!(objective_of_order(&g, &out, r) <= objective_of_order(&g, &o, r));
    }

    #[test]
    fn algorithms_produce_permutations(g in arb_graph(30), r in 1usize..4) {
        for a in Algorithm::all() {
            let o = a.order(&g, r, 3);
            let mut seen: Vec<Vertex> = o.iter().collect();
            seen.sort_unstable();
            prop_assert_eq!(seen, g.vertices().collect::<Vec<_>>());
        }
    }
}
