//! Flat decompositions: an ordered partition of the vertex set into
//! connected pieces, each one a minimal subtree of a BFS tree that touches
//! every previously built piece adjacent to the current component.

use std::cmp::Reverse;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::graph::{Graph, Vertex};
use crate::order::Order;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootChoice {
    /// Most neighbors in already processed pieces.
    MaxNeighborsInProcessed,
    /// Maximum degree inside the component.
    MaxDegreeInComponent,
    /// Maximum degree inside the component among vertices adjacent to a
    /// processed piece.
    MaxDegreeAdjacentToProcessed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InnerOrder {
    Bfs,
    Dfs,
    SortByDegreeDesc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FlatConfig {
    pub root: RootChoice,
    pub inner: InnerOrder,
    pub reversed: bool,
}

impl FlatConfig {
    pub const BEST: FlatConfig =
        FlatConfig { root: RootChoice::MaxDegreeInComponent, inner: InnerOrder::SortByDegreeDesc, reversed: false };

    /// All 18 combinations, unreversed ones first.
    pub fn all() -> Vec<FlatConfig> {
        let mut out = Vec::with_capacity(18);
        for reversed in [false, true] {
            for inner in [InnerOrder::Bfs, InnerOrder::Dfs, InnerOrder::SortByDegreeDesc] {
                for root in [
                    RootChoice::MaxNeighborsInProcessed,
                    RootChoice::MaxDegreeInComponent,
                    RootChoice::MaxDegreeAdjacentToProcessed,
                ] {
                    out.push(FlatConfig { root, inner, reversed });
                }
            }
        }
        out
    }
}

impl fmt::Display for FlatConfig {
    /// `flat:<root>:<inner>:<rev>`, e.g. `flat:2:sort:0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let root = match self.root {
            RootChoice::MaxNeighborsInProcessed => 1,
            RootChoice::MaxDegreeInComponent => 2,
            RootChoice::MaxDegreeAdjacentToProcessed => 3,
        };
        let inner = match self.inner {
            InnerOrder::Bfs => "bfs",
            InnerOrder::Dfs => "dfs",
            InnerOrder::SortByDegreeDesc => "sort",
        };
        write!(f, "flat:{root}:{inner}:{}", u8::from(self.reversed))
    }
}

impl FromStr for FlatConfig {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || {
            Error::InvalidParameter(format!("bad flat configuration {s:?}, expected flat:<1|2|3>:<bfs|dfs|sort>:<0|1>"))
        };
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 4 || parts[0] != "flat" {
            return Err(bad());
        }
        let root = match parts[1] {
            "1" => RootChoice::MaxNeighborsInProcessed,
            "2" => RootChoice::MaxDegreeInComponent,
            "3" => RootChoice::MaxDegreeAdjacentToProcessed,
            _ => return Err(bad()),
        };
        let inner = match parts[2] {
            "bfs" => InnerOrder::Bfs,
            "dfs" => InnerOrder::Dfs,
            "sort" => InnerOrder::SortByDegreeDesc,
            _ => return Err(bad()),
        };
        let reversed = match parts[3] {
            "0" => false,
            "1" => true,
            _ => return Err(bad()),
        };
        Ok(FlatConfig { root, inner, reversed })
    }
}

/// One piece `H_i` of a flat decomposition.
#[derive(Clone, Debug)]
pub struct FlatPiece {
    pub root: Vertex,
    /// Vertices of the piece, root first.
    pub vertices: Vec<Vertex>,
    /// For each entry of `vertices`, its parent in the BFS tree (`None` for
    /// the root).
    pub tree_parent: Vec<Option<Vertex>>,
    /// One contact vertex per adjacent processed piece.
    pub contacts: Vec<Vertex>,
}

#[derive(Clone, Debug)]
pub struct FlatDecomposition {
    pub pieces: Vec<FlatPiece>,
}

pub fn flat_decompose(g: &Graph, cfg: FlatConfig) -> FlatDecomposition {
    let n = g.n();
    let mut piece_of: Vec<Option<usize>> = vec![None; n];
    let mut pieces: Vec<FlatPiece> = Vec::new();
    let mut roots = g.components(|_| false);
    roots.sort_by_key(|c| (Reverse(c.len()), c[0]));

    let mut in_comp = vec![usize::MAX; n];
    let mut depth = vec![u32::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut comp_id = 0usize;

    for component in roots {
        let start = *component.iter().max_by_key(|&&v| (g.degree(v), Reverse(v))).expect("components are non-empty");
        piece_of[start] = Some(pieces.len());
        pieces.push(FlatPiece { root: start, vertices: vec![start], tree_parent: vec![None], contacts: Vec::new() });

        let mut pending: Vec<Vec<Vertex>> = g.components(|v| piece_of[v].is_some() || !component.contains(&v));
        while let Some(idx) = pending.iter().enumerate().max_by_key(|(_, c)| (c.len(), Reverse(c[0]))).map(|(i, _)| i) {
            let comp = pending.swap_remove(idx);
            comp_id += 1;
            for &v in &comp {
                in_comp[v] = comp_id;
            }
            let inside = |v: Vertex| in_comp[v] == comp_id && piece_of[v].is_none();
            let deg_in = |v: Vertex| g.neighbors(v).iter().filter(|&&w| inside(w)).count();
            let processed_nbrs = |v: Vertex| g.neighbors(v).iter().filter(|&&w| piece_of[w].is_some()).count();

            let root = match cfg.root {
                RootChoice::MaxNeighborsInProcessed => {
                    *comp.iter().max_by_key(|&&v| (processed_nbrs(v), Reverse(v))).unwrap()
                }
                RootChoice::MaxDegreeInComponent => *comp.iter().max_by_key(|&&v| (deg_in(v), Reverse(v))).unwrap(),
                RootChoice::MaxDegreeAdjacentToProcessed => comp
                    .iter()
                    .copied()
                    .filter(|&v| processed_nbrs(v) > 0)
                    .max_by_key(|&v| (deg_in(v), Reverse(v)))
                    .unwrap_or_else(|| *comp.iter().max_by_key(|&&v| (deg_in(v), Reverse(v))).unwrap()),
            };

            // BFS tree of G[C] rooted at `root`.
            let mut bfs_order = vec![root];
            depth[root] = 0;
            parent[root] = usize::MAX;
            let mut head = 0;
            while head < bfs_order.len() {
                let u = bfs_order[head];
                head += 1;
                for &w in g.neighbors(u) {
                    if inside(w) && depth[w] == u32::MAX {
                        depth[w] = depth[u] + 1;
                        parent[w] = u;
                        bfs_order.push(w);
                    }
                }
            }

            // Contact per adjacent piece: shallowest adjacent vertex, ties by id.
            let mut contact_of: Vec<(usize, Vertex)> = Vec::new();
            for &v in &comp {
                for &w in g.neighbors(v) {
                    if let Some(p) = piece_of[w] {
                        contact_of.push((p, v));
                    }
                }
            }
            contact_of.sort_by_key(|&(p, v)| (p, depth[v], v));
            contact_of.dedup_by_key(|&mut (p, _)| p);
            let contacts: Vec<Vertex> = contact_of.iter().map(|&(_, v)| v).collect();

            // Union of tree paths from each contact to the root.
            let id = pieces.len();
            let mut members = vec![root];
            piece_of[root] = Some(id);
            for &c in &contacts {
                let mut v = c;
                while piece_of[v].is_none() {
                    piece_of[v] = Some(id);
                    members.push(v);
                    v = parent[v];
                }
            }
            members.sort_by_key(|&v| (depth[v], v));
            let tree_parent = members.iter().map(|&v| if v == root { None } else { Some(parent[v]) }).collect();
            for &v in &comp {
                depth[v] = u32::MAX;
            }
            pieces.push(FlatPiece { root, vertices: members, tree_parent, contacts });

            let rest: Vec<Vertex> = comp.iter().copied().filter(|&v| piece_of[v].is_none()).collect();
            if !rest.is_empty() {
                for &v in &rest {
                    in_comp[v] = usize::MAX - 1;
                }
                let mut seen = vec![];
                for &s in &rest {
                    if in_comp[s] != usize::MAX - 1 {
                        continue;
                    }
                    comp_id += 1;
                    in_comp[s] = comp_id;
                    let mut sub = vec![s];
                    let mut h = 0;
                    while h < sub.len() {
                        let u = sub[h];
                        h += 1;
                        for &w in g.neighbors(u) {
                            if in_comp[w] == usize::MAX - 1 {
                                in_comp[w] = comp_id;
                                sub.push(w);
                            }
                        }
                    }
                    sub.sort_unstable();
                    seen.push(sub);
                }
                pending.extend(seen);
            }
        }
    }
    FlatDecomposition { pieces }
}

/// Concatenates the pieces, ordering each piece internally.
pub fn order_flat(g: &Graph, cfg: FlatConfig) -> Order {
    let dec = flat_decompose(g, cfg);
    let mut at = Vec::with_capacity(g.n());
    let mut member = vec![false; g.n()];
    for piece in &dec.pieces {
        for &v in &piece.vertices {
            member[v] = true;
        }
        let mut inner = match cfg.inner {
            InnerOrder::Bfs => search_order(g, piece.root, &member, false),
            InnerOrder::Dfs => search_order(g, piece.root, &member, true),
            InnerOrder::SortByDegreeDesc => {
                let mut vs = piece.vertices.clone();
                vs.sort_by_key(|&v| (Reverse(g.degree(v)), v));
                vs
            }
        };
        if cfg.reversed {
            inner.reverse();
        }
        for &v in &piece.vertices {
            member[v] = false;
        }
        at.extend(inner);
    }
    Order::from_sequence(at).expect("pieces partition the vertex set")
}

/// BFS or DFS order of the piece marked in `member`, from `root`, visiting
/// neighbors by ascending id.
fn search_order(g: &Graph, root: Vertex, member: &[bool], depth_first: bool) -> Vec<Vertex> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    if depth_first {
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            if !seen.insert(u) {
                continue;
            }
            out.push(u);
            for &w in g.neighbors(u).iter().rev() {
                if member[w] && !seen.contains(&w) {
                    stack.push(w);
                }
            }
        }
    } else {
        seen.insert(root);
        out.push(root);
        let mut head = 0;
        while head < out.len() {
            let u = out[head];
            head += 1;
            for &w in g.neighbors(u) {
                if member[w] && seen.insert(w) {
                    out.push(w);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cycle, path, random_connected, star};
    use crate::reach::wcol_of_order;

    fn assert_partition_and_connected(g: &Graph, dec: &FlatDecomposition) {
        let mut count = vec![0; g.n()];
        for p in &dec.pieces {
            for &v in &p.vertices {
                count[v] += 1;
            }
            let (sub, _) = g.induced_subgraph(&p.vertices);
            assert_eq!(sub.components(|_| false).len(), 1, "piece not connected");
        }
        assert!(count.iter().all(|&c| c == 1), "pieces do not partition V");
    }

    #[test]
    fn star_leaves_become_singletons() {
        let g = star(5);
        let cfg =
            FlatConfig { root: RootChoice::MaxDegreeInComponent, inner: InnerOrder::SortByDegreeDesc, reversed: false };
        let dec = flat_decompose(&g, cfg);
        assert_eq!(dec.pieces[0].vertices, vec![0]);
        assert_eq!(dec.pieces.len(), 6);
        assert!(dec.pieces[1..].iter().all(|p| p.vertices.len() == 1));
        let o = order_flat(&g, cfg);
        assert_eq!(o.vertex_at(0), 0);
        assert_eq!(wcol_of_order(&g, &o, 2), 2);
        let rev = FlatConfig { reversed: true, ..cfg };
        assert_eq!(wcol_of_order(&g, &order_flat(&g, rev), 2), 2);
    }

    #[test]
    fn every_config_gives_valid_decompositions() {
        let graphs = [path(4), cycle(6), random_connected(30, 0.1, 1), random_connected(40, 0.05, 2)];
        for g in &graphs {
            for cfg in FlatConfig::all() {
                assert_partition_and_connected(g, &flat_decompose(g, cfg));
                assert_eq!(order_flat(g, cfg).len(), g.n());
            }
        }
    }

    #[test]
    fn cycle_trace() {
        let g = cycle(6);
        let dec = flat_decompose(&g, FlatConfig::BEST);
        assert_eq!(dec.pieces[0].vertices, vec![0]);
        // C - H1 is the path 1..5; root 2 (max inner degree, smallest id),
        // contact 1 is the shallowest neighbor of H1.
        assert_eq!(dec.pieces[1].root, 2);
        assert_eq!(dec.pieces[1].contacts, vec![1]);
        assert_eq!(dec.pieces[1].vertices, vec![2, 1]);
        assert_partition_and_connected(&g, &dec);
    }

    #[test]
    fn config_names_round_trip() {
        for cfg in FlatConfig::all() {
            assert_eq!(cfg.to_string().parse::<FlatConfig>().unwrap(), cfg);
        }
        assert_eq!(FlatConfig::BEST.to_string(), "flat:2:sort:0");
        assert!("flat:4:bfs:0".parse::<FlatConfig>().is_err());
    }

    #[test]
    fn pieces_are_minimal_subtrees() {
        for seed in 0..10 {
            let g = random_connected(45, 0.06, seed);
            for cfg in FlatConfig::all() {
                for p in flat_decompose(&g, cfg).pieces {
                    for &v in &p.vertices {
                        let has_child = p.tree_parent.contains(&Some(v));
                        if !has_child {
                            assert!(v == p.root || p.contacts.contains(&v), "non-required leaf {v}");
                        }
                    }
                }
            }
        }
    }
}
