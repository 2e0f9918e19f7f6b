//! Linear orders of the vertex set.

use std::io::BufRead;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// A permutation of `0..n` with both the position-to-vertex and the
/// vertex-to-position view.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Order {
    at: Vec<Vertex>,
    pos: Vec<usize>,
}

impl Order {
    pub fn identity(n: usize) -> Self {
        Order { at: (0..n).collect(), pos: (0..n).collect() }
    }

    /// Wraps a vertex sequence, earliest first. Fails unless it is a
    /// permutation of `0..len`.
    pub fn from_sequence(at: Vec<Vertex>) -> Result<Self> {
        let n = at.len();
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in at.iter().enumerate() {
            if v >= n {
                return Err(Error::InvalidOrder(format!("vertex {v} out of range for n = {n}")));
            }
            if pos[v] != usize::MAX {
                return Err(Error::InvalidOrder(format!("vertex {v} occurs twice")));
            }
            pos[v] = i;
        }
        Ok(Order { at, pos })
    }

    pub fn len(&self) -> usize {
        self.at.len()
    }

    pub fn is_empty(&self) -> bool {
        self.at.is_empty()
    }

    pub fn position(&self, v: Vertex) -> usize {
        self.pos[v]
    }

    pub fn vertex_at(&self, i: usize) -> Vertex {
        self.at[i]
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.at
    }

    pub fn positions(&self) -> &[usize] {
        &self.pos
    }

    /// `u <_L v`.
    pub fn less(&self, u: Vertex, v: Vertex) -> bool {
        self.pos[u] < self.pos[v]
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.at.iter().copied()
    }

    pub fn swap_positions(&mut self, i: usize, j: usize) {
        self.at.swap(i, j);
        self.pos[self.at[i]] = i;
        self.pos[self.at[j]] = j;
    }

    pub fn reversed(&self) -> Order {
        let at: Vec<Vertex> = self.at.iter().rev().copied().collect();
        Order::from_sequence(at).expect("reversal of a permutation")
    }

    /// One original label per line, earliest first.
    pub fn to_labels(&self, g: &Graph) -> String {
        let mut out = String::new();
        for v in self.iter() {
            out.push_str(&g.label(v).to_string());
            out.push('\n');
        }
        out
    }

    /// Reads the format written by [`to_labels`](Self::to_labels).
    pub fn parse_labels(g: &Graph, reader: impl BufRead) -> Result<Order> {
        let mut at = Vec::with_capacity(g.n());
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let label: u64 =
                t.parse().map_err(|_| Error::Parse { line: i + 1, message: format!("invalid vertex label {t:?}") })?;
            let v = g
                .vertex_of(label)
                .ok_or_else(|| Error::Parse { line: i + 1, message: format!("unknown vertex label {label}") })?;
            at.push(v);
        }
        if at.len() != g.n() {
            return Err(Error::InvalidOrder(format!("order lists {} vertices, graph has {}", at.len(), g.n())));
        }
        Order::from_sequence(at)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_permutations() {
        assert!(Order::from_sequence(vec![0, 0]).is_err());
        assert!(Order::from_sequence(vec![0, 2]).is_err());
        assert!(Order::from_sequence(vec![1, 0]).is_ok());
    }

    #[test]
    fn swap_keeps_views_inverse() {
        let mut o = Order::from_sequence(vec![2, 0, 1, 3]).unwrap();
        o.swap_positions(0, 3);
        assert_eq!(o.as_slice(), &[3, 0, 1, 2]);
        for i in 0..4 {
            assert_eq!(o.position(o.vertex_at(i)), i);
        }
    }

    #[test]
    fn label_round_trip() {
        let g = crate::graph::parse_edge_list_str("7 9\n9 11\n").unwrap();
        let o = Order::from_sequence(vec![1, 2, 0]).unwrap();
        let text = o.to_labels(&g);
        assert_eq!(text, "9\n11\n7\n");
        assert_eq!(Order::parse_labels(&g, text.as_bytes()).unwrap(), o);
        assert!(Order::parse_labels(&g, "9\n11\n".as_bytes()).is_err());
    }
}
