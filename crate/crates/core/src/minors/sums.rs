//! Blowups of plane graphs and clique-sums.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{edge_key, WeightedGraph};
use crate::reduce::RingBlowup;

/// Replaces every vertex of `outer` by two adjacent clones sharing its neighbourhood.
///
/// Vertex `r` of `q` keeps its index; the second clone of the `i`-th outer vertex is
/// `q.vertex_count() + i`.
pub fn blowup(q: &WeightedGraph, outer: &[usize]) -> RingBlowup {
    RingBlowup::full_blowup(q, outer.to_vec(), outer)
}

/// `l ⊕_S r` where `shared` pairs each vertex of `S` in `l` with its copy in `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueSum {
    pub graph: WeightedGraph,
    /// Index in `graph` of every vertex of `r`; `l` keeps its own indices.
    pub right_map: Vec<usize>,
}

/// Glues `l` and `r` along the clique `shared` and deletes `deletions` (pairs of vertices of
/// `l` inside `S`). Weights are dropped.
pub fn clique_sum(
    l: &WeightedGraph,
    r: &WeightedGraph,
    shared: &[(usize, usize)],
    deletions: &[(usize, usize)],
) -> Result<CliqueSum> {
    let mut left_s = BTreeSet::new();
    let mut right_s = BTreeSet::new();
    for &(a, b) in shared {
        if a >= l.vertex_count() || b >= r.vertex_count() {
            return Err(Error::VertexOutOfRange {
                vertex: a.max(b),
                count: l.vertex_count().min(r.vertex_count()),
            });
        }
        if !left_s.insert(a) || !right_s.insert(b) {
            return Err(Error::NotAClique(format!(
                "vertex {a} or {b} is shared twice"
            )));
        }
    }
    for (i, &(a, b)) in shared.iter().enumerate() {
        for &(c, d) in &shared[i + 1..] {
            if !l.has_edge(a, c) {
                return Err(Error::NotAClique(format!("{a}-{c} missing on the left")));
            }
            if !r.has_edge(b, d) {
                return Err(Error::NotAClique(format!("{b}-{d} missing on the right")));
            }
        }
    }
    for &(a, b) in deletions {
        if !left_s.contains(&a) || !left_s.contains(&b) || a == b {
            return Err(Error::NotAClique(format!(
                "deleted edge {a}-{b} is not inside S"
            )));
        }
    }
    let mut right_map = vec![usize::MAX; r.vertex_count()];
    for &(a, b) in shared {
        right_map[b] = a;
    }
    let mut next = l.vertex_count();
    for slot in right_map.iter_mut().filter(|s| **s == usize::MAX) {
        *slot = next;
        next += 1;
    }
    let deleted: BTreeSet<(usize, usize)> =
        deletions.iter().map(|&(a, b)| edge_key(a, b)).collect();
    let mut graph = WeightedGraph::new(next);
    let edges = l
        .edges()
        .map(|(a, b, _)| (a, b))
        .chain(r.edges().map(|(a, b, _)| (right_map[a], right_map[b])));
    for (a, b) in edges {
        if !deleted.contains(&edge_key(a, b)) {
            graph.ensure_edge(a, b)?;
        }
    }
    Ok(CliqueSum { graph, right_map })
}
