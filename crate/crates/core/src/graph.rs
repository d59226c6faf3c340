//! Undirected simple graphs with exact rational edge weights.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact rational number; always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Normalized edge key with `u < v`.
pub fn edge_key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Undirected simple graph on vertices `0..vertex_count` with a rational weight per edge.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WeightedGraph {
    vertex_count: usize,
    edges: BTreeMap<(usize, usize), Rational>,
}

impl WeightedGraph {
    pub fn new(vertex_count: usize) -> Self {
        WeightedGraph {
            vertex_count,
            edges: BTreeMap::new(),
        }
    }

    /// Builds an unweighted graph, panicking on malformed edge lists. Meant for literals.
    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = WeightedGraph::new(vertex_count);
        for &(u, v) in edges {
            g.add_edge(u, v, Rational::one()).expect("valid edge list");
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn add_vertex(&mut self) -> usize {
        self.vertex_count += 1;
        self.vertex_count - 1
    }

    pub fn add_vertices(&mut self, k: usize) -> std::ops::Range<usize> {
        let start = self.vertex_count;
        self.vertex_count += k;
        start..self.vertex_count
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.vertex_count {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                count: self.vertex_count,
            });
        }
        Ok(())
    }

    pub fn add_edge(&mut self, u: usize, v: usize, w: Rational) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::Loop(u));
        }
        let key = edge_key(u, v);
        if self.edges.contains_key(&key) {
            return Err(Error::DuplicateEdge(key.0, key.1));
        }
        self.edges.insert(key, w);
        Ok(())
    }

    /// Adds an edge of weight 1 unless it is already present.
    pub fn ensure_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::Loop(u));
        }
        let key = edge_key(u, v);
        if self.edges.contains_key(&key) {
            return Ok(false);
        }
        self.edges.insert(key, Rational::one());
        Ok(true)
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<Rational> {
        self.edges
            .remove(&edge_key(u, v))
            .ok_or(Error::MissingEdge(u.min(v), u.max(v)))
    }

    pub fn set_weight(&mut self, u: usize, v: usize, w: Rational) -> Result<()> {
        match self.edges.get_mut(&edge_key(u, v)) {
            Some(slot) => {
                *slot = w;
                Ok(())
            }
            None => Err(Error::MissingEdge(u.min(v), u.max(v))),
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.edges.contains_key(&edge_key(u, v))
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<&Rational> {
        self.edges.get(&edge_key(u, v))
    }

    /// Edges in lexicographic order of their normalized keys.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.edges.iter().map(|(&(u, v), w)| (u, v, w))
    }

    pub fn edge_keys(&self) -> Vec<(usize, usize)> {
        self.edges.keys().copied().collect()
    }

    pub fn is_unweighted(&self) -> bool {
        self.edges.values().all(|w| w.is_one())
    }

    pub fn has_nonnegative_weights(&self) -> bool {
        self.edges.values().all(|w| *w >= Rational::zero())
    }

    /// Sorted adjacency lists.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(u, v) in self.edges.keys() {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .keys()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .keys()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertex_count];
        let mut comps = Vec::new();
        for s in 0..self.vertex_count {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![s];
            let mut comp = vec![s];
            while let Some(x) = stack.pop() {
                for &y in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                        comp.push(y);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// `G[S]`, relabelled contiguously in increasing vertex order. Returns the graph and the
    /// map from new index to old vertex.
    pub fn induced_subgraph(&self, set: &[usize]) -> Result<(WeightedGraph, Vec<usize>)> {
        let mut keep: BTreeSet<usize> = BTreeSet::new();
        for &v in set {
            self.check_vertex(v)?;
            keep.insert(v);
        }
        let old_of_new: Vec<usize> = keep.into_iter().collect();
        let mut new_of_old = vec![usize::MAX; self.vertex_count];
        for (i, &v) in old_of_new.iter().enumerate() {
            new_of_old[v] = i;
        }
        let mut g = WeightedGraph::new(old_of_new.len());
        for (&(u, v), w) in &self.edges {
            if new_of_old[u] != usize::MAX && new_of_old[v] != usize::MAX {
                g.edges
                    .insert(edge_key(new_of_old[u], new_of_old[v]), w.clone());
            }
        }
        Ok((g, old_of_new))
    }

    /// Deletes the given vertices; returns the remaining graph and the new-to-old map.
    pub fn delete_vertices(&self, removed: &[usize]) -> Result<(WeightedGraph, Vec<usize>)> {
        let gone: BTreeSet<usize> = removed.iter().copied().collect();
        let keep: Vec<usize> = (0..self.vertex_count)
            .filter(|v| !gone.contains(v))
            .collect();
        self.induced_subgraph(&keep)
    }

    /// Contracts the edge `uv` into `u` (minor semantics): parallel edges merge, loops vanish.
    /// Returns the contracted graph and a map from old vertex to new vertex.
    pub fn contract_edge(&self, u: usize, v: usize) -> Result<(WeightedGraph, Vec<usize>)> {
        if !self.is_unweighted() {
            return Err(Error::WeightedContraction);
        }
        if !self.has_edge(u, v) {
            return Err(Error::MissingEdge(u.min(v), u.max(v)));
        }
        self.merge_vertices(u, v)
    }

    /// Identifies `v` with `u` regardless of adjacency (unweighted only).
    pub fn merge_vertices(&self, u: usize, v: usize) -> Result<(WeightedGraph, Vec<usize>)> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if !self.is_unweighted() {
            return Err(Error::WeightedContraction);
        }
        let mut map = vec![0; self.vertex_count];
        let mut next = 0;
        for x in 0..self.vertex_count {
            if x == v {
                continue;
            }
            map[x] = next;
            next += 1;
        }
        map[v] = map[u];
        let mut g = WeightedGraph::new(self.vertex_count - 1);
        for &(a, b) in self.edges.keys() {
            let (na, nb) = (map[a], map[b]);
            if na != nb {
                g.edges.insert(edge_key(na, nb), Rational::one());
            }
        }
        Ok((g, map))
    }

    /// Vertex-disjoint union; the second graph's vertices are shifted by `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &WeightedGraph) -> WeightedGraph {
        let shift = self.vertex_count;
        let mut g = self.clone();
        g.vertex_count += other.vertex_count;
        for (&(u, v), w) in &other.edges {
            g.edges.insert((u + shift, v + shift), w.clone());
        }
        g
    }

    /// Same edge set with every weight replaced by 1.
    pub fn unweighted_copy(&self) -> WeightedGraph {
        let mut g = self.clone();
        for w in g.edges.values_mut() {
            *w = Rational::one();
        }
        g
    }

    /// Applies a vertex permutation / injection `map[old] = new` into a graph with `n` vertices.
    pub fn relabel(&self, map: &[usize], n: usize) -> Result<WeightedGraph> {
        let mut g = WeightedGraph::new(n);
        for (&(u, v), w) in &self.edges {
            g.add_edge(map[u], map[v], w.clone())?;
        }
        Ok(g)
    }
}

/// Common small graphs used throughout the crate and its tests.
pub mod named {
    use super::WeightedGraph;

    pub fn complete(n: usize) -> WeightedGraph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        WeightedGraph::from_edges(n, &edges)
    }

    pub fn cycle(n: usize) -> WeightedGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        WeightedGraph::from_edges(n, &edges)
    }

    pub fn path(n: usize) -> WeightedGraph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        WeightedGraph::from_edges(n, &edges)
    }

    pub fn complete_bipartite(a: usize, b: usize) -> WeightedGraph {
        let mut edges = Vec::new();
        for u in 0..a {
            for v in 0..b {
                edges.push((u, a + v));
            }
        }
        WeightedGraph::from_edges(a + b, &edges)
    }

    /// `rows x cols` grid, vertex `r * cols + c`.
    pub fn grid(rows: usize, cols: usize) -> WeightedGraph {
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                let v = r * cols + c;
                if c + 1 < cols {
                    edges.push((v, v + 1));
                }
                if r + 1 < rows {
                    edges.push((v, v + cols));
                }
            }
        }
        WeightedGraph::from_edges(rows * cols, &edges)
    }

    pub fn cube() -> WeightedGraph {
        let mut edges = Vec::new();
        for v in 0..8usize {
            for bit in [1, 2, 4] {
                let u = v ^ bit;
                if v < u {
                    edges.push((v, u));
                }
            }
        }
        WeightedGraph::from_edges(8, &edges)
    }

    pub fn petersen() -> WeightedGraph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        WeightedGraph::from_edges(10, &edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn induced_subgraph_edge_cases() {
        let tri = named::complete(3);
        let (empty, map) = tri.induced_subgraph(&[]).unwrap();
        assert_eq!(empty.vertex_count(), 0);
        assert!(map.is_empty());

        let (all, map) = tri.induced_subgraph(&[2, 0, 1]).unwrap();
        assert_eq!(all, tri);
        assert_eq!(map, vec![0, 1, 2]);

        let (edge, map) = tri.induced_subgraph(&[0, 1]).unwrap();
        assert_eq!(edge.edge_count(), 1);
        assert_eq!(map, vec![0, 1]);

        assert!(matches!(
            tri.induced_subgraph(&[5]),
            Err(Error::VertexOutOfRange { vertex: 5, .. })
        ));
    }

    #[test]
    fn simplicity_is_enforced() {
        let mut g = WeightedGraph::new(3);
        g.add_edge(0, 1, rat(1)).unwrap();
        assert_eq!(g.add_edge(1, 0, rat(2)), Err(Error::DuplicateEdge(0, 1)));
        assert_eq!(g.add_edge(2, 2, rat(1)), Err(Error::Loop(2)));
        assert!(g.add_edge(0, 3, rat(1)).is_err());
    }

    #[test]
    fn contraction_merges_parallels_and_drops_loops() {
        // Triangle 0-1-2 plus pendant 3 on 2: contracting 0-1 leaves edges {01', 0'2, 23}.
        let g = WeightedGraph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]);
        let (h, map) = g.contract_edge(0, 1).unwrap();
        assert_eq!(h.vertex_count(), 3);
        assert_eq!(h.edge_count(), 2);
        assert_eq!(map[0], map[1]);
        assert!(h.has_edge(map[0], map[2]));

        let mut weighted = g.clone();
        weighted.set_weight(2, 3, rat(2)).unwrap();
        assert_eq!(
            weighted.contract_edge(0, 1),
            Err(Error::WeightedContraction)
        );
    }

    #[test]
    fn named_graph_sizes() {
        assert_eq!(named::cube().edge_count(), 12);
        assert_eq!(named::petersen().edge_count(), 15);
        assert_eq!(named::complete_bipartite(3, 3).edge_count(), 9);
        assert_eq!(named::grid(2, 3).edge_count(), 7);
    }
}
