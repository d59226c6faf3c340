//! Simple rings: plane graphs whose vertices off the outer face form a clique of size ≤ 3.

use std::collections::BTreeSet;

use crate::count::{biconnected_blocks, extend_embedding, rotation_from_faces, PlanarEmbedding};
use crate::error::{Error, Result};
use crate::format::{content_lines, parse_graph_lines, serialize_graph};
use crate::gadgets::has_outer_order;
use crate::graph::{edge_key, WeightedGraph};
use crate::reduce::RingBlowup;

use super::sums::blowup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleRing {
    pub graph: WeightedGraph,
    /// Cyclic order of the outer face.
    pub outer: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Complication {
    /// Edge between non-consecutive outer vertices.
    Chord { u: usize, v: usize },
    /// Outer neighbour `o` of the inner vertex `w` after its first two.
    ThirdNeighbor { w: usize, o: usize },
}

impl SimpleRing {
    pub fn new(graph: WeightedGraph, outer: Vec<usize>) -> Result<Self> {
        let ring = SimpleRing {
            graph: graph.unweighted_copy(),
            outer,
        };
        ring.check().map_err(Error::NotASimpleRing)?;
        Ok(ring)
    }

    /// Graph file followed by a line `outer v v v` in cyclic order.
    pub fn serialize(&self) -> String {
        let mut s = serialize_graph(&self.graph);
        s.push_str("outer");
        for v in &self.outer {
            s.push_str(&format!(" {v}"));
        }
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let graph = parse_graph_lines(&mut lines)?;
        let (line, body) = lines.next().ok_or(Error::Syntax {
            line: 0,
            msg: "missing outer line".into(),
        })?;
        let mut toks = body.split_whitespace();
        if toks.next() != Some("outer") {
            return Err(Error::Syntax {
                line,
                msg: "expected \"outer\"".into(),
            });
        }
        let outer = toks
            .map(|t| {
                t.parse().map_err(|_| Error::Syntax {
                    line,
                    msg: format!("bad vertex {t:?}"),
                })
            })
            .collect::<Result<Vec<usize>>>()?;
        if let Some((line, _)) = lines.next() {
            return Err(Error::Syntax {
                line,
                msg: "unexpected content after the outer line".into(),
            });
        }
        SimpleRing::new(graph, outer)
    }

    pub fn check(&self) -> std::result::Result<(), String> {
        let n = self.graph.vertex_count();
        let set: BTreeSet<usize> = self.outer.iter().copied().collect();
        if set.len() != self.outer.len() || set.iter().any(|&v| v >= n) {
            return Err("outer order repeats a vertex or leaves the graph".into());
        }
        let inner = self.inner();
        if inner.len() > 3 {
            return Err(format!("{} vertices off the outer face", inner.len()));
        }
        for (i, &a) in inner.iter().enumerate() {
            for &b in &inner[i + 1..] {
                if !self.graph.has_edge(a, b) {
                    return Err(format!("inner vertices {a} and {b} are not adjacent"));
                }
            }
        }
        if !has_outer_order(&self.graph, &self.outer) {
            return Err("no planar embedding with the declared outer face".into());
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn inner(&self) -> Vec<usize> {
        let outer: BTreeSet<usize> = self.outer.iter().copied().collect();
        (0..self.vertex_count())
            .filter(|v| !outer.contains(v))
            .collect()
    }

    pub fn position(&self, v: usize) -> Option<usize> {
        self.outer.iter().position(|&x| x == v)
    }

    /// Whether `u` and `v` are neighbours in the cyclic order of the outer face.
    pub fn consecutive(&self, u: usize, v: usize) -> bool {
        let k = self.outer.len();
        match (self.position(u), self.position(v)) {
            (Some(a), Some(b)) if a != b => (a + 1) % k == b || (b + 1) % k == a,
            _ => false,
        }
    }

    pub fn blowup(&self) -> RingBlowup {
        blowup(&self.graph, &self.outer)
    }

    /// Vertex count of the blowup.
    pub fn blowup_size(&self) -> usize {
        self.vertex_count() + self.outer.len()
    }

    /// Every face but the outer one is a triangle. With at least three outer vertices this
    /// holds exactly when the outer cycle is present and adding an apex over it yields a
    /// maximal planar graph; smaller rings count as triangulated when no edge can be added.
    pub fn is_triangulated(&self) -> bool {
        let (n, k) = (self.vertex_count(), self.outer.len());
        if k < 3 {
            return self.addable_edge().is_none();
        }
        (0..k).all(|i| self.graph.has_edge(self.outer[i], self.outer[(i + 1) % k]))
            && self.graph.edge_count() + k == 3 * (n + 1) - 6
    }

    /// First missing edge whose addition keeps a simple ring with the same outer face.
    fn addable_edge(&self) -> Option<(usize, usize)> {
        let n = self.vertex_count();
        (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .find(|&(a, b)| {
                if self.graph.has_edge(a, b) {
                    return false;
                }
                let mut g = self.graph.clone();
                g.ensure_edge(a, b).expect("vertices in range");
                has_outer_order(&g, &self.outer)
            })
    }

    /// Outer neighbours of `w`, in cyclic order starting after the largest gap.
    pub fn outer_neighbors(&self, w: usize) -> Vec<usize> {
        let k = self.outer.len();
        let mut pos: Vec<usize> = self
            .graph
            .neighbors(w)
            .into_iter()
            .filter_map(|x| self.position(x))
            .collect();
        pos.sort_unstable();
        let m = pos.len();
        if m == 0 {
            return Vec::new();
        }
        let gap = |i: usize| (pos[(i + 1) % m] + k - pos[i] - 1) % k;
        let widest = (0..m)
            .max_by_key(|&i| (gap(i), std::cmp::Reverse(i)))
            .unwrap();
        (0..m)
            .map(|j| self.outer[pos[(widest + 1 + j) % m]])
            .collect()
    }

    /// Restriction to `keep` (sorted ascending) with a new outer order and extra edges, both
    /// given in the old labels. Returns the ring and the map from new to old labels.
    pub(crate) fn restrict(
        &self,
        keep: &[usize],
        outer: &[usize],
        extra: &[(usize, usize)],
    ) -> Result<(SimpleRing, Vec<usize>)> {
        let (mut g, _) = self.graph.induced_subgraph(keep)?;
        let local = |v: usize| keep.binary_search(&v).expect("kept vertex");
        for &(a, b) in extra {
            g.ensure_edge(local(a), local(b))?;
        }
        let ring = SimpleRing::new(g, outer.iter().map(|&v| local(v)).collect())?;
        Ok((ring, keep.to_vec()))
    }
}

pub fn find_complications(q: &SimpleRing) -> Vec<Complication> {
    let mut out = Vec::new();
    for (a, b, _) in q.graph.edges() {
        if q.position(a).is_some() && q.position(b).is_some() && !q.consecutive(a, b) {
            out.push(Complication::Chord { u: a, v: b });
        }
    }
    for w in q.inner() {
        for &o in q.outer_neighbors(w).iter().skip(2) {
            out.push(Complication::ThirdNeighbor { w, o });
        }
    }
    out
}

/// Adds edges to `q` until every face but the outer one is a triangle.
///
/// Works on `q` plus the outer cycle plus an apex joined to every outer vertex. Leaf blocks
/// are first tied to a second neighbour of their cut vertex, then the embedding is grown from
/// the wheel with the apex triangles closed to new paths, and finally every face away from the
/// apex is split by chords, preferring chords at inner vertices.
pub fn triangulate(q: &SimpleRing) -> Result<SimpleRing> {
    let k = q.outer.len();
    let inner = q.inner();
    if k < 3 {
        let mut out = q.clone();
        while let Some((a, b)) = out.addable_edge() {
            out.graph.ensure_edge(a, b)?;
        }
        return Ok(out);
    }
    let n = q.vertex_count();
    let apex = n;
    let mut g = q.graph.clone();
    for i in 0..k {
        g.ensure_edge(q.outer[i], q.outer[(i + 1) % k])?;
    }
    if let Some(&w) = inner.first() {
        if inner
            .iter()
            .all(|&x| g.neighbors(x).iter().all(|y| inner.contains(y)))
        {
            g.ensure_edge(w, q.outer[0])?;
        }
    }
    let mut h = g.clone();
    h.add_vertex();
    for &o in &q.outer {
        h.ensure_edge(apex, o)?;
    }
    loop {
        let adj = h.adjacency();
        let blocks = biconnected_blocks(n + 1, &adj);
        if blocks.len() <= 1 {
            break;
        }
        let mut tie = None;
        for block in &blocks {
            let verts: BTreeSet<usize> = block.iter().flat_map(|&(a, b)| [a, b]).collect();
            if verts.contains(&apex) {
                continue;
            }
            let cuts: Vec<usize> = verts
                .iter()
                .copied()
                .filter(|&c| adj[c].iter().any(|x| !verts.contains(x)))
                .collect();
            if cuts.len() != 1 {
                continue;
            }
            let c = cuts[0];
            let p = *verts.iter().find(|&&x| x != c).unwrap();
            if let Some(&x) = adj[c].iter().find(|&&x| x != apex && !verts.contains(&x)) {
                tie = Some((p, x));
                break;
            }
        }
        let (p, x) = tie.ok_or_else(|| Error::NotASimpleRing("cannot tie a leaf block".into()))?;
        h.ensure_edge(p, x)?;
        g.ensure_edge(p, x)?;
    }
    let mut faces = vec![q.outer.clone()];
    for i in 0..k {
        faces.push(vec![q.outer[(i + 1) % k], q.outer[i], apex]);
    }
    let mut forbidden = vec![true; k + 1];
    forbidden[0] = false;
    let adj = h.adjacency();
    let mut faces = extend_embedding(&adj, faces, forbidden)
        .ok_or_else(|| Error::NotASimpleRing("no embedding with the declared outer face".into()))?;
    let is_inner = |v: usize| v < n && q.position(v).is_none();
    while let Some(fi) = faces.iter().position(|f| f.len() > 3 && !f.contains(&apex)) {
        let f = faces.swap_remove(fi);
        let len = f.len();
        let mut best: Option<(usize, usize, usize)> = None;
        for i in 0..len {
            for j in i + 2..len {
                if i == 0 && j == len - 1 {
                    continue;
                }
                let (a, b) = (f[i], f[j]);
                if a == b || g.has_edge(a, b) {
                    continue;
                }
                let rank = if is_inner(a) || is_inner(b) { 0 } else { 1 };
                if best.is_none_or(|(r, _, _)| rank < r) {
                    best = Some((rank, i, j));
                }
            }
        }
        let (_, i, j) =
            best.ok_or_else(|| Error::NonTriangulated(format!("face {f:?} admits no chord")))?;
        g.ensure_edge(f[i], f[j])?;
        faces.push(f[i..=j].to_vec());
        faces.push(f[j..].iter().chain(&f[..=i]).copied().collect());
    }
    debug_assert!(
        PlanarEmbedding::from_rotation(rotation_from_faces(n + 1, &faces)).satisfies_euler()
    );
    let out = SimpleRing::new(g, q.outer.clone())?;
    if !out.is_triangulated() {
        return Err(Error::NonTriangulated(
            "triangulation left a non-triangular face".into(),
        ));
    }
    Ok(out)
}

/// Edges of `b` missing from `a` (same vertex set).
pub(crate) fn added_edges(a: &WeightedGraph, b: &WeightedGraph) -> Vec<(usize, usize)> {
    b.edges()
        .map(|(u, v, _)| edge_key(u, v))
        .filter(|&(u, v)| !a.has_edge(u, v))
        .collect()
}
