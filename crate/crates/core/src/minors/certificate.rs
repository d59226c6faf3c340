//! Clique-sum decompositions of simple rings and their certificates.
//!
//! A certificate is a tree. Its root is the input ring; a `supergraph` node has one child on the
//! same vertices with more edges; a `split` node is the clique-sum of its two children along
//! the vertices they share, minus the listed deleted edges; a `leaf` carries a verdict that
//! bounds the Hadwiger number of its blowup by 7 on its own.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{edge_key, named, WeightedGraph};

use super::ring::{added_edges, find_complications, triangulate, Complication, SimpleRing};
use super::search::has_minor;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The blowup has at most 7 vertices.
    Small,
    /// No inner vertices and at most 3 outer ones.
    EmptyInner,
    /// At most 2 outer vertices.
    SmallOuter,
    /// Nine blowup vertices, and every single deletion or contraction leaves fewer than 28 edges.
    Z,
}

impl Verdict {
    pub fn tag(self) -> &'static str {
        match self {
            Verdict::Small => "small",
            Verdict::EmptyInner => "empty-inner",
            Verdict::SmallOuter => "small-outer",
            Verdict::Z => "z",
        }
    }

    fn from_tag(s: &str) -> Option<Self> {
        [
            Verdict::Small,
            Verdict::EmptyInner,
            Verdict::SmallOuter,
            Verdict::Z,
        ]
        .into_iter()
        .find(|v| v.tag() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitKind {
    /// Along an outer chord `uv`.
    Chord { u: usize, v: usize },
    /// Splitting off `{w, u1, u2, u3}` over `{w, u1, u3}`.
    Fan {
        w: usize,
        u1: usize,
        u2: usize,
        u3: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    Leaf(Verdict),
    Supergraph(Box<CertNode>),
    Split {
        kind: SplitKind,
        /// Separator edges present in the children but not in this ring.
        deleted: Vec<(usize, usize)>,
        /// Each child with its map from child vertex to vertex of this ring.
        parts: Vec<(Vec<usize>, CertNode)>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertNode {
    pub ring: SimpleRing,
    pub step: Step,
}

impl CertNode {
    pub fn leaves(&self) -> Vec<(&SimpleRing, Verdict)> {
        match &self.step {
            Step::Leaf(v) => vec![(&self.ring, *v)],
            Step::Supergraph(c) => c.leaves(),
            Step::Split { parts, .. } => parts.iter().flat_map(|(_, c)| c.leaves()).collect(),
        }
    }

    pub fn split_count(&self) -> usize {
        match &self.step {
            Step::Leaf(_) => 0,
            Step::Supergraph(c) => c.split_count(),
            Step::Split { parts, .. } => {
                1 + parts.iter().map(|(_, c)| c.split_count()).sum::<usize>()
            }
        }
    }
}

/// The reconstructed reduct of `Z`: outer triangle `0 1 2`, inner triangle `3 4 5`, with inner
/// vertex `3 + i` joined to the consecutive outer vertices `i` and `i + 1`.
pub fn z_reduct() -> SimpleRing {
    let mut edges = vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (3, 5)];
    for i in 0..3 {
        edges.push((3 + i, i));
        edges.push((3 + i, (i + 1) % 3));
    }
    SimpleRing::new(WeightedGraph::from_edges(6, &edges), vec![0, 1, 2]).expect("octahedron")
}

pub fn z_graph() -> WeightedGraph {
    z_reduct().blowup().graph
}

/// Whether every edge of `g` lies in a `K4` subgraph.
pub fn every_edge_in_k4(g: &WeightedGraph) -> bool {
    let adj: Vec<BTreeSet<usize>> = g
        .adjacency()
        .into_iter()
        .map(|a| a.into_iter().collect())
        .collect();
    g.edges().all(|(a, b, _)| {
        let common: Vec<usize> = adj[a].intersection(&adj[b]).copied().collect();
        common
            .iter()
            .enumerate()
            .any(|(i, &x)| common[i + 1..].iter().any(|&y| adj[x].contains(&y)))
    })
}

/// Fewest edges lost by one vertex deletion or one edge contraction.
fn least_single_loss(g: &WeightedGraph) -> usize {
    let adj: Vec<BTreeSet<usize>> = g
        .adjacency()
        .into_iter()
        .map(|a| a.into_iter().collect())
        .collect();
    let deletion = adj.iter().map(BTreeSet::len).min().unwrap_or(0);
    let contraction = g
        .edges()
        .map(|(a, b, _)| 1 + adj[a].intersection(&adj[b]).count())
        .min()
        .unwrap_or(usize::MAX);
    deletion.min(contraction)
}

/// Whether the outer-preserving isomorphism type of `q` is the reduct of `Z`.
fn is_z_reduct(q: &SimpleRing) -> bool {
    let z = z_reduct();
    if q.vertex_count() != 6 || q.outer.len() != 3 || q.graph.edge_count() != z.graph.edge_count() {
        return false;
    }
    let inner = q.inner();
    let perms = |v: &[usize]| -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    if a != b && b != c && a != c {
                        out.push(vec![v[a], v[b], v[c]]);
                    }
                }
            }
        }
        out
    };
    perms(&q.outer).iter().any(|o| {
        perms(&inner).iter().any(|w| {
            let map: Vec<usize> = o.iter().chain(w).copied().collect();
            z.graph
                .edges()
                .all(|(a, b, _)| q.graph.has_edge(map[a], map[b]))
        })
    })
}

/// Classifies a triangulated, complication-free ring into the cases of the endgame.
pub fn check_complication_free(q: &SimpleRing) -> Result<Verdict> {
    let violation = |m: String| Err(Error::CaseViolation(m));
    if !q.is_triangulated() {
        return violation("ring is not triangulated".into());
    }
    if let Some(c) = find_complications(q).first() {
        return violation(format!("ring has complication {c:?}"));
    }
    let w = q.inner().len();
    match w {
        0 if q.vertex_count() <= 3 => Ok(Verdict::EmptyInner),
        0 => violation(format!(
            "no inner vertices but {} outer ones",
            q.vertex_count()
        )),
        _ if q.outer.len() <= 2 => Ok(Verdict::SmallOuter),
        1 | 2 => violation(format!(
            "{w} inner vertices but {} outer ones",
            q.outer.len()
        )),
        _ => {
            let z = q.blowup().graph;
            if !is_z_reduct(q) || z.vertex_count() != 9 || z.edge_count() != 30 {
                return violation("three inner vertices but the blowup is not Z".into());
            }
            if !every_edge_in_k4(&z) || z.edge_count() - least_single_loss(&z) >= 28 {
                return violation("edge-count argument fails on Z".into());
            }
            if has_minor(&z, &named::complete(8))?.is_some() {
                return violation("search found a K8 minor in Z".into());
            }
            Ok(Verdict::Z)
        }
    }
}

fn outer_arc(outer: &[usize], from: usize, to: usize) -> Vec<usize> {
    let k = outer.len();
    let mut out = vec![outer[from]];
    let mut i = from;
    while i != to {
        i = (i + 1) % k;
        out.push(outer[i]);
    }
    out
}

fn split_chord(q: &SimpleRing, u: usize, v: usize) -> Result<Step> {
    let (mut i, mut j) = (q.position(u).unwrap(), q.position(v).unwrap());
    if i > j {
        std::mem::swap(&mut i, &mut j);
    }
    let left_outer = outer_arc(&q.outer, i, j);
    let right_outer = outer_arc(&q.outer, j, i);
    let left_mid: BTreeSet<usize> = left_outer[1..left_outer.len() - 1]
        .iter()
        .copied()
        .collect();
    let right_mid: BTreeSet<usize> = right_outer[1..right_outer.len() - 1]
        .iter()
        .copied()
        .collect();
    let adj = q.graph.adjacency();
    let mut side: BTreeMap<usize, bool> = BTreeMap::new();
    for s in 0..q.vertex_count() {
        if s == u || s == v || side.contains_key(&s) {
            continue;
        }
        let mut comp = vec![s];
        let mut seen = BTreeSet::from([s]);
        let mut k = 0;
        while k < comp.len() {
            for &y in &adj[comp[k]] {
                if y != u && y != v && seen.insert(y) {
                    comp.push(y);
                }
            }
            k += 1;
        }
        let l = comp.iter().any(|x| left_mid.contains(x));
        let r = comp.iter().any(|x| right_mid.contains(x));
        if l == r {
            return Err(Error::CaseViolation(format!(
                "chord {u}-{v} does not separate the ring cleanly"
            )));
        }
        for x in comp {
            side.insert(x, l);
        }
    }
    let mut parts = Vec::new();
    for (want, outer) in [(true, left_outer), (false, right_outer)] {
        let keep: Vec<usize> = (0..q.vertex_count())
            .filter(|x| *x == u || *x == v || side.get(x) == Some(&want))
            .collect();
        let (ring, map) = q.restrict(&keep, &outer, &[])?;
        parts.push((map, ring));
    }
    finish_split(q, SplitKind::Chord { u, v }, Vec::new(), parts)
}

/// Finds `u2` on the outer face whose neighbours are exactly `w` and its two outer neighbours,
/// all of them adjacent to `w`.
fn fan_triple(q: &SimpleRing, w: usize) -> Option<(usize, usize, usize)> {
    let k = q.outer.len();
    if k < 3 {
        return None;
    }
    (0..k).find_map(|i| {
        let (u1, u2, u3) = (q.outer[(i + k - 1) % k], q.outer[i], q.outer[(i + 1) % k]);
        let mut around = q.graph.neighbors(u2);
        around.sort_unstable();
        let mut expect = vec![w, u1, u3];
        expect.sort_unstable();
        (around == expect && q.graph.has_edge(w, u1) && q.graph.has_edge(w, u3))
            .then_some((u1, u2, u3))
    })
}

fn split_fan(q: &SimpleRing, w: usize) -> Result<Step> {
    let (u1, u2, u3) = fan_triple(q, w).ok_or_else(|| {
        Error::CaseViolation(format!(
            "no outer vertex of {w} is enclosed by two of its fan triangles"
        ))
    })?;
    let deleted = if q.graph.has_edge(u1, u3) {
        Vec::new()
    } else {
        vec![edge_key(u1, u3)]
    };
    let body: Vec<usize> = (0..q.vertex_count()).filter(|&x| x != u2).collect();
    let body_outer: Vec<usize> = q.outer.iter().copied().filter(|&x| x != u2).collect();
    let (body_ring, body_map) = q.restrict(&body, &body_outer, &[(u1, u3)])?;
    let mut piece: Vec<usize> = vec![w, u1, u2, u3];
    piece.sort_unstable();
    let (piece_ring, piece_map) = q.restrict(&piece, &[u1, u2, u3], &[(u1, u3)])?;
    finish_split(
        q,
        SplitKind::Fan { w, u1, u2, u3 },
        deleted,
        vec![(body_map, body_ring), (piece_map, piece_ring)],
    )
}

fn finish_split(
    q: &SimpleRing,
    kind: SplitKind,
    deleted: Vec<(usize, usize)>,
    parts: Vec<(Vec<usize>, SimpleRing)>,
) -> Result<Step> {
    let before = find_complications(q).len();
    let mut out = Vec::new();
    for (map, ring) in parts {
        let node = decompose(&ring)?;
        let small_leaf = node.step == Step::Leaf(Verdict::Small);
        let after = find_complications(&ring).len();
        if !small_leaf && after >= before {
            return Err(Error::CaseViolation(format!(
                "split {kind:?} left {after} of {before} complications"
            )));
        }
        out.push((map, node));
    }
    Ok(Step::Split {
        kind,
        deleted,
        parts: out,
    })
}

/// Splits a triangulated ring along clique-sums until every leaf is complication-free or has
/// a blowup on at most 7 vertices.
pub fn decompose(q: &SimpleRing) -> Result<CertNode> {
    let complications = find_complications(q);
    let step = if q.is_triangulated() && complications.is_empty() {
        Step::Leaf(check_complication_free(q)?)
    } else if q.blowup_size() <= 7 {
        Step::Leaf(Verdict::Small)
    } else if !q.is_triangulated() {
        return Err(Error::NonTriangulated(format!(
            "{} vertices, {} edges, outer face of {}",
            q.vertex_count(),
            q.graph.edge_count(),
            q.outer.len()
        )));
    } else {
        let chord = complications.iter().find_map(|c| match *c {
            Complication::Chord { u, v } => Some((u, v)),
            _ => None,
        });
        match (chord, complications[0]) {
            (Some((u, v)), _) => split_chord(q, u, v)?,
            (None, Complication::ThirdNeighbor { w, .. }) => split_fan(q, w)?,
            (None, Complication::Chord { .. }) => unreachable!(),
        }
    };
    Ok(CertNode {
        ring: q.clone(),
        step,
    })
}

/// Triangulates, decomposes and checks every leaf.
pub fn certify_simple_ring_blowup(q: &SimpleRing) -> Result<CertNode> {
    let t = triangulate(q)?;
    if t.graph == q.graph {
        return decompose(q);
    }
    Ok(CertNode {
        ring: q.clone(),
        step: Step::Supergraph(Box::new(decompose(&t)?)),
    })
}

fn list<T: std::fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    let s: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    if s.is_empty() {
        "-".into()
    } else {
        s.join(",")
    }
}

fn pairs(items: &[(usize, usize)]) -> String {
    list(items.iter().map(|(a, b)| format!("{a}-{b}")))
}

fn write_node(out: &mut String, node: &CertNode, depth: usize, map: Option<&[usize]>) {
    let indent = "  ".repeat(depth);
    let head = match &node.step {
        Step::Leaf(v) => format!("leaf verdict={}", v.tag()),
        Step::Supergraph(_) => "supergraph".into(),
        Step::Split { kind, deleted, .. } => {
            let kind = match *kind {
                SplitKind::Chord { u, v } => format!("chord:{u},{v}"),
                SplitKind::Fan { w, u1, u2, u3 } => format!("fan:{w},{u1},{u2},{u3}"),
            };
            format!("split kind={kind} deleted={}", pairs(deleted))
        }
    };
    let map = map.map(|m| format!(" map={}", list(m))).unwrap_or_default();
    let edges: Vec<(usize, usize)> = node.ring.graph.edge_keys();
    writeln!(
        out,
        "{indent}{head}{map} n={} outer={} edges={}",
        node.ring.vertex_count(),
        list(&node.ring.outer),
        pairs(&edges)
    )
    .unwrap();
    match &node.step {
        Step::Leaf(_) => {}
        Step::Supergraph(c) => write_node(out, c, depth + 1, None),
        Step::Split { parts, .. } => {
            for (m, c) in parts {
                write_node(out, c, depth + 1, Some(m));
            }
        }
    }
}

pub fn serialize_certificate(root: &CertNode) -> String {
    let mut out = String::new();
    write_node(&mut out, root, 0, None);
    out
}

struct Line {
    line: usize,
    depth: usize,
    head: Vec<String>,
    fields: BTreeMap<String, String>,
}

fn syntax(line: usize, msg: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        msg: msg.into(),
    }
}

fn parse_list(line: usize, s: &str) -> Result<Vec<usize>> {
    if s == "-" {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.parse()
                .map_err(|_| syntax(line, format!("bad number {t:?}")))
        })
        .collect()
}

fn parse_pairs(line: usize, s: &str) -> Result<Vec<(usize, usize)>> {
    if s == "-" {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            let (a, b) = t
                .split_once('-')
                .ok_or_else(|| syntax(line, format!("bad edge {t:?}")))?;
            let a = a
                .parse()
                .map_err(|_| syntax(line, format!("bad edge {t:?}")))?;
            let b = b
                .parse()
                .map_err(|_| syntax(line, format!("bad edge {t:?}")))?;
            Ok((a, b))
        })
        .collect()
}

fn parse_node(lines: &[Line], pos: &mut usize) -> Result<(Option<Vec<usize>>, CertNode)> {
    let l = &lines[*pos];
    *pos += 1;
    let field = |k: &str| {
        l.fields
            .get(k)
            .ok_or_else(|| syntax(l.line, format!("missing {k}=")))
    };
    let n: usize = field("n")?.parse().map_err(|_| syntax(l.line, "bad n"))?;
    let mut g = WeightedGraph::new(n);
    for (a, b) in parse_pairs(l.line, field("edges")?)? {
        g.add_edge(a, b, crate::graph::rat(1))
            .map_err(|e| syntax(l.line, e.to_string()))?;
    }
    let ring = SimpleRing {
        graph: g,
        outer: parse_list(l.line, field("outer")?)?,
    };
    let map = l
        .fields
        .get("map")
        .map(|m| parse_list(l.line, m))
        .transpose()?;
    let mut children = Vec::new();
    while *pos < lines.len() && lines[*pos].depth > l.depth {
        if lines[*pos].depth != l.depth + 1 {
            return Err(syntax(lines[*pos].line, "indentation jumps"));
        }
        children.push(parse_node(lines, pos)?);
    }
    let step = match l.head.first().map(String::as_str) {
        Some("leaf") => {
            let v = Verdict::from_tag(field("verdict")?)
                .ok_or_else(|| syntax(l.line, "bad verdict"))?;
            Step::Leaf(v)
        }
        Some("supergraph") => {
            let (_, c) = children
                .pop()
                .ok_or_else(|| syntax(l.line, "supergraph without child"))?;
            Step::Supergraph(Box::new(c))
        }
        Some("split") => {
            let kind = field("kind")?;
            let (name, args) = kind
                .split_once(':')
                .ok_or_else(|| syntax(l.line, "bad kind"))?;
            let a = parse_list(l.line, args)?;
            let kind = match (name, a.as_slice()) {
                ("chord", &[u, v]) => SplitKind::Chord { u, v },
                ("fan", &[w, u1, u2, u3]) => SplitKind::Fan { w, u1, u2, u3 },
                _ => return Err(syntax(l.line, "bad kind")),
            };
            let mut parts = Vec::new();
            for (m, c) in children.drain(..) {
                parts.push((
                    m.ok_or_else(|| syntax(l.line, "split child without map="))?,
                    c,
                ));
            }
            Step::Split {
                kind,
                deleted: parse_pairs(l.line, field("deleted")?)?,
                parts,
            }
        }
        _ => return Err(syntax(l.line, "expected leaf, supergraph or split")),
    };
    if !children.is_empty() {
        return Err(syntax(l.line, "unexpected children"));
    }
    Ok((map, CertNode { ring, step }))
}

pub fn parse_certificate(text: &str) -> Result<CertNode> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        if raw.trim().is_empty() {
            continue;
        }
        let depth = (raw.len() - raw.trim_start().len()) / 2;
        let mut head = Vec::new();
        let mut fields = BTreeMap::new();
        for tok in raw.split_whitespace() {
            match tok.split_once('=') {
                Some((k, v)) => {
                    fields.insert(k.to_string(), v.to_string());
                }
                None => head.push(tok.to_string()),
            }
        }
        lines.push(Line {
            line: i + 1,
            depth,
            head,
            fields,
        });
    }
    if lines.is_empty() {
        return Err(syntax(1, "empty certificate"));
    }
    let mut pos = 0;
    let (_, root) = parse_node(&lines, &mut pos)?;
    if pos != lines.len() {
        return Err(syntax(lines[pos].line, "trailing nodes"));
    }
    Ok(root)
}

/// Validates a certificate for `q` without re-running the decomposition. Together with the
/// clique-sum bound and monotonicity under subgraphs, success implies that the blowup of `q`
/// has no `K8` minor.
pub fn check_certificate(root: &CertNode, q: &SimpleRing) -> std::result::Result<(), String> {
    if root.ring != *q {
        return Err("root ring differs from the input".into());
    }
    check_node(root)
}

fn check_node(node: &CertNode) -> std::result::Result<(), String> {
    let q = &node.ring;
    q.check()?;
    let (n, inner) = (q.vertex_count(), q.inner().len());
    match &node.step {
        Step::Leaf(verdict) => {
            let ok = match verdict {
                Verdict::Small => q.blowup_size() <= 7,
                Verdict::EmptyInner => inner == 0 && n <= 3,
                Verdict::SmallOuter => q.outer.len() <= 2,
                Verdict::Z => {
                    let z = q.blowup().graph;
                    z.vertex_count() == 9 && z.edge_count() - least_single_loss(&z) < 28
                }
            };
            ok.then_some(())
                .ok_or(format!("leaf fails its {} verdict", verdict.tag()))
        }
        Step::Supergraph(child) => {
            if child.ring.vertex_count() != n || child.ring.outer != q.outer {
                return Err("supergraph child changes the vertices".into());
            }
            if q.graph
                .edges()
                .any(|(a, b, _)| !child.ring.graph.has_edge(a, b))
            {
                return Err("supergraph child drops an edge".into());
            }
            check_node(child)
        }
        Step::Split { deleted, parts, .. } => {
            if parts.len() != 2 {
                return Err("split needs two parts".into());
            }
            let mut count = vec![0usize; n];
            for (map, child) in parts {
                let distinct: BTreeSet<usize> = map.iter().copied().collect();
                if map.len() != child.ring.vertex_count() || distinct.len() != map.len() {
                    return Err("part map is not injective".into());
                }
                for (c, &p) in map.iter().enumerate() {
                    if p >= n {
                        return Err("part map leaves the ring".into());
                    }
                    count[p] += 1;
                    if child.ring.position(c).is_some() != q.position(p).is_some() {
                        return Err(format!("vertex {p} changes sides of the outer face"));
                    }
                }
            }
            if count.contains(&0) {
                return Err("parts do not cover the ring".into());
            }
            let shared: Vec<usize> = (0..n).filter(|&p| count[p] == 2).collect();
            let lifted: Vec<BTreeSet<(usize, usize)>> = parts
                .iter()
                .map(|(map, c)| {
                    c.ring
                        .graph
                        .edges()
                        .map(|(a, b, _)| edge_key(map[a], map[b]))
                        .collect()
                })
                .collect();
            for edges in &lifted {
                for (i, &a) in shared.iter().enumerate() {
                    if shared[i + 1..]
                        .iter()
                        .any(|&b| !edges.contains(&edge_key(a, b)))
                    {
                        return Err("separator is not a clique in a part".into());
                    }
                }
            }
            let del: BTreeSet<(usize, usize)> =
                deleted.iter().map(|&(a, b)| edge_key(a, b)).collect();
            for &(a, b) in &del {
                if count[a] != 2 || count[b] != 2 || q.graph.has_edge(a, b) {
                    return Err(format!("deleted edge {a}-{b} is not a separator non-edge"));
                }
            }
            let union: BTreeSet<(usize, usize)> = lifted.iter().flatten().copied().collect();
            let expected: BTreeSet<(usize, usize)> = q.graph.edge_keys().into_iter().collect();
            if union.difference(&del).copied().collect::<BTreeSet<_>>() != expected {
                return Err("clique-sum of the parts is not the ring".into());
            }
            parts.iter().try_for_each(|(_, c)| check_node(c))
        }
    }
}

/// Edges added at the root of a certificate, if any.
pub fn supergraph_edges(root: &CertNode) -> Vec<(usize, usize)> {
    match &root.step {
        Step::Supergraph(c) => added_edges(&root.ring.graph, &c.ring.graph),
        _ => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(n: usize, edges: &[(usize, usize)], outer: &[usize]) -> SimpleRing {
        SimpleRing::new(WeightedGraph::from_edges(n, edges), outer.to_vec()).unwrap()
    }

    #[test]
    fn z_numbers() {
        let z = z_graph();
        assert_eq!((z.vertex_count(), z.edge_count()), (9, 30));
        assert!(every_edge_in_k4(&z));
        assert!(least_single_loss(&z) >= 3);
        assert_eq!(check_complication_free(&z_reduct()).unwrap(), Verdict::Z);
        assert!(has_minor(&z, &named::complete(8)).unwrap().is_none());
    }

    #[test]
    fn complication_free_cases() {
        let tri = ring(3, &[(0, 1), (1, 2), (0, 2)], &[0, 1, 2]);
        assert_eq!(check_complication_free(&tri).unwrap(), Verdict::EmptyInner);
        let k4 = ring(
            4,
            &[(0, 1), (1, 2), (0, 2), (0, 3), (1, 3), (2, 3)],
            &[0, 1],
        );
        assert_eq!(check_complication_free(&k4).unwrap(), Verdict::SmallOuter);
        let sq = ring(4, &[(0, 1), (1, 2), (2, 3), (3, 0)], &[0, 1, 2, 3]);
        assert!(matches!(
            check_complication_free(&sq),
            Err(Error::CaseViolation(_))
        ));
        let fan = ring(
            4,
            &[(0, 1), (1, 2), (0, 2), (0, 3), (1, 3), (2, 3)],
            &[0, 1, 2],
        );
        assert!(matches!(
            check_complication_free(&fan),
            Err(Error::CaseViolation(_))
        ));
    }

    #[test]
    fn free_input_is_a_single_leaf() {
        let node = decompose(&z_reduct()).unwrap();
        assert_eq!(node.step, Step::Leaf(Verdict::Z));
    }

    #[test]
    fn one_fan_split() {
        // Outer 4-cycle, inner triangle 4 5 6; vertex 4 sees 0 1 2, vertex 5 sees 2 3, vertex
        // 6 sees 3 0.
        let edges = [
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 0),
            (4, 5),
            (5, 6),
            (4, 6),
            (4, 0),
            (4, 1),
            (4, 2),
            (5, 2),
            (5, 3),
            (6, 3),
            (6, 0),
        ];
        let q = ring(7, &edges, &[0, 1, 2, 3]);
        assert!(q.is_triangulated());
        assert_eq!(
            find_complications(&q),
            vec![Complication::ThirdNeighbor { w: 4, o: 2 }]
        );
        let node = decompose(&q).unwrap();
        assert_eq!(node.split_count(), 1);
        let Step::Split {
            kind,
            parts,
            deleted,
        } = &node.step
        else {
            panic!()
        };
        assert_eq!(
            *kind,
            SplitKind::Fan {
                w: 4,
                u1: 0,
                u2: 1,
                u3: 2
            }
        );
        assert_eq!(deleted, &vec![(0, 2)]);
        assert_eq!(parts[0].1.step, Step::Leaf(Verdict::Z));
        assert_eq!(parts[1].1.ring.blowup_size(), 7);
        check_certificate(&node, &q).unwrap();
    }

    #[test]
    fn one_chord_split_partitions_the_outer_face() {
        let mut edges: Vec<(usize, usize)> = (0..6).map(|i| edge_key(i, (i + 1) % 6)).collect();
        edges.extend([(0, 2), (0, 3), (0, 4)]);
        let q = ring(6, &edges, &[0, 1, 2, 3, 4, 5]);
        let node = decompose(&q).unwrap();
        let Step::Split { kind, parts, .. } = &node.step else {
            panic!()
        };
        assert_eq!(*kind, SplitKind::Chord { u: 0, v: 2 });
        let outer: Vec<BTreeSet<usize>> = parts
            .iter()
            .map(|(m, c)| c.ring.outer.iter().map(|&x| m[x]).collect())
            .collect();
        assert_eq!(outer[0], BTreeSet::from([0, 1, 2]));
        assert_eq!(outer[1], BTreeSet::from([0, 2, 3, 4, 5]));
        check_certificate(&node, &q).unwrap();
    }

    #[test]
    fn certificate_round_trip_and_tampering() {
        let mut edges: Vec<(usize, usize)> = (0..7).map(|i| edge_key(i, (i + 1) % 7)).collect();
        edges.extend([(7, 8), (8, 9), (7, 9), (7, 0), (7, 1), (7, 2), (7, 3)]);
        let q = ring(10, &edges, &[0, 1, 2, 3, 4, 5, 6]);
        let cert = certify_simple_ring_blowup(&q).unwrap();
        assert!(cert.split_count() >= 2);
        check_certificate(&cert, &q).unwrap();
        let text = serialize_certificate(&cert);
        let back = parse_certificate(&text).unwrap();
        assert_eq!(back, cert);
        let tampered = text.replacen("verdict=z", "verdict=small", 1).replacen(
            "verdict=empty-inner",
            "verdict=small-outer",
            1,
        );
        if tampered != text {
            assert!(check_certificate(&parse_certificate(&tampered).unwrap(), &q).is_err());
        }
        let first_split = text.lines().position(|l| l.contains("split")).unwrap();
        let dropped: Vec<String> = text
            .lines()
            .enumerate()
            .filter(|&(i, _)| i != first_split + 1)
            .map(|(_, l)| l.to_string())
            .collect();
        assert!(parse_certificate(&dropped.join("\n"))
            .map_or(true, |c| check_certificate(&c, &q).is_err()));
    }
}
