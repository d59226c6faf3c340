//! Ring blowups: construction from a circle drawing, structural verification, file format.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_traits::One;

use super::drawing::{
    draw_on_circle_seeded, enumerate_crossings, points_right, ChordDrawing, CrossingInventory,
};
use super::geometry::{angle_cmp, ccw_from, param_along, ray_hit, Point};
use crate::error::{Error, Result};
use crate::format::{content_lines, parse_graph_lines, serialize_graph};
use crate::gadgets::{has_outer_order, Crossing, DrawnEdge, DrawnGraph, SignCrossingGadget};
use crate::graph::{Rational, WeightedGraph};

/// A graph contained in the blowup of a plane reduct.
///
/// `projection[v]` is the reduct vertex that graph vertex `v` is a clone of. Reduct vertices
/// with two preimages are blowup vertices and must lie on the outer face, whose cyclic order is
/// `outer`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingBlowup {
    pub graph: WeightedGraph,
    pub reduct: WeightedGraph,
    pub outer: Vec<usize>,
    pub projection: Vec<usize>,
}

impl RingBlowup {
    /// A plane graph read as its own reduct.
    pub fn identity(graph: WeightedGraph, outer: Vec<usize>) -> Self {
        let n = graph.vertex_count();
        RingBlowup {
            reduct: graph.unweighted_copy(),
            graph,
            outer,
            projection: (0..n).collect(),
        }
    }

    /// The blowup of `reduct` at the listed outer vertices, with every edge present.
    pub fn full_blowup(reduct: &WeightedGraph, outer: Vec<usize>, blown: &[usize]) -> Self {
        let n = reduct.vertex_count();
        let mut projection: Vec<usize> = (0..n).collect();
        let mut clone_of = vec![None; n];
        for &r in blown {
            clone_of[r] = Some(projection.len());
            projection.push(r);
        }
        let mut graph = WeightedGraph::new(projection.len());
        let copies = |r: usize| -> Vec<usize> { std::iter::once(r).chain(clone_of[r]).collect() };
        for (a, b, _) in reduct.edges() {
            for x in copies(a) {
                for y in copies(b) {
                    graph.add_edge(x, y, Rational::one()).unwrap();
                }
            }
        }
        for &r in blown {
            graph
                .add_edge(r, clone_of[r].unwrap(), Rational::one())
                .unwrap();
        }
        RingBlowup {
            graph,
            reduct: reduct.unweighted_copy(),
            outer,
            projection,
        }
    }

    /// Graph vertices mapped to each reduct vertex.
    pub fn preimages(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.reduct.vertex_count()];
        for (v, &r) in self.projection.iter().enumerate() {
            if r < out.len() {
                out[r].push(v);
            }
        }
        out
    }

    /// `(reduct vertex, clone, clone)` for every blowup vertex.
    pub fn clone_pairs(&self) -> Vec<(usize, usize, usize)> {
        self.preimages()
            .iter()
            .enumerate()
            .filter(|(_, p)| p.len() == 2)
            .map(|(r, p)| (r, p[0], p[1]))
            .collect()
    }

    /// Graph vertices that have a clone partner.
    pub fn blowup_vertices(&self) -> BTreeSet<usize> {
        self.clone_pairs()
            .into_iter()
            .flat_map(|(_, a, b)| [a, b])
            .collect()
    }

    pub fn serialize(&self) -> String {
        let mut s = serialize_graph(&self.graph);
        s.push_str("reduct\n");
        s.push_str(&serialize_graph(&self.reduct));
        let outer: Vec<String> = self.outer.iter().map(|v| v.to_string()).collect();
        writeln!(s, "outer {}", outer.join(" ")).unwrap();
        s.push_str("clones\n");
        for (r, pre) in self.preimages().iter().enumerate() {
            let pre: Vec<String> = pre.iter().map(|v| v.to_string()).collect();
            if pre.is_empty() {
                writeln!(s, "{r}:").unwrap();
            } else {
                writeln!(s, "{r}: {}", pre.join(" ")).unwrap();
            }
        }
        s
    }

    /// Inverse of [`RingBlowup::serialize`]. Structural validity is checked separately by
    /// [`verify_ring_blowup`].
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text).peekable();
        let graph = parse_graph_lines(&mut lines)?;
        expect_keyword(&mut lines, "reduct")?;
        let reduct = parse_graph_lines(&mut lines)?;
        let (line, outer_line) = lines.next().ok_or(Error::Syntax {
            line: 0,
            msg: "missing outer line".into(),
        })?;
        let mut toks = outer_line.split_whitespace();
        if toks.next() != Some("outer") {
            return Err(Error::Syntax {
                line,
                msg: "expected \"outer\"".into(),
            });
        }
        let outer = toks
            .map(|t| parse_index(t, line))
            .collect::<Result<Vec<_>>>()?;
        expect_keyword(&mut lines, "clones")?;
        let mut projection = vec![None; graph.vertex_count()];
        for (line, text) in lines {
            let (r, rest) = text.split_once(':').ok_or(Error::Syntax {
                line,
                msg: "expected \"r: a [b]\"".into(),
            })?;
            let r = parse_index(r.trim(), line)?;
            if r >= reduct.vertex_count() {
                return Err(Error::Semantic {
                    line,
                    msg: format!("reduct vertex {r} out of range"),
                });
            }
            for t in rest.split_whitespace() {
                let v = parse_index(t, line)?;
                match projection.get_mut(v) {
                    Some(slot @ None) => *slot = Some(r),
                    Some(Some(_)) => {
                        return Err(Error::Semantic {
                            line,
                            msg: format!("graph vertex {v} listed twice"),
                        })
                    }
                    None => {
                        return Err(Error::Semantic {
                            line,
                            msg: format!("graph vertex {v} out of range"),
                        })
                    }
                }
            }
        }
        let projection = projection
            .into_iter()
            .enumerate()
            .map(|(v, r)| {
                r.ok_or(Error::Semantic {
                    line: 0,
                    msg: format!("graph vertex {v} has no reduct vertex"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RingBlowup {
            graph,
            reduct,
            outer,
            projection,
        })
    }
}

fn expect_keyword<'a, I: Iterator<Item = (usize, &'a str)>>(lines: &mut I, kw: &str) -> Result<()> {
    match lines.next() {
        Some((_, t)) if t == kw => Ok(()),
        Some((line, t)) => Err(Error::Syntax {
            line,
            msg: format!("expected {kw:?}, found {t:?}"),
        }),
        None => Err(Error::Syntax {
            line: 0,
            msg: format!("missing {kw:?} section"),
        }),
    }
}

fn parse_index(t: &str, line: usize) -> Result<usize> {
    t.parse().map_err(|_| Error::Syntax {
        line,
        msg: format!("bad vertex {t:?}"),
    })
}

/// Checks the ring-blowup contract; the error string names the first violation.
pub fn check_ring_blowup(r: &RingBlowup) -> std::result::Result<(), String> {
    let n = r.graph.vertex_count();
    let rn = r.reduct.vertex_count();
    if r.projection.len() != n {
        return Err(format!(
            "projection has {} entries for {n} vertices",
            r.projection.len()
        ));
    }
    if let Some(v) = r.projection.iter().position(|&x| x >= rn) {
        return Err(format!("vertex {v} projects outside the reduct"));
    }
    let outer: BTreeSet<usize> = r.outer.iter().copied().collect();
    if outer.len() != r.outer.len() || outer.iter().any(|&v| v >= rn) {
        return Err("outer order repeats a vertex or leaves the reduct".into());
    }
    for (x, pre) in r.preimages().iter().enumerate() {
        if pre.len() > 2 {
            return Err(format!("reduct vertex {x} has {} clones", pre.len()));
        }
        if pre.len() == 2 && !outer.contains(&x) {
            return Err(format!("blowup vertex {x} is not on the outer face"));
        }
    }
    for (a, b, _) in r.graph.edges() {
        let (pa, pb) = (r.projection[a], r.projection[b]);
        if pa != pb && !r.reduct.has_edge(pa, pb) {
            return Err(format!(
                "edge {a}-{b} maps to non-edge {pa}-{pb} of the reduct"
            ));
        }
    }
    if !has_outer_order(&r.reduct, &r.outer) {
        return Err("reduct has no planar embedding with the declared outer face".into());
    }
    Ok(())
}

/// True when `r.graph` is a subgraph of the blowup of a plane reduct under the clone map.
pub fn verify_ring_blowup(r: &RingBlowup) -> bool {
    check_ring_blowup(r).is_ok()
}

/// One inner crossing between a bent strand and an edge met by its segment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct StrandCrossing {
    /// Index of the original crossing.
    pub crossing: usize,
    /// Position of the crossed edge along the segment, nearest first.
    pub depth: usize,
    /// Lane of the strand, 1 to 4 from left to right looking outward.
    pub lane: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetRecord {
    pub at: StrandCrossing,
    /// Original edge indices of the two crossing pieces.
    pub origins: (usize, usize),
}

/// Everything produced on the way to a ring blowup.
#[derive(Clone, Debug)]
pub struct RingBlowupBuild {
    pub drawing: ChordDrawing,
    pub inventory: CrossingInventory,
    pub blowup: RingBlowup,
    pub gadgets: Vec<GadgetRecord>,
    /// Crossings left in the drawing after gadget insertion.
    pub residual_crossings: usize,
    pub gadget_size: usize,
}

impl RingBlowupBuild {
    /// `n + 4·C(m,2) + gadget_size·4·m·C(m,2)`, the vertex bound for `s ≤ C(m,2)` crossings
    /// each met by at most `m` edges.
    pub fn vertex_bound(&self) -> usize {
        vertex_bound(
            self.drawing.graph.vertex_count(),
            self.drawing.graph.edge_count(),
            self.gadget_size,
        )
    }
}

pub fn vertex_bound(n: usize, m: usize, gadget_size: usize) -> usize {
    let pairs = m * m.saturating_sub(1) / 2;
    n + 4 * pairs + gadget_size * 4 * m * pairs
}

/// Reduces an unweighted graph to a ring blowup with weights ±1 and the same number of
/// perfect matchings, using perturbation seed 1.
pub fn build_ring_blowup(g: &WeightedGraph) -> Result<RingBlowup> {
    Ok(build_ring_blowup_seeded(g, 1)?.blowup)
}

pub fn build_ring_blowup_seeded(g: &WeightedGraph, seed: u64) -> Result<RingBlowupBuild> {
    if !g.is_unweighted() {
        return Err(Error::WeightedInput);
    }
    let drawing = draw_on_circle_seeded(g, seed)?;
    let inventory = enumerate_crossings(&drawing)?;
    construct(drawing, inventory, &SignCrossingGadget::shipped())
}

#[derive(Clone, Copy, Debug)]
enum Token {
    Cross(StrandCrossing),
    Slot(usize, usize),
}

/// Half-edges at a crossing, sorted counter-clockwise from the outward direction, occupy the
/// corridor lanes 1 to 4 from left to right: the two pointing inward pass between the crossing
/// point and the two pointing outward.
fn construct(
    drawing: ChordDrawing,
    inventory: CrossingInventory,
    gadget: &SignCrossingGadget,
) -> Result<RingBlowupBuild> {
    let g = &drawing.graph;
    let n = g.vertex_count();
    let edges = &inventory.edges;
    let pts = &drawing.points;
    let dir = |e: usize| pts[edges[e].1].sub(&pts[edges[e].0]);

    // Lane of each half-edge at each crossing, keyed by (crossing, edge, outgoing).
    let mut lane: BTreeMap<(usize, usize, bool), usize> = BTreeMap::new();
    for (k, c) in inventory.crossings.iter().enumerate() {
        let mut halves = vec![
            (dir(c.e), c.e, true),
            (dir(c.e).neg(), c.e, false),
            (dir(c.f), c.f, true),
            (dir(c.f).neg(), c.f, false),
        ];
        halves.sort_by(|a, b| ccw_from(&c.point, &a.0, &b.0));
        for (i, (_, e, out)) in halves.into_iter().enumerate() {
            lane.insert((k, e, out), i + 1);
        }
    }

    // Walk every chord from its first endpoint, listing bends and corridor traversals.
    let slot = |k: usize, l: usize| n + 4 * k + (l - 1);
    let vertex_count = n + 4 * inventory.len();
    let mut pieces: Vec<(usize, usize, usize, Vec<StrandCrossing>)> = Vec::new();
    for (ei, &(a, b)) in edges.iter().enumerate() {
        let (pa, pb) = (&pts[a], &pts[b]);
        let mut events: Vec<(Rational, usize, Option<usize>)> = Vec::new();
        for (k, c) in inventory.crossings.iter().enumerate() {
            if c.e == ei || c.f == ei {
                events.push((param_along(&c.point, pa, pb), k, None));
            }
            for (j, &h) in c.crossed.iter().enumerate() {
                if h == ei {
                    let (_, mu) = ray_hit(&c.point, pa, pb).expect("segment meets the edge");
                    events.push((mu, k, Some(j)));
                }
            }
        }
        events.sort_by(|x, y| x.0.cmp(&y.0));
        let mut tokens = Vec::new();
        for (_, k, depth) in events {
            let m = inventory.crossings[k].crossed.len();
            match depth {
                Some(depth) => {
                    let right = points_right(&inventory.crossings[k].point, &pb.sub(pa));
                    let order: Vec<usize> = if right {
                        vec![1, 2, 3, 4]
                    } else {
                        vec![4, 3, 2, 1]
                    };
                    tokens.extend(order.into_iter().map(|l| {
                        Token::Cross(StrandCrossing {
                            crossing: k,
                            depth,
                            lane: l,
                        })
                    }));
                }
                None => {
                    let l_in = lane[&(k, ei, false)];
                    let l_out = lane[&(k, ei, true)];
                    tokens.extend((0..m).map(|depth| {
                        Token::Cross(StrandCrossing {
                            crossing: k,
                            depth,
                            lane: l_in,
                        })
                    }));
                    tokens.push(Token::Slot(k, l_in));
                    tokens.push(Token::Slot(k, l_out));
                    tokens.extend((0..m).rev().map(|depth| {
                        Token::Cross(StrandCrossing {
                            crossing: k,
                            depth,
                            lane: l_out,
                        })
                    }));
                }
            }
        }
        let mut start = a;
        let mut route = Vec::new();
        for t in tokens {
            match t {
                Token::Cross(x) => route.push(x),
                Token::Slot(k, l) => {
                    let v = slot(k, l);
                    pieces.push((start, v, ei, std::mem::take(&mut route)));
                    start = v;
                }
            }
        }
        pieces.push((start, b, ei, route));
    }

    // Number the strand crossings and assemble the drawing.
    let mut ids: BTreeMap<StrandCrossing, Vec<usize>> = BTreeMap::new();
    for (p, piece) in pieces.iter().enumerate() {
        for x in &piece.3 {
            ids.entry(*x).or_default().push(p);
        }
    }
    let labels: Vec<StrandCrossing> = ids.keys().copied().collect();
    let index: BTreeMap<StrandCrossing, usize> =
        labels.iter().enumerate().map(|(i, x)| (*x, i)).collect();
    let mut crossings = Vec::with_capacity(labels.len());
    for (x, on) in &ids {
        if on.len() != 2 || on[0] == on[1] {
            return Err(Error::DegenerateDrawing(format!(
                "strand crossing {x:?} lies on pieces {on:?}"
            )));
        }
        crossings.push(Crossing { a: on[0], b: on[1] });
    }
    let drawn_edges = pieces
        .iter()
        .map(|(u, v, ei, route)| DrawnEdge {
            u: *u,
            v: *v,
            weight: Rational::one(),
            route: route.iter().map(|x| index[x]).collect(),
            origin: Some(*ei),
        })
        .collect();
    let mut drawn = DrawnGraph::from_parts(vertex_count, drawn_edges, crossings)?;

    let mut gadgets = Vec::with_capacity(labels.len());
    for (cid, at) in labels.iter().enumerate() {
        let ins = drawn.insert_gadget_in_place(cid, gadget)?;
        let (Some(x), Some(y)) = ins.origins else {
            unreachable!("strand pieces carry their origin");
        };
        gadgets.push(GadgetRecord {
            at: *at,
            origins: (x, y),
        });
    }
    let residual_crossings = drawn.crossing_count();
    let graph = drawn.graph();

    // Reduct: merge lanes 1, 2 and lanes 3, 4 of every corridor.
    let mut merged: Vec<usize> = (0..graph.vertex_count()).collect();
    for k in 0..inventory.len() {
        merged[slot(k, 2)] = slot(k, 1);
        merged[slot(k, 4)] = slot(k, 3);
    }
    let mut compact = vec![usize::MAX; graph.vertex_count()];
    let mut next = 0;
    for v in 0..graph.vertex_count() {
        if merged[v] == v {
            compact[v] = next;
            next += 1;
        }
    }
    let projection: Vec<usize> = merged.iter().map(|&r| compact[r]).collect();
    let mut reduct = WeightedGraph::new(next);
    for (u, v, _) in graph.edges() {
        let (a, b) = (projection[u], projection[v]);
        if a != b {
            reduct.ensure_edge(a, b)?;
        }
    }

    // Outer order: circle vertices and corridor blocks by angle, each block as B then A.
    let mut marks: Vec<(Point, Vec<usize>)> = (0..n).map(|v| (pts[v].clone(), vec![v])).collect();
    for (k, c) in inventory.crossings.iter().enumerate() {
        marks.push((c.point.clone(), vec![slot(k, 3), slot(k, 1)]));
    }
    marks.sort_by(|a, b| angle_cmp(&a.0, &b.0));
    let outer = marks
        .into_iter()
        .flat_map(|(_, vs)| vs)
        .map(|v| projection[v])
        .collect();

    Ok(RingBlowupBuild {
        gadget_size: gadget.size(),
        drawing,
        inventory,
        blowup: RingBlowup {
            graph,
            reduct,
            outer,
            projection,
        },
        gadgets,
        residual_crossings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::count_pm_exact;
    use crate::graph::{named, rat};
    use num_traits::Signed;

    fn check(g: &WeightedGraph) -> RingBlowupBuild {
        let b = build_ring_blowup_seeded(g, 1).unwrap();
        assert_eq!(check_ring_blowup(&b.blowup), Ok(()));
        assert_eq!(count_pm_exact(&b.blowup.graph), count_pm_exact(g));
        assert_eq!(b.residual_crossings, 0);
        assert!(b.blowup.graph.vertex_count() <= b.vertex_bound());
        b
    }

    #[test]
    fn planar_drawings_are_left_alone() {
        let g = named::cycle(6);
        let b = check(&g);
        assert_eq!(b.blowup.graph, g);
        assert_eq!(b.blowup.reduct, g);
        assert!(b.blowup.clone_pairs().is_empty());
    }

    #[test]
    fn small_anchors() {
        assert_eq!(
            count_pm_exact(&check(&named::complete(4)).blowup.graph),
            rat(3)
        );
        assert_eq!(
            count_pm_exact(&check(&named::complete_bipartite(3, 3)).blowup.graph),
            rat(6)
        );
        assert_eq!(count_pm_exact(&check(&named::cube()).blowup.graph), rat(9));
    }

    #[test]
    fn corridor_crossings_pair_up() {
        let b = check(&named::complete_bipartite(3, 3));
        let mut per: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
        for r in &b.gadgets {
            let c = &b.inventory.crossings[r.at.crossing];
            let g = c.crossed[r.at.depth];
            let bent = if r.origins.0 == g {
                r.origins.1
            } else {
                r.origins.0
            };
            *per.entry((r.at.crossing, r.at.depth, bent)).or_default() += 1;
            assert!(bent == c.e || bent == c.f);
        }
        assert!(per.values().all(|&x| x == 2));
        assert_eq!(per.len(), 2 * b.inventory.segment_crossings());
    }

    #[test]
    fn negative_edges_avoid_blowup_vertices() {
        let b = check(&named::complete(5).delete_vertices(&[]).unwrap().0);
        let blown = b.blowup.blowup_vertices();
        assert!(!blown.is_empty());
        for (u, v, w) in b.blowup.graph.edges() {
            assert!(w == &rat(1) || w == &rat(-1));
            if w.is_negative() {
                assert!(!blown.contains(&u) && !blown.contains(&v));
            }
        }
    }

    #[test]
    fn file_round_trip() {
        let r = build_ring_blowup(&named::complete(4)).unwrap();
        let back = RingBlowup::parse(&r.serialize()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn verifier_rejects_k5_as_its_own_reduct() {
        let r = RingBlowup::identity(named::complete(5), vec![0, 1, 2, 3, 4]);
        assert!(!verify_ring_blowup(&r));
    }

    #[test]
    fn full_blowups_verify() {
        let r = RingBlowup::full_blowup(&named::cycle(5), vec![0, 1, 2, 3, 4], &[0, 2, 3]);
        assert_eq!(check_ring_blowup(&r), Ok(()));
        assert_eq!(r.graph.vertex_count(), 8);
    }

    #[test]
    fn weighted_input_is_rejected() {
        let mut g = named::complete(4);
        g.set_weight(0, 1, rat(2)).unwrap();
        assert_eq!(build_ring_blowup(&g).unwrap_err(), Error::WeightedInput);
    }
}
