//! Graphs together with the combinatorics of a drawing: for every edge, the ordered list of
//! crossings met when walking from its first endpoint to its second.

use num_traits::One;

use super::search::SignCrossingGadget;
use super::signature::Stub;
use crate::error::{Error, Result};
use crate::format::format_rational;
use crate::graph::{Rational, WeightedGraph};

pub type EdgeId = usize;
pub type CrossingId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrawnEdge {
    pub u: usize,
    pub v: usize,
    pub weight: Rational,
    /// Crossings in order from `u` to `v`.
    pub route: Vec<CrossingId>,
    /// Identity of the edge this piece descends from, if any. Gadget edges have none.
    pub origin: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub a: EdgeId,
    pub b: EdgeId,
}

/// A crossing located on both edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossingSite {
    pub crossing: CrossingId,
    pub e: EdgeId,
    pub f: EdgeId,
    /// Index of the crossing in the route of `e`.
    pub pos_e: usize,
    pub pos_f: usize,
}

/// Record of one gadget insertion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Insertion {
    pub origins: (Option<usize>, Option<usize>),
    /// Gadget vertices in the order of the gadget's own numbering.
    pub vertices: Vec<usize>,
    /// New stub edges `e1, e2, f1, f2`.
    pub stubs: [EdgeId; 4],
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DrawnGraph {
    vertex_count: usize,
    edges: Vec<Option<DrawnEdge>>,
    crossings: Vec<Option<Crossing>>,
}

impl DrawnGraph {
    pub fn new(vertex_count: usize) -> Self {
        DrawnGraph {
            vertex_count,
            ..Default::default()
        }
    }

    /// A crossing-free drawing of `g`; edge ids follow the sorted edge order and each edge's
    /// origin is its own id.
    pub fn from_graph(g: &WeightedGraph) -> Self {
        let mut d = DrawnGraph::new(g.vertex_count());
        for (u, v, w) in g.edges() {
            let id = d.edges.len();
            d.edges.push(Some(DrawnEdge {
                u,
                v,
                weight: w.clone(),
                route: Vec::new(),
                origin: Some(id),
            }));
        }
        d
    }

    /// Assembles a drawing from explicit routes. Every crossing must occur exactly once on each
    /// of its two edges, and on no other edge.
    pub fn from_parts(
        vertex_count: usize,
        edges: Vec<DrawnEdge>,
        crossings: Vec<Crossing>,
    ) -> Result<Self> {
        let mut d = DrawnGraph::new(vertex_count);
        for e in edges {
            let id = d.add_edge(e.u, e.v, e.weight, e.origin)?;
            d.edges[id].as_mut().unwrap().route = e.route;
        }
        let mut seen = vec![Vec::new(); crossings.len()];
        for id in d.edge_ids().collect::<Vec<_>>() {
            for &c in &d.edge(id).unwrap().route {
                let slot = seen.get_mut(c).ok_or_else(|| {
                    Error::DegenerateDrawing(format!(
                        "edge {id} routes through unknown crossing {c}"
                    ))
                })?;
                slot.push(id);
            }
        }
        for (c, (x, on)) in crossings.iter().zip(&seen).enumerate() {
            let mut want = vec![x.a, x.b];
            want.sort_unstable();
            if on != &want || x.a == x.b {
                return Err(Error::DegenerateDrawing(format!(
                    "crossing {c} lies on edges {on:?}, declared {want:?}"
                )));
            }
        }
        d.crossings = crossings.into_iter().map(Some).collect();
        Ok(d)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn add_vertex(&mut self) -> usize {
        self.vertex_count += 1;
        self.vertex_count - 1
    }

    pub fn add_edge(
        &mut self,
        u: usize,
        v: usize,
        weight: Rational,
        origin: Option<usize>,
    ) -> Result<EdgeId> {
        for x in [u, v] {
            if x >= self.vertex_count {
                return Err(Error::VertexOutOfRange {
                    vertex: x,
                    count: self.vertex_count,
                });
            }
        }
        if u == v {
            return Err(Error::Loop(u));
        }
        self.edges.push(Some(DrawnEdge {
            u,
            v,
            weight,
            route: Vec::new(),
            origin,
        }));
        Ok(self.edges.len() - 1)
    }

    pub fn edge(&self, id: EdgeId) -> Option<&DrawnEdge> {
        self.edges.get(id).and_then(Option::as_ref)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).filter(|&i| self.edges[i].is_some())
    }

    pub fn crossing(&self, id: CrossingId) -> Option<Crossing> {
        self.crossings.get(id).copied().flatten()
    }

    pub fn crossing_ids(&self) -> impl Iterator<Item = CrossingId> + '_ {
        (0..self.crossings.len()).filter(|&i| self.crossings[i].is_some())
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.iter().flatten().count()
    }

    /// Appends a crossing at the end of both routes.
    pub fn add_crossing(&mut self, a: EdgeId, b: EdgeId) -> Result<CrossingId> {
        self.add_crossing_at(a, b, None, None)
    }

    /// Adds a crossing between two distinct edges at the given route positions (end when
    /// `None`). Edges with a common endpoint may cross; no matching uses both.
    pub fn add_crossing_at(
        &mut self,
        a: EdgeId,
        b: EdgeId,
        pos_a: Option<usize>,
        pos_b: Option<usize>,
    ) -> Result<CrossingId> {
        if self.edge(a).is_none() || self.edge(b).is_none() {
            return Err(Error::DegenerateDrawing(format!("unknown edge {a} or {b}")));
        }
        if a == b {
            return Err(Error::DegenerateDrawing(format!(
                "edge {a} cannot cross itself"
            )));
        }
        let id = self.crossings.len();
        self.crossings.push(Some(Crossing { a, b }));
        for (e, pos) in [(a, pos_a), (b, pos_b)] {
            let route = &mut self.edges[e].as_mut().unwrap().route;
            let p = pos.unwrap_or(route.len()).min(route.len());
            route.insert(p, id);
        }
        Ok(id)
    }

    pub fn site(&self, crossing: CrossingId) -> Option<CrossingSite> {
        let c = self.crossing(crossing)?;
        let pos = |e: EdgeId| {
            self.edge(e)
                .and_then(|x| x.route.iter().position(|&k| k == crossing))
        };
        Some(CrossingSite {
            crossing,
            e: c.a,
            f: c.b,
            pos_e: pos(c.a)?,
            pos_f: pos(c.b)?,
        })
    }

    /// The underlying weighted graph, forgetting the drawing.
    pub fn graph(&self) -> WeightedGraph {
        let mut g = WeightedGraph::new(self.vertex_count);
        for e in self.edges.iter().flatten() {
            g.add_edge(e.u, e.v, e.weight.clone())
                .expect("drawn graphs stay simple");
        }
        g
    }

    /// Replaces the crossing by a copy of `gadget`; see [`insert_gadget`].
    pub fn insert_gadget_in_place(
        &mut self,
        crossing: CrossingId,
        gadget: &SignCrossingGadget,
    ) -> Result<Insertion> {
        let site = self
            .site(crossing)
            .ok_or_else(|| Error::DegenerateDrawing(format!("unknown crossing {crossing}")))?;
        for id in [site.e, site.f] {
            let e = self.edge(id).unwrap();
            if !e.weight.is_one() {
                return Err(Error::WeightedCrossingEdge(
                    e.u,
                    e.v,
                    format_rational(&e.weight),
                ));
            }
        }
        let base = self.vertex_count;
        self.vertex_count += gadget.size();
        let vertices: Vec<usize> = (base..self.vertex_count).collect();
        for (u, v, w) in gadget.graph.edges() {
            self.edges.push(Some(DrawnEdge {
                u: base + u,
                v: base + v,
                weight: w.clone(),
                route: Vec::new(),
                origin: None,
            }));
        }
        self.crossings[crossing] = None;
        let e = self.edges[site.e].take().unwrap();
        let f = self.edges[site.f].take().unwrap();
        let at = |s: Stub| base + gadget.attachment(s);
        let (e1, e2) = self.split(e, site.pos_e, site.e, at(Stub::E1), at(Stub::E2));
        let (f1, f2) = self.split(f, site.pos_f, site.f, at(Stub::F1), at(Stub::F2));
        Ok(Insertion {
            origins: (
                self.edges[e1].as_ref().unwrap().origin,
                self.edges[f1].as_ref().unwrap().origin,
            ),
            vertices,
            stubs: [e1, e2, f1, f2],
        })
    }

    /// Splits `edge` (already removed from the table) at route index `pos` into `u - x1` and
    /// `x2 - v`, moving the remaining crossings onto the correct piece.
    fn split(
        &mut self,
        edge: DrawnEdge,
        pos: usize,
        old_id: EdgeId,
        x1: usize,
        x2: usize,
    ) -> (EdgeId, EdgeId) {
        let before = edge.route[..pos].to_vec();
        let after = edge.route[pos + 1..].to_vec();
        let id1 = self.edges.len();
        let id2 = id1 + 1;
        for (route, new_id) in [(&before, id1), (&after, id2)] {
            for &c in route {
                let rec = self.crossings[c].as_mut().expect("live crossing");
                if rec.a == old_id {
                    rec.a = new_id;
                } else {
                    debug_assert_eq!(rec.b, old_id);
                    rec.b = new_id;
                }
            }
        }
        self.edges.push(Some(DrawnEdge {
            u: edge.u,
            v: x1,
            weight: Rational::one(),
            route: before,
            origin: edge.origin,
        }));
        self.edges.push(Some(DrawnEdge {
            u: x2,
            v: edge.v,
            weight: Rational::one(),
            route: after,
            origin: edge.origin,
        }));
        (id1, id2)
    }

    /// Replaces `u - v` of weight `w` by the path `u - x - y - v` with weights `w, 1, 1`, moving
    /// all crossings onto `y - v`. The matching sum is unchanged and the crossed piece has weight 1.
    pub fn move_weight_off_crossings(&mut self, id: EdgeId) -> Result<EdgeId> {
        let edge = self
            .edges
            .get_mut(id)
            .and_then(Option::take)
            .ok_or_else(|| Error::DegenerateDrawing(format!("unknown edge {id}")))?;
        let x = self.add_vertex();
        let y = self.add_vertex();
        self.edges.push(Some(DrawnEdge {
            u: edge.u,
            v: x,
            weight: edge.weight.clone(),
            route: Vec::new(),
            origin: None,
        }));
        self.edges.push(Some(DrawnEdge {
            u: x,
            v: y,
            weight: Rational::one(),
            route: Vec::new(),
            origin: None,
        }));
        let new_id = self.edges.len();
        for &c in &edge.route {
            let rec = self.crossings[c].as_mut().unwrap();
            if rec.a == id {
                rec.a = new_id;
            } else {
                rec.b = new_id;
            }
        }
        self.edges.push(Some(DrawnEdge {
            u: y,
            v: edge.v,
            weight: Rational::one(),
            route: edge.route,
            origin: edge.origin,
        }));
        Ok(new_id)
    }
}

/// Copy-on-write form of [`DrawnGraph::insert_gadget_in_place`]: edge `e` is split into
/// `e1` (towards its first endpoint) and `e2`, likewise `f`, and the gadget is spliced in.
pub fn insert_gadget(
    g: &DrawnGraph,
    crossing: CrossingId,
    gadget: &SignCrossingGadget,
) -> Result<DrawnGraph> {
    let mut out = g.clone();
    out.insert_gadget_in_place(crossing, gadget)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::count_pm_exact;
    use crate::graph::{named, rat};

    fn x_graph() -> (DrawnGraph, CrossingId) {
        let g = WeightedGraph::from_edges(4, &[(0, 2), (1, 3)]);
        let mut d = DrawnGraph::from_graph(&g);
        let c = d.add_crossing(0, 1).unwrap();
        (d, c)
    }

    #[test]
    fn x_graph_gets_a_sign() {
        let (d, c) = x_graph();
        let gadget = SignCrossingGadget::shipped();
        let out = insert_gadget(&d, c, &gadget).unwrap();
        assert_eq!(out.crossing_count(), 0);
        assert_eq!(out.vertex_count(), 4 + gadget.size());
        assert_eq!(count_pm_exact(&out.graph()), rat(-1));
    }

    #[test]
    fn weighted_crossing_edges_are_rejected_until_moved() {
        let mut g = WeightedGraph::from_edges(4, &[(1, 3)]);
        g.add_edge(0, 2, rat(3)).unwrap();
        let mut d = DrawnGraph::from_graph(&g);
        let c = d.add_crossing(0, 1).unwrap();
        let gadget = SignCrossingGadget::shipped();
        assert!(matches!(
            insert_gadget(&d, c, &gadget),
            Err(Error::WeightedCrossingEdge(0, 2, _))
        ));
        let before = count_pm_exact(&d.graph());
        d.move_weight_off_crossings(0).unwrap();
        assert_eq!(count_pm_exact(&d.graph()), before);
        d.insert_gadget_in_place(c, &gadget).unwrap();
        assert_eq!(count_pm_exact(&d.graph()), rat(-3));
    }

    #[test]
    fn other_crossings_follow_their_stub() {
        // Edge 0-5 crosses 1-2 and then 3-4.
        let g = WeightedGraph::from_edges(6, &[(0, 5), (1, 2), (3, 4)]);
        let mut d = DrawnGraph::from_graph(&g);
        let e = 0;
        let c1 = d.add_crossing(e, 1).unwrap();
        let c2 = d.add_crossing(e, 2).unwrap();
        let gadget = SignCrossingGadget::shipped();
        let ins = d.insert_gadget_in_place(c1, &gadget).unwrap();
        let site = d.site(c2).unwrap();
        assert_eq!(site.e, ins.stubs[1]);
        assert_eq!(d.edge(ins.stubs[1]).unwrap().v, 5);
    }

    #[test]
    fn adjacent_edges_may_cross() {
        let g = named::cycle(4);
        let mut d = DrawnGraph::from_graph(&g);
        assert!(d.add_crossing(0, 0).is_err());
        d.add_crossing(0, 1).unwrap();
        let out = insert_gadget(&d, 0, &SignCrossingGadget::shipped()).unwrap();
        assert_eq!(count_pm_exact(&out.graph()), rat(2));
    }
}
