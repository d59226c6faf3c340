//! Circle drawings and their crossings.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::geometry::{
    angle_cmp, cross, half_angle_parameter, line_intersection, pi, ray_hit, Point,
};
use crate::error::{Error, Result};
use crate::graph::{rat, Rational, WeightedGraph};

pub const MAX_PLACEMENT_ATTEMPTS: usize = 1000;
const EXHAUSTIVE_ORDER_LIMIT: usize = 9;

/// Vertices in convex position on the unit circle, edges drawn as straight chords.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChordDrawing {
    pub graph: WeightedGraph,
    /// Vertices in counter-clockwise order.
    pub order: Vec<usize>,
    /// Half-angle parameter of each vertex.
    pub params: Vec<Rational>,
    pub points: Vec<Point>,
}

impl ChordDrawing {
    /// Position of each vertex in [`ChordDrawing::order`].
    pub fn positions(&self) -> Vec<usize> {
        inverse(&self.order)
    }

    pub fn crossing_pairs(&self) -> Vec<(usize, usize)> {
        let edges = self.graph.edge_keys();
        crossing_pairs(&edges, &self.positions())
    }

    pub fn crossing_count(&self) -> usize {
        self.crossing_pairs().len()
    }
}

fn inverse(order: &[usize]) -> Vec<usize> {
    let mut pos = vec![0; order.len()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    pos
}

fn interleave(e: (usize, usize), f: (usize, usize), pos: &[usize]) -> bool {
    let (a, b) = (pos[e.0].min(pos[e.1]), pos[e.0].max(pos[e.1]));
    let (c, d) = (pos[f.0], pos[f.1]);
    let inside = |x: usize| a < x && x < b;
    let shared = [e.0, e.1].iter().any(|x| *x == f.0 || *x == f.1);
    !shared && inside(c) != inside(d)
}

/// Index pairs `(i, j)`, `i < j`, of edges whose endpoints interleave around the circle.
fn crossing_pairs(edges: &[(usize, usize)], pos: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            if interleave(edges[i], edges[j], pos) {
                out.push((i, j));
            }
        }
    }
    out
}

fn count_crossings(edges: &[(usize, usize)], pos: &[usize]) -> usize {
    let mut c = 0;
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            c += interleave(edges[i], edges[j], pos) as usize;
        }
    }
    c
}

/// A cyclic order with few interleaved edge pairs: exhaustive (first minimum in lexicographic
/// order, vertex 0 first) up to nine vertices, pairwise-swap descent beyond.
pub fn crossing_minimizing_order(g: &WeightedGraph) -> Vec<usize> {
    let n = g.vertex_count();
    let edges = g.edge_keys();
    if n <= 3 || edges.len() < 2 {
        return (0..n).collect();
    }
    if n <= EXHAUSTIVE_ORDER_LIMIT {
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best = perm.clone();
        let mut best_count = count_crossings(&edges, &inverse(&perm));
        while next_permutation(&mut perm[1..]) {
            let c = count_crossings(&edges, &inverse(&perm));
            if c < best_count {
                best_count = c;
                best = perm.clone();
                if c == 0 {
                    break;
                }
            }
        }
        return best;
    }
    let mut order: Vec<usize> = (0..n).collect();
    let mut current = count_crossings(&edges, &inverse(&order));
    let mut improved = true;
    while improved && current > 0 {
        improved = false;
        for i in 0..n {
            for j in i + 1..n {
                order.swap(i, j);
                let c = count_crossings(&edges, &inverse(&order));
                if c < current {
                    current = c;
                    improved = true;
                } else {
                    order.swap(i, j);
                }
            }
        }
    }
    order
}

fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let Some(i) = (0..a.len() - 1).rev().find(|&i| a[i] < a[i + 1]) else {
        return false;
    };
    let j = (i + 1..a.len()).rev().find(|&j| a[j] > a[i]).unwrap();
    a.swap(i, j);
    a[i + 1..].reverse();
    true
}

/// Places `g` on the circle with the default perturbation seed 1.
pub fn draw_on_circle(g: &WeightedGraph) -> Result<ChordDrawing> {
    draw_on_circle_seeded(g, 1)
}

/// Places vertices at rational circle points in a crossing-minimizing cyclic order. Angles are
/// spread evenly and jittered by a seeded schedule; attempt `r` rounds parameters to
/// denominator `1000·(r+1)`. Retries until the drawing is in general position.
pub fn draw_on_circle_seeded(g: &WeightedGraph, seed: u64) -> Result<ChordDrawing> {
    let n = g.vertex_count();
    let order = crossing_minimizing_order(g);
    let edges = g.edge_keys();
    let pairs = crossing_pairs(&edges, &inverse(&order));
    for attempt in 0..MAX_PLACEMENT_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(attempt as u64);
        let den = 1000 * (attempt as i64 + 1);
        let mut params = vec![Rational::zero(); n];
        let mut ok = true;
        let mut prev: Option<Rational> = None;
        for (i, &v) in order.iter().enumerate() {
            let jitter = Rational::new(rng.gen_range(-1000i64..=1000).into(), 4000.into());
            let frac = (rat(2 * i as i64 + 1) / rat(2) + jitter) * rat(2) / rat(n as i64);
            let theta = pi() * (frac - Rational::one());
            match half_angle_parameter(&theta, den) {
                Some(t) if prev.as_ref().is_none_or(|p| p < &t) => {
                    prev = Some(t.clone());
                    params[v] = t;
                }
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        let points: Vec<Point> = params.iter().map(Point::on_circle).collect();
        if general_position_violation(&points, &edges, &pairs).is_none() {
            return Ok(ChordDrawing {
                graph: g.clone(),
                order,
                params,
                points,
            });
        }
    }
    Err(Error::DegeneratePlacement(MAX_PLACEMENT_ATTEMPTS))
}

fn crossing_point(points: &[Point], e: (usize, usize), f: (usize, usize)) -> Point {
    line_intersection(&points[e.0], &points[e.1], &points[f.0], &points[f.1])
}

/// Describes the first violated predicate: a crossing at the center, or two vertices or
/// crossings on a common ray from the center.
fn general_position_violation(
    points: &[Point],
    edges: &[(usize, usize)],
    pairs: &[(usize, usize)],
) -> Option<String> {
    let mut marks: Vec<(Point, String)> = points
        .iter()
        .enumerate()
        .map(|(v, p)| (p.clone(), format!("vertex {v}")))
        .collect();
    for &(i, j) in pairs {
        let p = crossing_point(points, edges[i], edges[j]);
        if p.is_origin() {
            return Some(format!(
                "chords {:?} and {:?} cross at the center",
                edges[i], edges[j]
            ));
        }
        marks.push((p, format!("crossing of {:?} and {:?}", edges[i], edges[j])));
    }
    marks.sort_by(|a, b| angle_cmp(&a.0, &b.0));
    marks
        .windows(2)
        .find(|w| angle_cmp(&w[0].0, &w[1].0) == Ordering::Equal)
        .map(|w| format!("{} and {} lie on a common ray", w[0].1, w[1].1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingRecord {
    /// Edge indices into [`CrossingInventory::edges`], `e < f`.
    pub e: usize,
    pub f: usize,
    pub point: Point,
    /// Edges met by the segment from the crossing to the circle, nearest first.
    pub crossed: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingInventory {
    pub edges: Vec<(usize, usize)>,
    pub crossings: Vec<CrossingRecord>,
}

impl CrossingInventory {
    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    /// `Σ m_i`.
    pub fn segment_crossings(&self) -> usize {
        self.crossings.iter().map(|c| c.crossed.len()).sum()
    }
}

/// All chord crossings, in lexicographic order of their edge-index pairs, with the edges
/// crossed by each outward segment.
pub fn enumerate_crossings(d: &ChordDrawing) -> Result<CrossingInventory> {
    let edges = d.graph.edge_keys();
    let pairs = crossing_pairs(&edges, &d.positions());
    if let Some(msg) = general_position_violation(&d.points, &edges, &pairs) {
        return Err(Error::DegenerateDrawing(msg));
    }
    let mut crossings = Vec::with_capacity(pairs.len());
    for (e, f) in pairs {
        let point = crossing_point(&d.points, edges[e], edges[f]);
        let mut hits: Vec<(Rational, usize)> = Vec::new();
        for (g, &(a, b)) in edges.iter().enumerate() {
            if let Some((lambda, mu)) = ray_hit(&point, &d.points[a], &d.points[b]) {
                if lambda > Rational::one() && mu.is_positive() && mu < Rational::one() {
                    hits.push((lambda, g));
                }
            }
        }
        hits.sort();
        crossings.push(CrossingRecord {
            e,
            f,
            point,
            crossed: hits.into_iter().map(|(_, g)| g).collect(),
        });
    }
    Ok(CrossingInventory { edges, crossings })
}

/// Which side of the outward ray through `p` the direction `d` points to.
pub(crate) fn points_right(p: &Point, d: &Point) -> bool {
    cross(p, d).is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn crossing_counts_of_small_drawings() {
        assert_eq!(
            draw_on_circle(&named::cycle(4)).unwrap().crossing_count(),
            0
        );
        assert_eq!(
            draw_on_circle(&named::complete(4))
                .unwrap()
                .crossing_count(),
            1
        );
        assert_eq!(
            draw_on_circle(&named::complete(5))
                .unwrap()
                .crossing_count(),
            5
        );
    }

    #[test]
    fn cycles_have_empty_inventories() {
        let inv = enumerate_crossings(&draw_on_circle(&named::cycle(6)).unwrap()).unwrap();
        assert!(inv.is_empty());
    }

    #[test]
    fn two_crossing_chords() {
        let g = WeightedGraph::from_edges(4, &[(0, 2), (1, 3)]);
        let inv = enumerate_crossings(&draw_on_circle(&g).unwrap()).unwrap();
        // The crossing-minimizing order uncrosses a perfect matching.
        assert_eq!(inv.len(), 0);
        let mut d = draw_on_circle(&named::cycle(4)).unwrap();
        d.graph = g;
        let inv = enumerate_crossings(&d).unwrap();
        assert_eq!(inv.len(), 1);
        assert!(inv.crossings[0].crossed.is_empty());
    }

    #[test]
    fn k4_segment() {
        let inv = enumerate_crossings(&draw_on_circle(&named::complete(4)).unwrap()).unwrap();
        assert_eq!(inv.len(), 1);
        // The segment to the circle leaves through exactly one side of the quadrilateral.
        assert_eq!(inv.crossings[0].crossed.len(), 1);
    }

    #[test]
    fn placement_is_deterministic_per_seed() {
        let g = named::complete_bipartite(3, 3);
        assert_eq!(
            draw_on_circle_seeded(&g, 5).unwrap(),
            draw_on_circle_seeded(&g, 5).unwrap()
        );
    }

    #[test]
    fn center_crossing_is_degenerate() {
        let g = WeightedGraph::from_edges(4, &[(0, 2), (1, 3)]);
        let points = vec![
            Point::new(rat(1), rat(0)),
            Point::new(rat(0), rat(1)),
            Point::new(rat(-1), rat(0)),
            Point::new(rat(0), rat(-1)),
        ];
        let d = ChordDrawing {
            graph: g,
            order: vec![0, 1, 2, 3],
            params: vec![Rational::zero(); 4],
            points,
        };
        assert!(matches!(
            enumerate_crossings(&d),
            Err(Error::DegenerateDrawing(_))
        ));
    }
}
