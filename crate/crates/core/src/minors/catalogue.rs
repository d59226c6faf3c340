//! Generated plane graphs and simple rings for sweeps.
//!
//! Outer vertices sit on the parabola `y = x²` in convex position, inner vertices at random
//! interior points; a random maximal set of pairwise non-crossing segments gives a
//! triangulation whose outer face is the hull, and random edge subsets of it give sparser
//! instances.

use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Rational, WeightedGraph};

use super::ring::SimpleRing;

/// A plane graph with its outer face order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneSample {
    pub graph: WeightedGraph,
    pub outer: Vec<usize>,
}

type P = (i64, i64);

fn orient(a: P, b: P, c: P) -> i64 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

fn crosses(a: P, b: P, c: P, d: P) -> bool {
    let s = |x: i64| x.signum();
    s(orient(a, b, c)) * s(orient(a, b, d)) < 0 && s(orient(c, d, a)) * s(orient(c, d, b)) < 0
}

const SCALE: i64 = 1000;

fn points(rng: &mut ChaCha8Rng, k: usize, w: usize) -> Vec<P> {
    let mut pts: Vec<P> = (0..k as i64).map(|i| (i * SCALE, i * i * SCALE)).collect();
    while pts.len() < k + w {
        let i = rng.gen_range(1..k - 1);
        let (a, b) = (rng.gen_range(1..SCALE - 1), rng.gen_range(1..SCALE - 1));
        if a + b >= SCALE {
            continue;
        }
        let c = SCALE - a - b;
        let (o, p, q) = (pts[0], pts[i], pts[i + 1]);
        let x = (c * o.0 + a * p.0 + b * q.0) / SCALE;
        let y = (c * o.1 + a * p.1 + b * q.1) / SCALE;
        let cand = (x, y);
        let inside = (0..k).all(|j| orient(pts[j], pts[(j + 1) % k], cand) > 0);
        let general = (0..pts.len()).all(|u| {
            pts[u] != cand && (u + 1..pts.len()).all(|v| orient(pts[u], pts[v], cand) != 0)
        });
        if inside && general {
            pts.push(cand);
        }
    }
    pts
}

/// A random plane graph with `k ≥ 3` outer vertices `0..k` and `w` inner vertices after them.
/// Inner vertices form a clique when `inner_clique`; each other non-hull edge of the underlying
/// triangulation survives with probability `keep`.
pub fn random_plane_graph(
    seed: u64,
    k: usize,
    w: usize,
    inner_clique: bool,
    keep: f64,
) -> PlaneSample {
    assert!(k >= 3, "outer face needs three vertices");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts = points(&mut rng, k, w);
    let n = k + w;
    let mut required: Vec<(usize, usize)> = (0..k).map(|i| (i, (i + 1) % k)).collect();
    if inner_clique {
        for a in k..n {
            for b in a + 1..n {
                required.push((a, b));
            }
        }
    }
    let mut rest: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|&(a, b)| !required.contains(&(a, b)) && !required.contains(&(b, a)))
        .collect();
    rest.shuffle(&mut rng);
    let mut chosen: Vec<(usize, usize)> = Vec::new();
    for (a, b) in required.iter().copied().chain(rest) {
        if chosen
            .iter()
            .all(|&(c, d)| !crosses(pts[a], pts[b], pts[c], pts[d]))
        {
            chosen.push((a, b));
        }
    }
    let mut g = WeightedGraph::new(n);
    for (i, &(a, b)) in chosen.iter().enumerate() {
        let forced = i < required.len() && (inner_clique || b == (a + 1) % k || a == (b + 1) % k);
        if forced || rng.gen_bool(keep) {
            g.add_edge(a, b, Rational::one()).expect("fresh edge");
        }
    }
    PlaneSample {
        graph: g,
        outer: (0..k).collect(),
    }
}

fn tiny_rings(k: usize, w: usize) -> Vec<SimpleRing> {
    let n = k + w;
    let optional: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|&(a, b)| a < k || b < k)
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..1 << optional.len() {
        let mut g = WeightedGraph::new(n);
        for a in k..n {
            for b in a + 1..n {
                g.add_edge(a, b, Rational::one()).unwrap();
            }
        }
        for (i, &(a, b)) in optional.iter().enumerate() {
            if mask >> i & 1 == 1 {
                g.add_edge(a, b, Rational::one()).unwrap();
            }
        }
        if let Ok(r) = SimpleRing::new(g, (0..k).collect()) {
            out.push(r);
        }
    }
    out
}

/// Simple rings on at most `max_vertices` vertices: every ring with at most two outer vertices,
/// and for larger outer faces the full triangulation plus `samples - 1` random subgraphs per
/// shape `(outer, inner)`.
pub fn simple_ring_catalogue(max_vertices: usize, samples: usize, seed: u64) -> Vec<SimpleRing> {
    let mut out = Vec::new();
    for k in 0..=max_vertices.min(2) {
        for w in 0..=3.min(max_vertices - k) {
            out.extend(tiny_rings(k, w));
        }
    }
    for k in 3..=max_vertices {
        for w in 0..=3.min(max_vertices - k) {
            for s in 0..samples {
                let keep = if s == 0 { 1.0 } else { 0.6 };
                let sample =
                    random_plane_graph(seed ^ (k * 131 + w * 17 + s) as u64, k, w, true, keep);
                out.push(
                    SimpleRing::new(sample.graph, sample.outer).expect("generated simple ring"),
                );
            }
        }
    }
    out
}

/// Plane graphs with `3..=max_vertices` vertices and any number of inner vertices.
pub fn plane_catalogue(max_vertices: usize, samples: usize, seed: u64) -> Vec<PlaneSample> {
    let mut out = Vec::new();
    for n in 3..=max_vertices {
        for k in 3..=n {
            for s in 0..samples {
                let keep = if s == 0 { 1.0 } else { 0.7 };
                out.push(random_plane_graph(
                    seed ^ (n * 977 + k * 31 + s) as u64,
                    k,
                    n - k,
                    false,
                    keep,
                ));
            }
        }
    }
    out
}
