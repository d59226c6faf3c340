//! The shipped sign-crossing gadget and the bounded search that produced it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use super::signature::{compute_signature, GadgetSignature, Stub};
use crate::count::is_planar;
use crate::error::{Error, Result};
use crate::format::{content_lines, parse_graph_lines, serialize_graph};
use crate::graph::{ratio, Rational, WeightedGraph};

/// A planar matchgate with four attachment points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignCrossingGadget {
    pub graph: WeightedGraph,
    /// Attachment vertices in the order `e1, e2, f1, f2`.
    pub attachments: [usize; 4],
}

const SHIPPED: &str = include_str!("../../data/sign_crossing.gadget");

impl SignCrossingGadget {
    /// The frozen gadget shipped with the crate.
    pub fn shipped() -> Self {
        Self::parse(SHIPPED).expect("shipped gadget file is well formed")
    }

    pub fn attachment(&self, stub: Stub) -> usize {
        self.attachments[stub as usize]
    }

    pub fn size(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn signature(&self) -> GadgetSignature {
        compute_signature(&self.graph, self.attachments)
    }

    /// Planar with the attachment points on one face in the cyclic order `e1, f1, e2, f2`.
    pub fn has_outer_order(&self) -> bool {
        has_outer_order(&self.graph, &Stub::CYCLIC.map(|s| self.attachment(s)))
    }

    /// Graph file followed by four lines `e1 v`, `e2 v`, `f1 v`, `f2 v`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let graph = parse_graph_lines(&mut lines)?;
        let mut attachments = [usize::MAX; 4];
        for (line, body) in lines {
            let toks: Vec<&str> = body.split_whitespace().collect();
            let stub = match toks.as_slice() {
                [name, _] => Stub::from_name(name),
                _ => None,
            }
            .ok_or(Error::Syntax {
                line,
                msg: "expected an attachment line \"e1 v\"".into(),
            })?;
            let v: usize = toks[1].parse().map_err(|_| Error::Syntax {
                line,
                msg: format!("bad vertex {:?}", toks[1]),
            })?;
            if v >= graph.vertex_count() {
                return Err(Error::Semantic {
                    line,
                    msg: format!("attachment {v} out of range"),
                });
            }
            attachments[stub as usize] = v;
        }
        if attachments.contains(&usize::MAX) {
            return Err(Error::Semantic {
                line: 0,
                msg: "all four attachments e1, e2, f1, f2 are required".into(),
            });
        }
        let mut sorted = attachments;
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Semantic {
                line: 0,
                msg: "attachment points must be distinct".into(),
            });
        }
        Ok(SignCrossingGadget { graph, attachments })
    }

    pub fn serialize(&self) -> String {
        let mut out = serialize_graph(&self.graph);
        for stub in Stub::ALL {
            out.push_str(&format!("{} {}\n", stub.name(), self.attachment(stub)));
        }
        out
    }
}

/// True when `g` has a planar embedding with `cyclic` appearing in this order on one face.
pub fn has_outer_order(g: &WeightedGraph, cyclic: &[usize]) -> bool {
    let mut h = g.unweighted_copy();
    let apex = h.add_vertex();
    for (i, &v) in cyclic.iter().enumerate() {
        h.add_edge(apex, v, Rational::one()).expect("fresh apex");
        if cyclic.len() > 2 {
            h.ensure_edge(v, cyclic[(i + 1) % cyclic.len()])
                .expect("valid cycle");
        }
    }
    is_planar(&h)
}

/// Search space: `k` internal vertices for even `k ≤ max_internal`, four attachments, and every
/// edge either absent or carrying one of `weights`.
#[derive(Clone, Debug)]
pub struct GadgetSearch {
    pub max_internal: usize,
    pub weights: Vec<Rational>,
    pub require_outer_order: bool,
}

impl Default for GadgetSearch {
    fn default() -> Self {
        GadgetSearch {
            max_internal: 2,
            weights: vec![
                ratio(1, 1),
                ratio(-1, 1),
                ratio(2, 1),
                ratio(1, 2),
                ratio(-1, 2),
            ],
            require_outer_order: true,
        }
    }
}

/// The shipped gadget's provenance: the first hit of the default search.
pub fn find_sign_crossing_gadget() -> Result<SignCrossingGadget> {
    GadgetSearch::default()
        .find(&GadgetSignature::sign_crossing())
        .ok_or(Error::SearchExhausted)
}

/// Vertex layout during the search: internal vertices `0..k`, then the attachments in cyclic
/// order `e1, f1, e2, f2`.
const CYCLIC_BITS: [usize; 4] = [0b0001, 0b0100, 0b0010, 0b1000];

struct Level {
    /// Vertex subsets (bitmasks over the layout) with their scaled target values.
    constraints: Vec<(u32, i64)>,
}

struct Searcher<'a> {
    k: usize,
    n: usize,
    units: Vec<i64>,
    denom: i64,
    target: Vec<i64>,
    weight: Vec<Vec<i64>>,
    spec: &'a GadgetSearch,
}

impl GadgetSearch {
    /// First gadget in the search order realizing `target` exactly, if any.
    pub fn find(&self, target: &GadgetSignature) -> Option<SignCrossingGadget> {
        let mut denom = BigInt::one();
        for w in &self.weights {
            denom = denom.lcm(w.denom());
        }
        let denom_r = Rational::from_integer(denom.clone());
        let units: Vec<i64> = self
            .weights
            .iter()
            .map(|w| (w * &denom_r).to_integer().to_i64().expect("small weights"))
            .collect();
        let denom = denom.to_i64().expect("small denominator");
        let mut tvals = Vec::with_capacity(16);
        for v in target.values() {
            if !v.is_integer() || v.numer().abs() > BigInt::from(1_000_000) {
                return None;
            }
            tvals.push(v.to_integer().to_i64().unwrap());
        }
        for k in (0..=self.max_internal).step_by(2) {
            let n = k + 4;
            let mut s = Searcher {
                k,
                n,
                units: units.clone(),
                denom,
                target: tvals.clone(),
                weight: vec![vec![0; n]; n],
                spec: self,
            };
            if let Some(g) = s.run() {
                return Some(g);
            }
        }
        None
    }
}

impl Searcher<'_> {
    fn run(&mut self) -> Option<SignCrossingGadget> {
        let internal: Vec<(usize, usize)> = (0..self.k)
            .flat_map(|u| (u + 1..self.k).map(move |v| (u, v)))
            .collect();
        let mut choice = vec![0usize; internal.len()];
        loop {
            for (i, &(u, v)) in internal.iter().enumerate() {
                self.set(u, v, self.option(choice[i]));
            }
            let full = (1u32 << self.k) - 1;
            if self.pm(full) == self.scaled(0b1111, self.k) {
                if let Some(g) = self.attach(1) {
                    return Some(g);
                }
            }
            if !odometer(&mut choice, self.units.len() + 1) {
                return None;
            }
        }
    }

    /// Option 0 is "absent"; option `i > 0` is `units[i - 1]`.
    fn option(&self, i: usize) -> i64 {
        if i == 0 {
            0
        } else {
            self.units[i - 1]
        }
    }

    fn set(&mut self, u: usize, v: usize, w: i64) {
        self.weight[u][v] = w;
        self.weight[v][u] = w;
    }

    /// Target for the stub set `mask`, scaled by `denom^(vertices / 2)`.
    fn scaled(&self, mask: usize, vertices: usize) -> i64 {
        self.target[mask] * self.denom.pow((vertices / 2) as u32)
    }

    /// Scaled perfect-matching sum of the vertex subset `set`.
    fn pm(&self, set: u32) -> i64 {
        if set == 0 {
            return 1;
        }
        if set.count_ones() % 2 == 1 {
            return 0;
        }
        let u = set.trailing_zeros() as usize;
        let rest = set & !(1 << u);
        let mut total = 0;
        let mut r = rest;
        while r != 0 {
            let v = r.trailing_zeros() as usize;
            r &= r - 1;
            let w = self.weight[u][v];
            if w != 0 {
                total += w * self.pm(rest & !(1 << v));
            }
        }
        total
    }

    /// Constraints that become decidable once attachment `j` (1-based, cyclic order) is wired.
    fn level(&self, j: usize) -> Level {
        let internal = (1u32 << self.k) - 1;
        let mut constraints = Vec::new();
        for present in 0u32..(1 << j) {
            if present & (1 << (j - 1)) == 0 {
                continue;
            }
            let mut set = internal;
            let mut removed_mask = 0b1111usize;
            for c in 0..4 {
                if present & (1 << c) != 0 {
                    set |= 1 << (self.k + c);
                    removed_mask &= !CYCLIC_BITS[c];
                }
            }
            let size = set.count_ones() as usize;
            let target = if size % 2 == 1 {
                0
            } else {
                self.scaled(removed_mask, size)
            };
            if size % 2 == 1 && self.target[removed_mask] != 0 {
                // An odd vertex set cannot have a nonzero value.
                constraints.push((set, i64::MIN));
            } else {
                constraints.push((set, target));
            }
        }
        Level { constraints }
    }

    fn attach(&mut self, j: usize) -> Option<SignCrossingGadget> {
        if j == 5 {
            return self.finish();
        }
        let level = self.level(j);
        if level.constraints.iter().any(|&(_, t)| t == i64::MIN) {
            return None;
        }
        let a = self.k + j - 1;
        let prior: Vec<usize> = (0..a).collect();
        // Each constraint is linear in the weights of the new edges a-x.
        let coeffs: Vec<Vec<i64>> = level
            .constraints
            .iter()
            .map(|&(set, _)| {
                prior
                    .iter()
                    .map(|&x| {
                        if set & (1 << x) == 0 {
                            0
                        } else {
                            self.pm(set & !(1 << a) & !(1 << x))
                        }
                    })
                    .collect()
            })
            .collect();
        let p = prior.len();
        let options = self.units.len() + 1;
        let mut choice = vec![0usize; p.saturating_sub(1)];
        loop {
            let partial: Vec<i64> = coeffs
                .iter()
                .map(|c| {
                    choice
                        .iter()
                        .enumerate()
                        .map(|(i, &o)| c[i] * self.option(o))
                        .sum()
                })
                .collect();
            let lasts: Vec<usize> = if p == 0 {
                vec![usize::MAX]
            } else {
                (0..options)
                    .filter(|&o| {
                        let w = self.option(o);
                        level
                            .constraints
                            .iter()
                            .zip(&coeffs)
                            .zip(&partial)
                            .all(|((&(_, t), c), s)| s + c[p - 1] * w == t)
                    })
                    .collect()
            };
            for last in lasts {
                for (i, &o) in choice.iter().enumerate() {
                    self.set(a, prior[i], self.option(o));
                }
                if last != usize::MAX {
                    self.set(a, prior[p - 1], self.option(last));
                } else if level.constraints.iter().any(|&(set, t)| self.pm(set) != t) {
                    continue;
                }
                if let Some(g) = self.attach(j + 1) {
                    return Some(g);
                }
            }
            if !odometer(&mut choice, options) {
                break;
            }
        }
        for &x in &prior {
            self.set(a, x, 0);
        }
        None
    }

    fn finish(&self) -> Option<SignCrossingGadget> {
        let mut g = WeightedGraph::new(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.weight[u][v] != 0 {
                    g.add_edge(
                        u,
                        v,
                        Rational::new(self.weight[u][v].into(), self.denom.into()),
                    )
                    .unwrap();
                }
            }
        }
        let k = self.k;
        // Layout is e1, f1, e2, f2; storage order is e1, e2, f1, f2.
        let gadget = SignCrossingGadget {
            graph: g,
            attachments: [k, k + 2, k + 1, k + 3],
        };
        if self.spec.require_outer_order && !gadget.has_outer_order() {
            return None;
        }
        Some(gadget)
    }
}

/// Advances a mixed-radix counter; false once it wraps around.
fn odometer(digits: &mut [usize], radix: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < radix {
            return true;
        }
        *d = 0;
    }
    false
}
