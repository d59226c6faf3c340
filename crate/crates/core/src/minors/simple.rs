//! Turning a ring blowup with a clique model into a simple ring blowup with the same model.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{named, WeightedGraph};
use crate::reduce::{check_ring_blowup, RingBlowup};

use super::model::{check_clique_model, MinorModel};
use super::ring::SimpleRing;
use super::sums::blowup;

type Adj = BTreeMap<usize, BTreeSet<usize>>;

fn adjacency(g: &WeightedGraph) -> Adj {
    (0..g.vertex_count())
        .zip(g.adjacency())
        .map(|(v, a)| (v, a.into_iter().collect()))
        .collect()
}

fn remove(adj: &mut Adj, v: usize) {
    if let Some(nb) = adj.remove(&v) {
        for u in nb {
            adj.get_mut(&u).unwrap().remove(&v);
        }
    }
}

/// Merges `v` into `u`.
fn merge(adj: &mut Adj, u: usize, v: usize) {
    let nb = adj.remove(&v).unwrap_or_default();
    for x in nb {
        adj.get_mut(&x).unwrap().remove(&v);
        if x != u {
            adj.get_mut(&x).unwrap().insert(u);
            adj.get_mut(&u).unwrap().insert(x);
        }
    }
}

struct Work {
    graph: Adj,
    reduct: Adj,
    projection: BTreeMap<usize, usize>,
    outer: Vec<usize>,
    sets: Vec<BTreeSet<usize>>,
}

impl Work {
    fn is_blowup(&self, v: usize) -> bool {
        self.outer.contains(&self.projection[&v])
    }

    fn delete(&mut self, v: usize) {
        remove(&mut self.graph, v);
        let r = self.projection.remove(&v).unwrap();
        if !self.projection.values().any(|&x| x == r) {
            remove(&mut self.reduct, r);
            self.outer.retain(|&x| x != r);
        }
    }

    /// Contracts the graph edge `uv` into `u`; `v` must be the only preimage of its reduct vertex.
    fn contract(&mut self, u: usize, v: usize) {
        merge(&mut self.graph, u, v);
        let (ru, rv) = (self.projection[&u], self.projection.remove(&v).unwrap());
        merge(&mut self.reduct, ru, rv);
        for s in &mut self.sets {
            s.remove(&v);
        }
    }
}

/// The blowup of a single outer edge: `K4` with singleton branch sets.
fn k4_ring(t: usize) -> (RingBlowup, MinorModel) {
    let r = blowup(&named::path(2), &[0, 1]);
    (r, MinorModel::new((0..t).map(|v| vec![v]).collect()))
}

/// Whether the reduct of `r` is a simple ring with `r.outer` as outer face.
pub fn check_simple_ring_blowup(r: &RingBlowup) -> std::result::Result<(), String> {
    check_ring_blowup(r)?;
    SimpleRing {
        graph: r.reduct.clone(),
        outer: r.outer.clone(),
    }
    .check()
}

/// Deletes vertices outside the model, contracts branch sets free of blowup vertices, and
/// contracts edges from blowup vertices to the remaining non-blowup vertices of their set.
/// Blowup vertices are the graph vertices over outer reduct vertices.
pub fn make_simple(r: &RingBlowup, model: &MinorModel) -> Result<(RingBlowup, MinorModel)> {
    check_ring_blowup(r)
        .map_err(|e| Error::InvalidModel(format!("input is not a ring blowup: {e}")))?;
    check_clique_model(&r.graph, model).map_err(Error::InvalidModel)?;
    let t = model.len();
    if t <= 4 {
        return Ok(k4_ring(t));
    }
    let mut w = Work {
        graph: adjacency(&r.graph),
        reduct: adjacency(&r.reduct),
        projection: r.projection.iter().copied().enumerate().collect(),
        outer: r.outer.clone(),
        sets: model
            .sets
            .iter()
            .map(|s| s.iter().copied().collect())
            .collect(),
    };
    let used: BTreeSet<usize> = w.sets.iter().flatten().copied().collect();
    for v in 0..r.graph.vertex_count() {
        if !used.contains(&v) {
            w.delete(v);
        }
    }
    let mut ell = 0;
    for i in 0..t {
        if w.sets[i].iter().any(|&v| w.is_blowup(v)) {
            continue;
        }
        ell += 1;
        let root = *w.sets[i].iter().next().unwrap();
        while w.sets[i].len() > 1 {
            let v = *w.graph[&root]
                .iter()
                .find(|x| w.sets[i].contains(x))
                .expect("branch sets are connected");
            w.contract(root, v);
        }
    }
    if ell > 3 {
        return Err(Error::InnerCliqueTooLarge(ell));
    }
    loop {
        let mut pick = None;
        'scan: for s in &w.sets {
            for &u in s {
                if !w.is_blowup(u) {
                    continue;
                }
                if let Some(&v) = w.graph[&u]
                    .iter()
                    .find(|&&v| s.contains(&v) && !w.is_blowup(v))
                {
                    pick = Some((u, v));
                    break 'scan;
                }
            }
        }
        let Some((u, v)) = pick else { break };
        w.contract(u, v);
    }
    let gids: Vec<usize> = w.graph.keys().copied().collect();
    let rids: Vec<usize> = w.reduct.keys().copied().collect();
    let gpos = |v: usize| gids.binary_search(&v).unwrap();
    let rpos = |v: usize| rids.binary_search(&v).unwrap();
    let mut graph = WeightedGraph::new(gids.len());
    for (&a, nb) in &w.graph {
        for &b in nb.range(a + 1..) {
            graph.ensure_edge(gpos(a), gpos(b))?;
        }
    }
    let mut reduct = WeightedGraph::new(rids.len());
    for (&a, nb) in &w.reduct {
        for &b in nb.range(a + 1..) {
            reduct.ensure_edge(rpos(a), rpos(b))?;
        }
    }
    let out = RingBlowup {
        graph,
        reduct,
        outer: w.outer.iter().map(|&x| rpos(x)).collect(),
        projection: gids.iter().map(|v| rpos(w.projection[v])).collect(),
    };
    let model = MinorModel::new(
        w.sets
            .iter()
            .map(|s| s.iter().map(|&v| gpos(v)).collect())
            .collect(),
    );
    check_simple_ring_blowup(&out).map_err(Error::CaseViolation)?;
    check_clique_model(&out.graph, &model).map_err(Error::CaseViolation)?;
    Ok((out, model))
}
