//! Minor models and their single verifier.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::format::content_lines;
use crate::graph::{named, WeightedGraph};

/// Branch sets indexed by the vertices of the minor `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorModel {
    pub sets: Vec<Vec<usize>>,
}

impl MinorModel {
    pub fn new(mut sets: Vec<Vec<usize>>) -> Self {
        for s in &mut sets {
            s.sort_unstable();
        }
        MinorModel { sets }
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Branch set index of every graph vertex, `None` for unused vertices.
    pub fn owner(&self, n: usize) -> Vec<Option<usize>> {
        let mut out = vec![None; n];
        for (i, s) in self.sets.iter().enumerate() {
            for &v in s {
                if v < n {
                    out[v] = Some(i);
                }
            }
        }
        out
    }

    /// One line `i: v v v` per branch set.
    pub fn serialize(&self) -> String {
        let mut s = String::new();
        for (i, set) in self.sets.iter().enumerate() {
            let vs: Vec<String> = set.iter().map(|v| v.to_string()).collect();
            writeln!(s, "{i}: {}", vs.join(" ")).unwrap();
        }
        s
    }

    /// Inverse of [`MinorModel::serialize`]. Names must be `0..k` in any order.
    pub fn parse(text: &str) -> Result<Self> {
        let mut named_sets: Vec<(usize, Vec<usize>)> = Vec::new();
        for (line, body) in content_lines(text) {
            let (name, rest) = body.split_once(':').ok_or(Error::Syntax {
                line,
                msg: "expected \"name: v v v\"".into(),
            })?;
            let name: usize = name.trim().parse().map_err(|_| Error::Syntax {
                line,
                msg: format!("bad branch set name {:?}", name.trim()),
            })?;
            let mut set = Vec::new();
            for t in rest.split_whitespace() {
                set.push(t.parse().map_err(|_| Error::Syntax {
                    line,
                    msg: format!("bad vertex {t:?}"),
                })?);
            }
            named_sets.push((name, set));
        }
        named_sets.sort_by_key(|(name, _)| *name);
        for (i, (name, _)) in named_sets.iter().enumerate() {
            if *name != i {
                return Err(Error::Semantic {
                    line: 0,
                    msg: format!("branch set names must be 0..{}", named_sets.len()),
                });
            }
        }
        Ok(MinorModel::new(
            named_sets.into_iter().map(|(_, s)| s).collect(),
        ))
    }
}

fn is_connected_within(adj: &[Vec<usize>], set: &[usize]) -> bool {
    let Some(&start) = set.first() else {
        return false;
    };
    let inside: BTreeSet<usize> = set.iter().copied().collect();
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if inside.contains(&y) && seen.insert(y) {
                stack.push(y);
            }
        }
    }
    seen.len() == inside.len()
}

/// The verifier: branch sets are non-empty, disjoint, connected, and every edge of `h` is
/// realised by an edge of `g` between the corresponding sets.
pub fn check_model(
    g: &WeightedGraph,
    h: &WeightedGraph,
    m: &MinorModel,
) -> std::result::Result<(), String> {
    let n = g.vertex_count();
    if m.len() != h.vertex_count() {
        return Err(format!(
            "{} branch sets for {} minor vertices",
            m.len(),
            h.vertex_count()
        ));
    }
    let mut owner = vec![None; n];
    for (i, set) in m.sets.iter().enumerate() {
        if set.is_empty() {
            return Err(format!("branch set {i} is empty"));
        }
        for &v in set {
            if v >= n {
                return Err(format!("branch set {i} names vertex {v} outside the graph"));
            }
            if let Some(j) = owner[v] {
                return Err(format!("vertex {v} lies in branch sets {j} and {i}"));
            }
            owner[v] = Some(i);
        }
    }
    let adj = g.adjacency();
    for (i, set) in m.sets.iter().enumerate() {
        if !is_connected_within(&adj, set) {
            return Err(format!("branch set {i} is not connected"));
        }
    }
    let mut touching = BTreeSet::new();
    for (a, b, _) in g.edges() {
        if let (Some(x), Some(y)) = (owner[a], owner[b]) {
            if x != y {
                touching.insert((x.min(y), x.max(y)));
            }
        }
    }
    for (a, b, _) in h.edges() {
        if !touching.contains(&(a.min(b), a.max(b))) {
            return Err(format!("no edge between branch sets {a} and {b}"));
        }
    }
    Ok(())
}

pub fn verify_model(g: &WeightedGraph, h: &WeightedGraph, m: &MinorModel) -> bool {
    check_model(g, h, m).is_ok()
}

/// Checks `m` as a model of the complete graph on `m.len()` vertices.
pub fn check_clique_model(g: &WeightedGraph, m: &MinorModel) -> std::result::Result<(), String> {
    check_model(g, &named::complete(m.len()), m)
}
