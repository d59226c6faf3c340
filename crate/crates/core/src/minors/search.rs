//! Exact minor search by contraction branching over bitmask graphs.
//!
//! Every branch fixes the role of one unmarked vertex `v` of least degree: it either joins a
//! neighbouring branch set (contract `v` into that neighbour) or becomes a singleton branch
//! set (mark it). Leaving `v` unused is dominated by any contraction, since `G - v` is a
//! subgraph of `G / vu`. Failed states are memoised.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::{named, WeightedGraph};

use super::model::MinorModel;

pub const DEFAULT_BUDGET: u64 = 50_000_000;
const MEMO_CAP: usize = 4_000_000;

#[derive(Clone, Debug)]
pub struct MinorSearch {
    /// Maximum number of search nodes before [`Error::BudgetExceeded`].
    pub budget: u64,
}

impl Default for MinorSearch {
    fn default() -> Self {
        MinorSearch {
            budget: DEFAULT_BUDGET,
        }
    }
}

struct Target {
    k: usize,
    edges: usize,
    adj: Vec<u64>,
    deg: Vec<usize>,
    min_deg: usize,
    complete: bool,
}

#[derive(Clone)]
struct State {
    alive: u64,
    marked: u64,
    used: u64,
    adj: Vec<u64>,
    members: Vec<u64>,
    label: Vec<usize>,
}

fn bit(v: usize) -> u64 {
    1u64 << v
}

fn ones(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(v)
    })
}

impl State {
    fn deg(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    fn delete(&mut self, v: usize) {
        self.alive &= !bit(v);
        for u in ones(self.adj[v]) {
            self.adj[u] &= !bit(v);
        }
        self.adj[v] = 0;
    }

    fn contract(&mut self, v: usize, into: usize) {
        let nb = self.adj[v] & !bit(into);
        self.delete(v);
        self.adj[into] |= nb;
        for x in ones(nb) {
            self.adj[x] |= bit(into);
        }
        self.members[into] |= self.members[v];
    }

    fn mark(&mut self, v: usize, h: usize) {
        self.marked |= bit(v);
        self.used |= bit(h);
        self.label[v] = h;
    }

    fn edge_count(&self) -> usize {
        ones(self.alive).map(|v| self.deg(v)).sum::<usize>() / 2
    }

    fn is_simplicial(&self, v: usize) -> bool {
        let nb = self.adj[v];
        ones(nb).all(|x| (self.adj[x] | bit(x)) & nb == nb)
    }
}

enum Reduced {
    Infeasible,
    Done,
    Open,
}

struct Searcher<'a> {
    t: &'a Target,
    nodes: u64,
    budget: u64,
    memo: HashSet<Vec<u64>>,
}

impl Searcher<'_> {
    fn reduce(&self, st: &mut State) -> Reduced {
        let t = self.t;
        loop {
            if st.used.count_ones() as usize == t.k {
                return Reduced::Done;
            }
            for m in ones(st.marked) {
                if st.deg(m) < t.deg[st.label[m]] {
                    return Reduced::Infeasible;
                }
            }
            let mut changed = false;
            for v in ones(st.alive & !st.marked) {
                if st.alive & bit(v) == 0 {
                    continue;
                }
                let d = st.deg(v);
                if d >= t.min_deg {
                    continue;
                }
                if d <= 1 {
                    st.delete(v);
                } else if d == 2 && t.min_deg >= 3 {
                    match ones(st.adj[v] & !st.marked).next() {
                        Some(u) => st.contract(v, u),
                        None => st.delete(v),
                    }
                } else if st.is_simplicial(v) {
                    st.delete(v);
                } else {
                    continue;
                }
                changed = true;
            }
            if !changed {
                break;
            }
        }
        let alive = st.alive.count_ones() as usize;
        if alive < t.k || st.edge_count() < t.edges {
            return Reduced::Infeasible;
        }
        if ones(st.alive).all(|v| st.adj[v] | bit(v) == st.alive) {
            let free: Vec<usize> = ones(!st.used).take_while(|&h| h < t.k).collect();
            for (v, h) in ones(st.alive & !st.marked).zip(free) {
                st.mark(v, h);
            }
            return Reduced::Done;
        }
        Reduced::Open
    }

    fn key(&self, st: &State) -> Vec<u64> {
        let mut key = vec![st.alive, st.marked];
        key.extend(ones(st.alive).map(|v| st.adj[v]));
        if !self.t.complete {
            key.extend(ones(st.marked).map(|v| st.label[v] as u64));
        }
        key
    }

    fn search(&mut self, mut st: State) -> Result<Option<State>> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        match self.reduce(&mut st) {
            Reduced::Infeasible => return Ok(None),
            Reduced::Done => return Ok(Some(st)),
            Reduced::Open => {}
        }
        let key = self.key(&st);
        if self.memo.contains(&key) {
            return Ok(None);
        }
        let t = self.t;
        let Some(v) = ones(st.alive & !st.marked).min_by_key(|&v| st.deg(v)) else {
            return Ok(None);
        };
        let d = st.deg(v);
        for h in ones(!st.used).take_while(|&h| h < t.k) {
            let ok = d >= t.deg[h]
                && ones(st.marked)
                    .filter(|&m| t.adj[h] & bit(st.label[m]) != 0)
                    .all(|m| st.adj[v] & bit(m) != 0);
            if ok {
                let mut child = st.clone();
                child.mark(v, h);
                if let Some(done) = self.search(child)? {
                    return Ok(Some(done));
                }
            }
            if t.complete {
                break;
            }
        }
        let mut partners: Vec<usize> = ones(st.adj[v] & !st.marked).collect();
        partners.sort_by_key(|&u| (std::cmp::Reverse(st.deg(u)), u));
        for &u in &partners {
            let mut child = st.clone();
            child.contract(v, u);
            if let Some(done) = self.search(child)? {
                return Ok(Some(done));
            }
        }
        if partners.is_empty() {
            let mut child = st.clone();
            child.delete(v);
            if let Some(done) = self.search(child)? {
                return Ok(Some(done));
            }
        }
        if self.memo.len() < MEMO_CAP {
            self.memo.insert(key);
        }
        Ok(None)
    }
}

impl MinorSearch {
    pub fn with_budget(budget: u64) -> Self {
        MinorSearch { budget }
    }

    /// A model of `h` in `g`, or `None` when the exhaustive search finds none.
    pub fn find(&self, g: &WeightedGraph, h: &WeightedGraph) -> Result<Option<MinorModel>> {
        let (n, k) = (g.vertex_count(), h.vertex_count());
        if n > 64 || k > 64 {
            return Err(Error::SearchTooLarge(n.max(k)));
        }
        if k == 0 {
            return Ok(Some(MinorModel::new(Vec::new())));
        }
        let mask = |adj: Vec<Vec<usize>>| -> Vec<u64> {
            adj.iter()
                .map(|a| a.iter().fold(0, |m, &x| m | bit(x)))
                .collect()
        };
        let hadj = mask(h.adjacency());
        let deg: Vec<usize> = hadj.iter().map(|m| m.count_ones() as usize).collect();
        let target = Target {
            k,
            edges: h.edge_count(),
            min_deg: deg.iter().copied().min().unwrap_or(0),
            complete: h.edge_count() == k * (k - 1) / 2,
            adj: hadj,
            deg,
        };
        let start = State {
            alive: if n == 64 { u64::MAX } else { bit(n) - 1 },
            marked: 0,
            used: 0,
            adj: mask(g.adjacency()),
            members: (0..n).map(bit).collect(),
            label: vec![usize::MAX; n],
        };
        let mut searcher = Searcher {
            t: &target,
            nodes: 0,
            budget: self.budget,
            memo: HashSet::new(),
        };
        let Some(done) = searcher.search(start)? else {
            return Ok(None);
        };
        let mut sets = vec![Vec::new(); k];
        for v in ones(done.marked) {
            sets[done.label[v]] = ones(done.members[v]).collect();
        }
        Ok(Some(MinorModel::new(sets)))
    }

    /// Largest `k` with a `K_k` minor, together with a model for it.
    pub fn hadwiger_with_model(&self, g: &WeightedGraph) -> Result<(usize, MinorModel)> {
        let m = g.edge_count();
        let mut best = MinorModel::new(Vec::new());
        for k in 1..=g.vertex_count() {
            if k * (k - 1) / 2 > m {
                break;
            }
            match self.find(g, &named::complete(k))? {
                Some(model) => best = model,
                None => break,
            }
        }
        Ok((best.len(), best))
    }

    pub fn hadwiger(&self, g: &WeightedGraph) -> Result<usize> {
        Ok(self.hadwiger_with_model(g)?.0)
    }
}

/// [`MinorSearch::find`] with the default budget.
pub fn has_minor(g: &WeightedGraph, h: &WeightedGraph) -> Result<Option<MinorModel>> {
    MinorSearch::default().find(g, h)
}

/// Hadwiger number with the default budget.
pub fn hadwiger(g: &WeightedGraph) -> Result<usize> {
    MinorSearch::default().hadwiger(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minors::model::{check_model, verify_model};

    fn found(g: &WeightedGraph, h: &WeightedGraph) -> bool {
        match has_minor(g, h).unwrap() {
            Some(m) => {
                check_model(g, h, &m).unwrap();
                true
            }
            None => false,
        }
    }

    #[test]
    fn cliques_and_trees() {
        for k in 1..=6 {
            assert_eq!(hadwiger(&named::complete(k)).unwrap(), k);
        }
        assert_eq!(hadwiger(&named::path(6)).unwrap(), 2);
        assert_eq!(hadwiger(&named::cycle(7)).unwrap(), 3);
        assert_eq!(hadwiger(&WeightedGraph::new(3)).unwrap(), 1);
        assert_eq!(hadwiger(&WeightedGraph::new(0)).unwrap(), 0);
    }

    #[test]
    fn singleton_model_for_k5() {
        let m = has_minor(&named::complete(5), &named::complete(5))
            .unwrap()
            .unwrap();
        assert!(m.sets.iter().all(|s| s.len() == 1));
    }

    #[test]
    fn planar_graphs_have_no_k5() {
        for g in [named::cube(), named::grid(4, 4), named::complete(4)] {
            assert!(!found(&g, &named::complete(5)));
        }
        assert!(found(&named::grid(3, 3), &named::complete(4)));
    }

    #[test]
    fn petersen() {
        assert!(found(&named::petersen(), &named::complete(5)));
        assert!(!found(&named::petersen(), &named::complete(6)));
        assert_eq!(hadwiger(&named::petersen()).unwrap(), 5);
    }

    #[test]
    fn non_clique_targets() {
        let k33 = named::complete_bipartite(3, 3);
        assert!(found(&named::petersen(), &k33));
        assert!(!found(&named::cube(), &k33));
        assert!(found(&named::cube(), &named::cycle(8)));
        assert!(found(&named::grid(3, 3), &named::cycle(8)));
        assert!(!found(&named::cycle(5), &named::cycle(6)));
        let mut star = WeightedGraph::new(4);
        for i in 1..4 {
            star.add_edge(0, i, crate::graph::rat(1)).unwrap();
        }
        assert!(found(&named::path(5), &named::path(3)));
        assert!(!found(&named::path(5), &star));
        assert!(found(&named::complete(4), &WeightedGraph::new(4)));
    }

    #[test]
    fn budget_is_reported() {
        let s = MinorSearch::with_budget(1);
        assert_eq!(
            s.find(&named::petersen(), &named::complete(6)),
            Err(Error::BudgetExceeded(1))
        );
        let m = s
            .find(&named::complete(3), &named::complete(3))
            .unwrap()
            .unwrap();
        assert!(verify_model(&named::complete(3), &named::complete(3), &m));
    }
}
