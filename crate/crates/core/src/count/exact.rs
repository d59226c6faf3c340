//! Exact weighted perfect-matching counter.
//!
//! The graph is first shrunk by exact local rules (isolated vertices, pendant edges and
//! degree-2 folding), then every connected component is counted by a dynamic programme over a
//! vertex elimination order. The programme state is the set of not-yet-processed vertices that
//! are already matched to a processed one, which is always a subset of the current frontier.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::graph::{Rational, WeightedGraph};

/// Σ over perfect matchings of the product of edge weights.
pub fn count_pm_exact(g: &WeightedGraph) -> Rational {
    let n = g.vertex_count();
    if n % 2 == 1 {
        return Rational::zero();
    }
    let mut adj: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); n];
    for (u, v, w) in g.edges() {
        if !w.is_zero() {
            adj[u].insert(v, w.clone());
            adj[v].insert(u, w.clone());
        }
    }
    let Some((factor, adj, alive)) = kernelize(adj) else {
        return Rational::zero();
    };
    let mut total = factor;
    for comp in components(&adj, &alive) {
        if comp.len() % 2 == 1 {
            return Rational::zero();
        }
        total *= count_component(&adj, &comp);
        if total.is_zero() {
            break;
        }
    }
    total
}

type Adj = Vec<BTreeMap<usize, Rational>>;

fn remove_vertex(adj: &mut Adj, alive: &mut [bool], x: usize) {
    let nbrs: Vec<usize> = adj[x].keys().copied().collect();
    for y in nbrs {
        adj[y].remove(&x);
    }
    adj[x].clear();
    alive[x] = false;
}

/// Applies the reduction rules until none fires. Returns the accumulated factor and the
/// remaining graph, or `None` when the count is certainly zero.
fn kernelize(mut adj: Adj) -> Option<(Rational, Adj, Vec<bool>)> {
    let n = adj.len();
    let mut alive = vec![true; n];
    let mut factor = Rational::one();
    let mut queue: Vec<usize> = (0..n).rev().collect();
    while let Some(x) = queue.pop() {
        if !alive[x] {
            continue;
        }
        match adj[x].len() {
            0 => return None,
            1 => {
                let (&y, w) = adj[x].iter().next().unwrap();
                factor *= w.clone();
                let touched: Vec<usize> = adj[y].keys().copied().filter(|&z| z != x).collect();
                remove_vertex(&mut adj, &mut alive, x);
                remove_vertex(&mut adj, &mut alive, y);
                queue.extend(touched);
            }
            2 => {
                let mut it = adj[x].iter();
                let (&y, alpha) = it.next().unwrap();
                let (&z, beta) = it.next().unwrap();
                let (alpha, beta) = (alpha.clone(), beta.clone());
                // x matched to y forces z elsewhere (factor alpha), and symmetrically.
                let mut merged: BTreeMap<usize, Rational> = BTreeMap::new();
                for (&u, w) in &adj[z] {
                    if u != x && u != y {
                        *merged.entry(u).or_insert_with(Rational::zero) += &alpha * w;
                    }
                }
                for (&u, w) in &adj[y] {
                    if u != x && u != z {
                        *merged.entry(u).or_insert_with(Rational::zero) += &beta * w;
                    }
                }
                remove_vertex(&mut adj, &mut alive, x);
                remove_vertex(&mut adj, &mut alive, z);
                let old: Vec<usize> = adj[y].keys().copied().collect();
                for u in old {
                    adj[u].remove(&y);
                }
                adj[y].clear();
                for (u, w) in merged {
                    if !w.is_zero() {
                        adj[u].insert(y, w.clone());
                        adj[y].insert(u, w);
                    }
                    queue.push(u);
                }
                queue.push(y);
            }
            _ => {}
        }
    }
    Some((factor, adj, alive))
}

fn components(adj: &Adj, alive: &[bool]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if !alive[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let x = comp[i];
            i += 1;
            for &y in adj[x].keys() {
                if !seen[y] {
                    seen[y] = true;
                    comp.push(y);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Arithmetic used by the dynamic programme; `None` signals overflow.
trait Acc: Clone {
    fn from_big(x: &BigInt) -> Option<Self>;
    fn unit() -> Self;
    fn add(&self, other: &Self) -> Option<Self>;
    fn mul(&self, other: &Self) -> Option<Self>;
    fn into_big(self) -> BigInt;
}

impl Acc for i128 {
    fn from_big(x: &BigInt) -> Option<Self> {
        x.to_i128()
    }
    fn unit() -> Self {
        1
    }
    fn add(&self, other: &Self) -> Option<Self> {
        self.checked_add(*other)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn into_big(self) -> BigInt {
        BigInt::from(self)
    }
}

impl Acc for BigInt {
    fn from_big(x: &BigInt) -> Option<Self> {
        Some(x.clone())
    }
    fn unit() -> Self {
        BigInt::one()
    }
    fn add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn into_big(self) -> BigInt {
        self
    }
}

fn count_component(adj: &Adj, comp: &[usize]) -> Rational {
    let local: HashMap<usize, usize> = comp.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut denom = BigInt::one();
    for &v in comp {
        for w in adj[v].values() {
            denom = denom.lcm(w.denom());
        }
    }
    let mut ladj: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); comp.len()];
    for (i, &v) in comp.iter().enumerate() {
        for (u, w) in &adj[v] {
            let scaled = (w * Rational::from_integer(denom.clone())).to_integer();
            ladj[i].push((local[u], scaled));
        }
    }
    let order = elimination_order(&ladj);
    let value = match frontier_dp::<i128>(&ladj, &order) {
        Some(v) => v,
        None => frontier_dp::<BigInt>(&ladj, &order).expect("big integers do not overflow"),
    };
    let scale = num_traits::pow(denom, comp.len() / 2);
    Rational::new(value, scale)
}

/// Greedy order keeping the frontier (unprocessed vertices adjacent to processed ones) small.
/// Several start vertices are tried and the order with the cheapest frontier profile wins.
fn elimination_order(adj: &[Vec<(usize, BigInt)>]) -> Vec<usize> {
    let n = adj.len();
    let mut starts: Vec<usize> = (0..n).collect();
    starts.sort_by_key(|&v| (adj[v].len(), v));
    starts.truncate(6);
    if let Some(far) = farthest_from(adj, 0) {
        starts.push(far);
    }
    let mut best: Option<(Vec<usize>, (usize, u128))> = None;
    for s in starts {
        let (order, profile) = greedy_order(adj, s);
        if best.as_ref().is_none_or(|(_, p)| profile < *p) {
            best = Some((order, profile));
        }
    }
    best.map(|(o, _)| o).unwrap_or_default()
}

fn farthest_from(adj: &[Vec<(usize, BigInt)>], s: usize) -> Option<usize> {
    if adj.is_empty() {
        return None;
    }
    let mut dist = vec![usize::MAX; adj.len()];
    dist[s] = 0;
    let mut queue = std::collections::VecDeque::from([s]);
    let mut last = s;
    while let Some(x) = queue.pop_front() {
        last = x;
        for &(y, _) in &adj[x] {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    Some(last)
}

/// Returns the order and its cost `(max frontier, Σ 2^frontier)`.
fn greedy_order(adj: &[Vec<(usize, BigInt)>], start: usize) -> (Vec<usize>, (usize, u128)) {
    let n = adj.len();
    let mut done = vec![false; n];
    let mut in_frontier = vec![false; n];
    let mut frontier: Vec<usize> = Vec::new();
    let mut order = Vec::with_capacity(n);
    let mut max_f = 0usize;
    let mut sum: u128 = 0;
    let mut next = Some(start);
    while order.len() < n {
        let v = match next.take() {
            Some(v) => v,
            None => {
                // Vertex whose processing grows the frontier least; prefer frontier vertices.
                let candidates: Vec<usize> = if frontier.is_empty() {
                    (0..n).filter(|&x| !done[x]).collect()
                } else {
                    frontier.clone()
                };
                *candidates
                    .iter()
                    .min_by_key(|&&x| {
                        let growth = adj[x]
                            .iter()
                            .filter(|(y, _)| !done[*y] && !in_frontier[*y])
                            .count();
                        (growth, x)
                    })
                    .unwrap()
            }
        };
        done[v] = true;
        order.push(v);
        if in_frontier[v] {
            in_frontier[v] = false;
            frontier.retain(|&x| x != v);
        }
        for &(y, _) in &adj[v] {
            if !done[y] && !in_frontier[y] {
                in_frontier[y] = true;
                frontier.push(y);
            }
        }
        max_f = max_f.max(frontier.len());
        sum = sum.saturating_add(1u128 << frontier.len().min(120));
    }
    (order, (max_f, sum))
}

/// Forward dynamic programme over the elimination order.
fn frontier_dp<T: Acc>(adj: &[Vec<(usize, BigInt)>], order: &[usize]) -> Option<BigInt> {
    let n = adj.len();
    let mut rank = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    let mut weights: Vec<Vec<(usize, T)>> = Vec::with_capacity(n);
    for v in 0..n {
        let mut list = Vec::new();
        for (u, w) in &adj[v] {
            list.push((*u, T::from_big(w)?));
        }
        weights.push(list);
    }
    // A state is the sorted list of later vertices that are already matched.
    let mut states: HashMap<Vec<u32>, T> = HashMap::from([(Vec::new(), T::unit())]);
    for (i, &v) in order.iter().enumerate() {
        let mut next: HashMap<Vec<u32>, T> = HashMap::with_capacity(states.len());
        for (state, value) in states {
            if let Ok(pos) = state.binary_search(&(v as u32)) {
                let mut s = state;
                s.remove(pos);
                merge_into(&mut next, s, value)?;
                continue;
            }
            for (u, w) in &weights[v] {
                if rank[*u] <= i || state.binary_search(&(*u as u32)).is_ok() {
                    continue;
                }
                let mut s = state.clone();
                let pos = s.binary_search(&(*u as u32)).unwrap_err();
                s.insert(pos, *u as u32);
                merge_into(&mut next, s, value.mul(w)?)?;
            }
        }
        states = next;
        if states.is_empty() {
            return Some(BigInt::zero());
        }
    }
    Some(
        states
            .remove(&Vec::new())
            .map(Acc::into_big)
            .unwrap_or_else(BigInt::zero),
    )
}

fn merge_into<T: Acc>(map: &mut HashMap<Vec<u32>, T>, key: Vec<u32>, value: T) -> Option<()> {
    match map.get_mut(&key) {
        Some(slot) => *slot = slot.add(&value)?,
        None => {
            map.insert(key, value);
        }
    }
    Some(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::enumerate::count_pm_naive;
    use crate::graph::{named, rat, ratio};

    #[test]
    fn spec_examples() {
        assert_eq!(count_pm_exact(&named::complete(4)), rat(3));
        assert_eq!(count_pm_exact(&named::cycle(6)), rat(2));
        assert_eq!(count_pm_exact(&named::complete_bipartite(3, 3)), rat(6));
        let mut g = WeightedGraph::new(2);
        g.add_edge(0, 1, ratio(-1, 2)).unwrap();
        assert_eq!(count_pm_exact(&g), ratio(-1, 2));
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(count_pm_exact(&WeightedGraph::new(0)), rat(1));
        assert_eq!(count_pm_exact(&WeightedGraph::new(2)), rat(0));
        assert_eq!(count_pm_exact(&named::complete(5)), rat(0));
        assert_eq!(count_pm_exact(&named::cube()), rat(9));
        assert_eq!(count_pm_exact(&named::petersen()), rat(6));
    }

    #[test]
    fn complete_graphs_give_double_factorials() {
        let mut df = 1i64;
        for k in 1..=6 {
            df *= 2 * k - 1;
            assert_eq!(count_pm_exact(&named::complete(2 * k as usize)), rat(df));
        }
    }

    #[test]
    fn large_grid_is_fast_and_exact() {
        // Domino tilings of the 8x8 board.
        assert_eq!(count_pm_exact(&named::grid(8, 8)), rat(12_988_816));
        let big = count_pm_exact(&named::grid(12, 12));
        assert_eq!(big.to_integer().to_string(), "53060477521960000");
    }

    #[test]
    fn folding_handles_weights() {
        // Path 0-1-2-3 with weights a, b, c: only matching {01, 23}.
        let mut g = WeightedGraph::new(4);
        g.add_edge(0, 1, ratio(2, 3)).unwrap();
        g.add_edge(1, 2, rat(5)).unwrap();
        g.add_edge(2, 3, rat(-7)).unwrap();
        assert_eq!(count_pm_exact(&g), ratio(-14, 3));
        let mut c = named::cycle(6);
        c.set_weight(0, 1, rat(-1)).unwrap();
        assert_eq!(count_pm_exact(&c), count_pm_naive(&c));
    }
}
