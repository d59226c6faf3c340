//! Naive enumeration of perfect matchings, kept deliberately simple for use as a test oracle.

use num_traits::{One, Zero};

use crate::graph::{Rational, WeightedGraph};

/// Calls `visit` once per perfect matching with its edges as `(u, v)` pairs, `u < v`.
pub fn for_each_perfect_matching<F: FnMut(&[(usize, usize)])>(g: &WeightedGraph, mut visit: F) {
    let n = g.vertex_count();
    if n % 2 == 1 {
        return;
    }
    let adj = g.adjacency();
    let mut matched = vec![false; n];
    let mut chosen = Vec::with_capacity(n / 2);
    recurse(&adj, &mut matched, &mut chosen, &mut visit);
}

fn recurse<F: FnMut(&[(usize, usize)])>(
    adj: &[Vec<usize>],
    matched: &mut [bool],
    chosen: &mut Vec<(usize, usize)>,
    visit: &mut F,
) {
    let Some(u) = matched.iter().position(|&m| !m) else {
        visit(chosen);
        return;
    };
    matched[u] = true;
    for &v in &adj[u] {
        if !matched[v] {
            matched[v] = true;
            chosen.push((u.min(v), u.max(v)));
            recurse(adj, matched, chosen, visit);
            chosen.pop();
            matched[v] = false;
        }
    }
    matched[u] = false;
}

/// Weighted perfect-matching sum by plain enumeration.
pub fn count_pm_naive(g: &WeightedGraph) -> Rational {
    let mut total = Rational::zero();
    for_each_perfect_matching(g, |m| {
        let mut p = Rational::one();
        for &(u, v) in m {
            p *= g.weight(u, v).unwrap();
        }
        total += p;
    });
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{named, rat};

    #[test]
    fn counts_small_families() {
        assert_eq!(count_pm_naive(&named::complete(6)), rat(15));
        assert_eq!(count_pm_naive(&named::cycle(8)), rat(2));
        assert_eq!(count_pm_naive(&named::grid(2, 3)), rat(3));
        assert_eq!(count_pm_naive(&named::cube()), rat(9));
        assert_eq!(count_pm_naive(&WeightedGraph::new(0)), rat(1));
    }
}
