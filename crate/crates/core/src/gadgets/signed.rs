//! Reference oracle for gadget insertion: matchings weighted by crossing signs.

use num_traits::{One, Zero};

use crate::count::for_each_perfect_matching;
use crate::graph::{edge_key, Rational, WeightedGraph};

/// `Σ_M Π_i χ(e_i, f_i)(M) Π_{e∈M} w(e)` by enumeration, where `χ(e, f)(M) = -1` exactly when
/// both `e` and `f` lie in `M`. Pairs are given as vertex pairs.
pub fn signed_count(g: &WeightedGraph, pairs: &[((usize, usize), (usize, usize))]) -> Rational {
    let pairs: Vec<((usize, usize), (usize, usize))> = pairs
        .iter()
        .map(|&((a, b), (c, d))| (edge_key(a, b), edge_key(c, d)))
        .collect();
    let mut total = Rational::zero();
    for_each_perfect_matching(g, |m| {
        let mut p = Rational::one();
        for &(u, v) in m {
            p *= g.weight(u, v).unwrap();
        }
        let negatives = pairs
            .iter()
            .filter(|(e, f)| m.contains(e) && m.contains(f))
            .count();
        if negatives % 2 == 1 {
            p = -p;
        }
        total += p;
    });
    total
}
