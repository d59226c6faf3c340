use proptest::prelude::*;
use ringblow::count::{count_pm_exact, count_pm_fkt, count_pm_naive, is_planar};
use ringblow::graph::{rat, ratio, Rational, WeightedGraph};

fn arb_weighted(max_n: usize, neg: bool) -> impl Strategy<Value = WeightedGraph> {
    (0..=max_n).prop_flat_map(move |n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        let len = pairs.len();
        let lo = if neg { -3i64 } else { 1 };
        proptest::collection::vec((0u8..3, lo..4, 1i64..4), len).prop_map(move |picks| {
            let mut g = WeightedGraph::new(n);
            for (&(u, v), (keep, p, q)) in pairs.iter().zip(picks) {
                if keep > 0 {
                    g.add_edge(u, v, ratio(p, q)).unwrap();
                }
            }
            g
        })
    })
}

/// Random planar graphs: edges are offered in random order and kept while the graph stays planar.
fn arb_planar(max_n: usize) -> impl Strategy<Value = WeightedGraph> {
    (2..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        (
            Just(pairs).prop_shuffle(),
            proptest::collection::vec((0i64..5, 1i64..4), 64),
        )
            .prop_map(move |(pairs, ws)| {
                let mut g = WeightedGraph::new(n);
                for (k, (u, v)) in pairs.into_iter().enumerate() {
                    let (p, q) = ws[k % ws.len()];
                    g.add_edge(u, v, ratio(p, q)).unwrap();
                    if !is_planar(&g) {
                        g.remove_edge(u, v).unwrap();
                    }
                }
                g
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exact_agrees_with_enumeration(g in arb_weighted(10, true)) {
        prop_assert_eq!(count_pm_exact(&g), count_pm_naive(&g));
    }

    #[test]
    fn fkt_agrees_with_exact_on_planar_nonnegative(g in arb_planar(16)) {
        prop_assert_eq!(count_pm_fkt(&g).unwrap(), count_pm_exact(&g));
    }

    #[test]
    fn disjoint_union_multiplies(g in arb_weighted(7, true), h in arb_weighted(7, true)) {
        let u = g.disjoint_union(&h);
        prop_assert_eq!(count_pm_exact(&u), count_pm_exact(&g) * count_pm_exact(&h));
    }

    #[test]
    fn odd_order_or_isolated_vertex_gives_zero(g in arb_weighted(9, true)) {
        if g.vertex_count() % 2 == 1 {
            prop_assert_eq!(count_pm_exact(&g), rat(0));
        }
        let with_isolated = g.disjoint_union(&WeightedGraph::new(1));
        let two = g.disjoint_union(&WeightedGraph::new(2));
        prop_assert_eq!(count_pm_exact(&with_isolated), rat(0));
        prop_assert_eq!(count_pm_exact(&two), rat(0));
    }

    #[test]
    fn affine_in_each_edge_weight(g in arb_weighted(9, true), pick in any::<prop::sample::Index>()) {
        let edges = g.edge_keys();
        prop_assume!(!edges.is_empty());
        let (u, v) = edges[pick.index(edges.len())];
        let w = g.weight(u, v).unwrap().clone();
        let mut doubled = g.clone();
        doubled.set_weight(u, v, &w * rat(2)).unwrap();
        // Count with uv forced: delete both endpoints, multiply by w.
        let (rest, _) = g.delete_vertices(&[u, v]).unwrap();
        let forced: Rational = count_pm_exact(&rest) * &w;
        prop_assert_eq!(count_pm_exact(&doubled), count_pm_exact(&g) + forced);
    }
}
