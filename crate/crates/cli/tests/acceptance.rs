//! Acceptance suite: one PASS/FAIL line per criterion, with its runtime against a pinned limit.
//!
//! Run with `cargo test -p ringblow-cli --test acceptance`.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ringblow::count::{count_pm_exact, count_pm_fkt, count_pm_naive};
use ringblow::format::serialize_graph;
use ringblow::gadgets::{compute_signature, signed_count, DrawnGraph, SignCrossingGadget, Stub};
use ringblow::graph::{named, rat, ratio, Rational, WeightedGraph};
use ringblow::minors::{
    blowup, certify_simple_ring_blowup, check_certificate, check_clique_model,
    check_simple_ring_blowup, clique_sum, every_edge_in_k4, hadwiger, has_minor, make_simple,
    plane_catalogue, random_plane_graph, simple_ring_catalogue, z_graph, SimpleRing,
};
use ringblow::reduce::{
    build_ring_blowup_seeded, integer_weight_gadget, strip_weights_with, verify_ring_blowup,
    ExactOracle, RingBlowupBuild,
};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Duration, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c01_gadget_signature() -> Outcome {
    let g = SignCrossingGadget::shipped();
    let sig = compute_signature(&g.graph, g.attachments);
    let mask = |stubs: &[Stub]| stubs.iter().map(|s| s.bit()).sum::<usize>();
    let expected: Vec<(usize, i64)> = vec![
        (0, 1),
        (mask(&[Stub::E1, Stub::E2]), 1),
        (mask(&[Stub::F1, Stub::F2]), 1),
        (mask(&Stub::ALL), -1),
    ];
    for m in 0..16 {
        let want = expected
            .iter()
            .find(|(x, _)| *x == m)
            .map_or(0, |&(_, v)| v);
        ensure(sig.get(m) == &rat(want), || {
            format!("f(mask {m:04b}) = {}", sig.get(m))
        })?;
    }
    Ok(format!("16 values match; gadget has {} vertices", g.size()))
}

fn random_weighted(rng: &mut ChaCha8Rng, max_n: usize) -> WeightedGraph {
    loop {
        let n = rng.gen_range(2..=max_n);
        let mut g = WeightedGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(0.5) {
                    let (p, q) = *[(1, 1), (1, 1), (2, 1), (-1, 1), (1, 2)]
                        .choose(rng)
                        .unwrap();
                    g.add_edge(u, v, ratio(p, q)).unwrap();
                }
            }
        }
        if g.edge_count() >= 2 {
            return g;
        }
    }
}

fn random_pair(rng: &mut ChaCha8Rng, m: usize) -> (usize, usize) {
    let a = rng.gen_range(0..m);
    (a, (a + rng.gen_range(1..m)) % m)
}

fn count_with_gadgets(g: &WeightedGraph, pairs: &[(usize, usize)]) -> Rational {
    let mut d = DrawnGraph::from_graph(g);
    for &(a, b) in pairs {
        d.add_crossing(a, b).unwrap();
    }
    let crossed: BTreeSet<usize> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
    for id in crossed {
        if d.edge(id).unwrap().weight != rat(1) {
            d.move_weight_off_crossings(id).unwrap();
        }
    }
    let gadget = SignCrossingGadget::shipped();
    let ids: Vec<usize> = d.crossing_ids().collect();
    for c in ids {
        d.insert_gadget_in_place(c, &gadget).unwrap();
    }
    count_pm_exact(&d.graph())
}

fn gadget_trials(
    seed: u64,
    trials: usize,
    max_n: usize,
    pairs_per: std::ops::RangeInclusive<usize>,
    repeat: bool,
) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..trials {
        let g = random_weighted(&mut rng, max_n);
        let k = rng.gen_range(pairs_per.clone());
        let mut pairs: Vec<(usize, usize)> = (0..k)
            .map(|_| random_pair(&mut rng, g.edge_count()))
            .collect();
        if repeat {
            let again = pairs[rng.gen_range(0..pairs.len())];
            pairs.push(again);
        }
        let keys = g.edge_keys();
        let vertex_pairs: Vec<_> = pairs.iter().map(|&(a, b)| (keys[a], keys[b])).collect();
        let got = count_with_gadgets(&g, &pairs);
        let want = signed_count(&g, &vertex_pairs);
        ensure(got == want, || {
            format!("trial {t}: {got} != {want} for pairs {vertex_pairs:?}")
        })?;
    }
    Ok(format!("{trials}/{trials} exact"))
}

fn c02_single_crossing() -> Outcome {
    gadget_trials(2, 120, 10, 1..=1, false)
}

fn c03_multiple_crossings() -> Outcome {
    gadget_trials(3, 120, 9, 1..=2, true)
}

/// Random connected graph with even `n ≤ max_n` and at most `max_m` edges.
fn random_connected(rng: &mut ChaCha8Rng, max_n: usize, max_m: usize) -> WeightedGraph {
    let n = 2 * rng.gen_range(1..=max_n / 2);
    let mut g = WeightedGraph::new(n);
    for v in 1..n {
        let p = rng.gen_range(0..v);
        g.ensure_edge(v, p).unwrap();
    }
    let extra = rng.gen_range(0..=max_m.min(n * (n - 1) / 2) - (n - 1));
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    pairs.shuffle(rng);
    for (u, v) in pairs {
        if g.edge_count() >= n - 1 + extra {
            break;
        }
        g.ensure_edge(u, v).unwrap();
    }
    g
}

struct Suite {
    graphs: Vec<(String, WeightedGraph)>,
    builds: Vec<RingBlowupBuild>,
}

fn suite() -> Result<Suite, String> {
    let mut graphs = vec![
        ("C6".to_string(), named::cycle(6)),
        ("K4".to_string(), named::complete(4)),
        ("K3,3".to_string(), named::complete_bipartite(3, 3)),
        ("cube".to_string(), named::cube()),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for i in 0..56 {
        graphs.push((format!("random #{i}"), random_connected(&mut rng, 8, 10)));
    }
    let builds = graphs
        .iter()
        .map(|(name, g)| build_ring_blowup_seeded(g, 1).map_err(|e| format!("{name}: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Suite { graphs, builds })
}

fn c04_end_to_end(s: &Suite) -> Outcome {
    let anchors = [("C6", 2), ("K4", 3), ("K3,3", 6), ("cube", 9)];
    for ((name, g), b) in s.graphs.iter().zip(&s.builds) {
        let direct = count_pm_naive(g);
        let reduced = count_pm_exact(&b.blowup.graph);
        ensure(reduced == direct, || {
            format!("{name}: blowup {reduced} vs graph {direct}")
        })?;
        if let Some(&(_, v)) = anchors.iter().find(|(a, _)| a == name) {
            ensure(direct == rat(v), || format!("{name}: {direct}, anchor {v}"))?;
        }
    }
    Ok(format!("{} graphs exact, anchors 2 3 6 9", s.graphs.len()))
}

fn c05_structure(s: &Suite) -> Outcome {
    let mut largest = (0, 0);
    for ((name, _), b) in s.graphs.iter().zip(&s.builds) {
        let r = &b.blowup;
        ensure(verify_ring_blowup(r), || {
            format!("{name}: not a ring blowup")
        })?;
        let blown = r.blowup_vertices();
        for (u, v, w) in r.graph.edges() {
            ensure(w == &rat(1) || w == &rat(-1), || {
                format!("{name}: weight {w}")
            })?;
            ensure(
                w != &rat(-1) || (!blown.contains(&u) && !blown.contains(&v)),
                || format!("{name}: -1 edge {u}-{v} at a blowup vertex"),
            )?;
        }
        let (n, bound) = (r.graph.vertex_count(), b.vertex_bound());
        ensure(n <= bound, || {
            format!("{name}: {n} vertices over the bound {bound}")
        })?;
        largest = largest.max((n, bound));
    }
    Ok(format!(
        "largest output {} vertices (bound {})",
        largest.0, largest.1
    ))
}

fn c06_weight_stripping(s: &Suite) -> Outcome {
    let mut calls = 0;
    for ((name, _), b) in s.graphs.iter().zip(&s.builds) {
        let report =
            strip_weights_with(&b.blowup, &ExactOracle, 4).map_err(|e| format!("{name}: {e}"))?;
        let direct = count_pm_exact(&b.blowup.graph);
        ensure(report.value == direct, || {
            format!("{name}: stripped {} vs {direct}", report.value)
        })?;
        calls += report.samples.len();
    }
    for w in 0..=5i64 {
        let gadget = integer_weight_gadget(w).map_err(|e| e.to_string())?;
        let g = &gadget.graph;
        let both = count_pm_naive(g);
        let (none, _) = g.delete_vertices(&[0, 1]).unwrap();
        let (one, _) = g.delete_vertices(&[0]).unwrap();
        ensure(both == rat(w), || {
            format!("weight gadget {w}: {both} with both terminals")
        })?;
        ensure(count_pm_naive(&none) == rat(1), || {
            format!("weight gadget {w}: inner part")
        })?;
        ensure(count_pm_naive(&one) == rat(0), || {
            format!("weight gadget {w}: one terminal")
        })?;
    }
    Ok(format!(
        "{} outputs exact with {calls} oracle calls; weight gadgets 0..=5",
        s.builds.len()
    ))
}

fn c07_fkt() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let trials = 60;
    for t in 0..trials {
        let n = rng.gen_range(3..=16);
        let k = rng.gen_range(3..=n);
        let sample = random_plane_graph(rng.gen(), k, n - k, false, 0.75);
        let mut g = WeightedGraph::new(n);
        for (u, v, _) in sample.graph.edges() {
            g.add_edge(u, v, ratio(rng.gen_range(0..5), rng.gen_range(1..4)))
                .unwrap();
        }
        let fkt = count_pm_fkt(&g).map_err(|e| format!("trial {t}: {e}"))?;
        let exact = count_pm_exact(&g);
        ensure(fkt == exact, || {
            format!("trial {t}: fkt {fkt} vs exact {exact}")
        })?;
    }
    Ok(format!(
        "{trials}/{trials} planar graphs on 3..=16 vertices exact"
    ))
}

fn c08_minor_facts() -> Outcome {
    for k in 0..=6 {
        let eta = hadwiger(&named::complete(k)).map_err(|e| e.to_string())?;
        ensure(eta == k, || format!("η(K{k}) = {eta}"))?;
    }
    let mut planar: Vec<WeightedGraph> = plane_catalogue(9, 3, 8)
        .into_iter()
        .map(|s| s.graph)
        .collect();
    planar.extend([named::cube(), named::grid(4, 4), named::grid(3, 5)]);
    for g in &planar {
        ensure(
            has_minor(g, &named::complete(5))
                .map_err(|e| e.to_string())?
                .is_none(),
            || format!("K5 found in a planar graph {g:?}"),
        )?;
    }
    let z = z_graph();
    ensure((z.vertex_count(), z.edge_count()) == (9, 30), || {
        format!(
            "Z has {} vertices and {} edges",
            z.vertex_count(),
            z.edge_count()
        )
    })?;
    ensure(every_edge_in_k4(&z), || "an edge of Z lies in no K4".into())?;
    ensure(
        has_minor(&z, &named::complete(8))
            .map_err(|e| e.to_string())?
            .is_none(),
        || "K8 in Z".into(),
    )?;
    Ok(format!(
        "η(K_k) = k for k ≤ 6; no K5 in {} planar graphs; Z: 9 vertices, 30 edges, no K8",
        planar.len()
    ))
}

fn c09_clique_sums() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let random_graph = |rng: &mut ChaCha8Rng, n: usize| {
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|_| rng.gen_bool(0.6))
            .collect();
        WeightedGraph::from_edges(n, &edges)
    };
    let clique = |rng: &mut ChaCha8Rng, g: &WeightedGraph, size: usize| {
        let mut order: Vec<usize> = (0..g.vertex_count()).collect();
        order.shuffle(rng);
        let mut c: Vec<usize> = Vec::new();
        for v in order {
            if c.len() < size && c.iter().all(|&u| g.has_edge(u, v)) {
                c.push(v);
            }
        }
        c
    };
    let mut done = 0;
    let mut tight = 0;
    while done < 220 {
        let (a, b) = (rng.gen_range(1..=7), rng.gen_range(1..=7));
        let (l, r) = (random_graph(&mut rng, a), random_graph(&mut rng, b));
        let size = rng.gen_range(0..=3.min(a).min(b));
        let (sl, sr) = (clique(&mut rng, &l, size), clique(&mut rng, &r, size));
        let s = sl.len().min(sr.len());
        if a + b - s > 10 {
            continue;
        }
        let shared: Vec<(usize, usize)> = sl[..s]
            .iter()
            .copied()
            .zip(sr[..s].iter().copied())
            .collect();
        let deletions: Vec<(usize, usize)> = (0..s)
            .flat_map(|i| (i + 1..s).map(move |j| (i, j)))
            .filter(|_| rng.gen_bool(0.3))
            .map(|(i, j)| (sl[i], sl[j]))
            .collect();
        let sum = clique_sum(&l, &r, &shared, &deletions).map_err(|e| e.to_string())?;
        let eta = |g: &WeightedGraph| hadwiger(g).map_err(|e| e.to_string());
        let (el, er, es) = (eta(&l)?, eta(&r)?, eta(&sum.graph)?);
        ensure(es <= el.max(er), || {
            format!("η = {es} > max({el}, {er}) for {l:?} ⊕ {r:?} on {shared:?}")
        })?;
        tight += usize::from(es == el.max(er));
        done += 1;
    }
    Ok(format!(
        "{done}/{done} sums within the bound ({tight} with equality)"
    ))
}

fn c10_simple_rings() -> Outcome {
    let catalogue = simple_ring_catalogue(9, 6, 10);
    let mut splits = 0;
    let mut sevens = 0;
    for q in &catalogue {
        let cert = certify_simple_ring_blowup(q).map_err(|e| format!("{q:?}: {e}"))?;
        check_certificate(&cert, q).map_err(|e| format!("{q:?}: certificate rejected: {e}"))?;
        let eta = hadwiger(&q.blowup().graph).map_err(|e| e.to_string())?;
        ensure(eta <= 7, || format!("{q:?}: blowup has η = {eta}"))?;
        splits += cert.split_count();
        sevens += usize::from(eta == 7);
    }
    let (r, m) = plane_catalogue(7, 4, 2)
        .into_iter()
        .find_map(|s| {
            let simple = SimpleRing::new(s.graph.clone(), s.outer.clone()).is_ok();
            let r = blowup(&s.graph, &s.outer);
            let m = has_minor(&r.graph, &named::complete(7)).ok()??;
            (!simple).then_some((r, m))
        })
        .ok_or("no non-simple ring blowup with a K7 minor in the plane catalogue")?;
    let (out, model) = make_simple(&r, &m).map_err(|e| e.to_string())?;
    check_simple_ring_blowup(&out)?;
    check_clique_model(&out.graph, &model)?;
    ensure(model.len() == 7, || format!("model of K{}", model.len()))?;
    Ok(format!(
        "{} rings certified ({splits} splits), η ≤ 7 on all, {sevens} reach 7; K7 carried from {} to {} vertices",
        catalogue.len(),
        r.graph.vertex_count(),
        out.graph.vertex_count()
    ))
}

fn c11_determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("ringblow-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let file = dir.join("k33.graph");
    std::fs::write(&file, serialize_graph(&named::complete_bipartite(3, 3)))
        .map_err(|e| e.to_string())?;
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_ringblow"))
            .arg("pipeline")
            .arg(&file)
            .env_remove("RB_SEED")
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    let _ = std::fs::remove_dir_all(&dir);
    ensure(a.status.success(), || {
        String::from_utf8_lossy(&a.stdout).into_owned()
    })?;
    ensure(a.stdout == b.stdout, || "outputs differ".into())?;
    let text = String::from_utf8_lossy(&a.stdout);
    ensure(
        text.contains("direct: 6\n") && text.contains("reduced: 6\n"),
        || text.to_string(),
    )?;
    Ok(format!("{} identical bytes, both values 6", a.stdout.len()))
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let t = Instant::now();
    let suite = suite();
    let suite_time = t.elapsed();
    let with_suite = |f: fn(&Suite) -> Outcome| {
        let s = &suite;
        move || match s {
            Ok(s) => f(s),
            Err(e) => Err(format!("suite construction failed: {e}")),
        }
    };
    let criteria: Vec<Criterion> = vec![
        ("gadget signature", secs(1), Box::new(c01_gadget_signature)),
        (
            "single crossing equals signed count",
            secs(30),
            Box::new(c02_single_crossing),
        ),
        (
            "multiple and repeated crossings",
            secs(30),
            Box::new(c03_multiple_crossings),
        ),
        (
            "end-to-end reduction",
            secs(600),
            Box::new(with_suite(c04_end_to_end)),
        ),
        (
            "structural output contract",
            secs(60),
            Box::new(with_suite(c05_structure)),
        ),
        (
            "weight stripping",
            secs(600),
            Box::new(with_suite(c06_weight_stripping)),
        ),
        ("FKT oracle", secs(60), Box::new(c07_fkt)),
        ("minor facts", secs(120), Box::new(c08_minor_facts)),
        ("clique-sum bound", secs(300), Box::new(c09_clique_sums)),
        (
            "simple ring pipeline",
            secs(900),
            Box::new(c10_simple_rings),
        ),
        ("determinism", secs(60), Box::new(c11_determinism)),
    ];
    println!(
        "building the reduction suite took {:.2}s",
        suite_time.as_secs_f64()
    );
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        // Criterion 4 also pays for building the shared suite.
        let elapsed = start.elapsed() + if i == 3 { suite_time } else { Duration::ZERO };
        let (ok, detail) = match result {
            Ok(d) if elapsed <= *limit => (true, d),
            Ok(d) => (false, format!("{d}; over the time limit")),
            Err(e) => (false, e),
        };
        failed += usize::from(!ok);
        println!(
            "{} {:>2} {name}: {:.2}s (limit {}s) {detail}",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
