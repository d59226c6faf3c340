use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use ringblow::format::{parse_graph, serialize_graph};
use ringblow::graph::named;
use ringblow::minors::{blowup, has_minor, plane_catalogue, verify_model, MinorModel, SimpleRing};
use ringblow::reduce::{verify_ring_blowup, RingBlowup};
use ringblow::WeightedGraph;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ringblow"))
        .args(args)
        .env_remove("RB_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    stdout(&out)
}

fn put(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn graph_file(dir: &TempDir, name: &str, g: &WeightedGraph) -> String {
    put(dir, name, &serialize_graph(g))
        .to_str()
        .unwrap()
        .to_string()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn count_engines() {
    let dir = TempDir::new().unwrap();
    let c6 = graph_file(&dir, "c6", &named::cycle(6));
    let k33 = graph_file(&dir, "k33", &named::complete_bipartite(3, 3));
    let k5 = graph_file(&dir, "k5", &named::complete(5));
    for engine in ["brute", "fkt", "auto"] {
        assert_eq!(ok(&["count", "--engine", engine, &c6]), "2\n");
    }
    assert_eq!(ok(&["count", &k33]), "6\n");
    assert_eq!(ok(&["count", "--engine", "brute", &k33]), "6\n");
    assert_eq!(ok(&["count", &k5]), "0\n");
    let out = run(&["count", "--engine", "fkt", &k33]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not planar"));
}

#[test]
fn weighted_counts_print_fractions() {
    let dir = TempDir::new().unwrap();
    let f = put(&dir, "w", "4 4\n0 1 1/2\n1 2 1\n2 3 1/3\n0 3 -1\n");
    assert_eq!(ok(&["count", s(&f)]), "-5/6\n");
}

#[test]
fn reduce_outputs() {
    let dir = TempDir::new().unwrap();
    let c6 = graph_file(&dir, "c6", &named::cycle(6));
    let text = ok(&["reduce", &c6]);
    let r = RingBlowup::parse(&text).unwrap();
    assert!(verify_ring_blowup(&r));
    assert_eq!(r.graph, named::cycle(6));

    let k4 = graph_file(&dir, "k4", &named::complete(4));
    let out = dir.path().join("k4.rblow");
    let svg = dir.path().join("k4.svg");
    ok(&["reduce", &k4, "-o", s(&out), "--svg", s(&svg)]);
    let r = RingBlowup::parse(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(verify_ring_blowup(&r));
    let svg = std::fs::read_to_string(&svg).unwrap();
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
    assert!(svg.trim_end().ends_with("</svg>"));

    let k33 = graph_file(&dir, "k33", &named::complete_bipartite(3, 3));
    let out = dir.path().join("k33.rblow");
    ok(&["reduce", &k33, "-o", s(&out)]);
    assert_eq!(ok(&["count", s(&out)]), "6\n");
    assert_eq!(ok(&["strip-weights", s(&out)]), "6\n");
    assert_eq!(ok(&["strip-weights", s(&out), "--jobs", "3"]), "6\n");
    let cmd = format!("extern:{} count /dev/stdin", env!("CARGO_BIN_EXE_ringblow"));
    assert_eq!(ok(&["strip-weights", s(&out), "--oracle", &cmd]), "6\n");
    assert_eq!(
        run(&["strip-weights", s(&out), "--oracle", "magic"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn weighted_input_is_refused_by_reduce() {
    let dir = TempDir::new().unwrap();
    let f = put(&dir, "w", "2 1\n0 1 2\n");
    assert_eq!(run(&["reduce", s(&f)]).status.code(), Some(2));
}

#[test]
fn pipeline_passes_and_is_deterministic() {
    let dir = TempDir::new().unwrap();
    for (g, value) in [
        (named::complete_bipartite(3, 3), "6"),
        (named::cycle(6), "2"),
        (named::complete(4), "3"),
    ] {
        let f = graph_file(&dir, "g", &g);
        let first = ok(&["pipeline", &f]);
        assert!(first.contains(&format!("direct: {value}\n")));
        assert!(first.contains(&format!("reduced: {value}\n")));
        assert!(first.ends_with("PASS\n"));
        assert_eq!(ok(&["pipeline", &f]), first);
    }
    let k33 = graph_file(&dir, "k33", &named::complete_bipartite(3, 3));
    let a = run(&["reduce", &k33]);
    let b = run(&["reduce", &k33]);
    assert_eq!(a.stdout, b.stdout);
    let seeded = Command::new(env!("CARGO_BIN_EXE_ringblow"))
        .args(["pipeline", &k33])
        .env("RB_SEED", "7")
        .output()
        .unwrap();
    assert!(stdout(&seeded).ends_with("PASS\n"));
}

#[test]
fn gadget_verification() {
    let text = ok(&["gadget", "verify"]);
    assert!(text.contains("{} 1\n"));
    assert!(text.contains("{e1,e2,f1,f2} -1\n"));
    assert!(text.ends_with("PASS\n"));
    let dir = TempDir::new().unwrap();
    let shipped = include_str!("../../core/data/sign_crossing.gadget");
    let flipped = put(&dir, "g", &shipped.replace("0 1 -1", "0 1 1"));
    let out = run(&["gadget", "verify", s(&flipped)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).ends_with("FAIL\n"));
}

#[test]
fn minor_search() {
    let dir = TempDir::new().unwrap();
    let p = graph_file(&dir, "petersen", &named::petersen());
    let text = ok(&["minor", "--clique", "5", &p]);
    let (head, model) = text.split_once('\n').unwrap();
    assert_eq!(head, "present");
    let m = MinorModel::parse(model).unwrap();
    assert!(verify_model(&named::petersen(), &named::complete(5), &m));
    assert_eq!(ok(&["minor", "--clique", "6", &p]), "absent\n");
    assert!(ok(&["minor", &p]).starts_with("hadwiger 5\n"));
    let out = run(&["minor", "--clique", "6", "--budget", "1", &p]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn certificates_round_trip_through_files() {
    let dir = TempDir::new().unwrap();
    let mut g = named::cycle(7);
    let w = g.add_vertex();
    for v in 0..4 {
        g.add_edge(v, w, ringblow::graph::rat(1)).unwrap();
    }
    let ring = SimpleRing::new(g, (0..7).collect()).unwrap();
    let f = put(&dir, "ring", &ring.serialize());
    let cert = dir.path().join("ring.cert");
    let summary = ok(&["certify-simple-ring", s(&f), "-o", s(&cert)]);
    assert!(summary.starts_with("valid: "));
    assert_eq!(
        ok(&["certify-simple-ring", s(&f), "--check", s(&cert)]),
        "valid\n"
    );
    assert_eq!(
        ok(&["certify-simple-ring", s(&f)]),
        std::fs::read_to_string(&cert).unwrap()
    );

    let text = std::fs::read_to_string(&cert).unwrap();
    let last = text.lines().last().unwrap();
    let tampered = put(
        &dir,
        "bad.cert",
        &text.replace(last, &last.replace("edges=0-1,", "edges=")),
    );
    let out = run(&["certify-simple-ring", s(&f), "--check", s(&tampered)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("invalid: "));
}

#[test]
fn make_simple_end_to_end() {
    let dir = TempDir::new().unwrap();
    let (r, m) = plane_catalogue(7, 4, 2)
        .into_iter()
        .find_map(|p| {
            let simple = SimpleRing::new(p.graph.clone(), p.outer.clone()).is_ok();
            let r = blowup(&p.graph, &p.outer);
            let m = has_minor(&r.graph, &named::complete(7)).unwrap()?;
            (!simple).then_some((r, m))
        })
        .unwrap();
    let input = put(&dir, "in.rblow", &r.serialize());
    let model = put(&dir, "in.model", &m.serialize());
    let out = dir.path().join("out.rblow");
    let out_model = dir.path().join("out.model");
    let summary = ok(&[
        "make-simple",
        s(&input),
        "--model",
        s(&model),
        "-o",
        s(&out),
        "--model-out",
        s(&out_model),
    ]);
    assert!(summary.ends_with("K7 model\n"));
    let simple = RingBlowup::parse(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let m = MinorModel::parse(&std::fs::read_to_string(&out_model).unwrap()).unwrap();
    assert!(verify_model(&simple.graph, &named::complete(7), &m));
    assert!(ok(&[
        "certify-simple-ring",
        s(&out),
        "-o",
        s(&dir.path().join("c"))
    ])
    .starts_with("valid"));

    let bad = put(&dir, "bad.model", "0: 0\n1: 0\n");
    assert_eq!(
        run(&["make-simple", s(&input), "--model", s(&bad)])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn parse_errors_name_the_line() {
    let dir = TempDir::new().unwrap();
    let f = put(&dir, "g", "3 2\n0 1 1\n1 x 1\n");
    let out = run(&["count", s(&f)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    assert!(parse_graph("3 2\n0 1 1\n1 x 1\n").is_err());
}
