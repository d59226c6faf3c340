use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use ringblow::count::{count_pm_exact, count_pm_fkt, is_planar};
use ringblow::format::{format_rational, parse_graph};
use ringblow::gadgets::{GadgetSignature, SignCrossingGadget};
use ringblow::graph::named;
use ringblow::minors::{
    certify_simple_ring_blowup, check_certificate, check_simple_ring_blowup, make_simple,
    parse_certificate, serialize_certificate, MinorModel, MinorSearch, SimpleRing, Step,
    DEFAULT_BUDGET,
};
use ringblow::reduce::{
    build_ring_blowup_seeded, ring_blowup_svg, strip_weights_with, verify_ring_blowup, CountOracle,
    ExactOracle, ExternalOracle, RingBlowup,
};
use ringblow::WeightedGraph;

/// Perfect-matching counting through ring blowups, and clique minors of ring blowups.
#[derive(Parser)]
#[command(name = "ringblow", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count perfect matchings of a graph file (or of the graph of a ring blowup file).
    Count {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        engine: Engine,
    },
    /// Reduce an unweighted graph to a ring blowup with weights ±1.
    Reduce {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Count a ±1-weighted ring blowup using only unweighted counts of ring blowups.
    StripWeights {
        file: PathBuf,
        /// `exact`, or `extern:CMD` to run CMD per instance (graph file on stdin, count on stdout).
        #[arg(long, default_value = "exact")]
        oracle: String,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Reduce, strip weights and compare with the direct count.
    Pipeline { file: PathBuf },
    /// Gadget utilities.
    Gadget {
        #[command(subcommand)]
        action: GadgetAction,
    },
    /// Search for a clique minor, or compute the Hadwiger number when no clique size is given.
    Minor {
        file: PathBuf,
        #[arg(long)]
        clique: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Certify that the blowup of a simple ring has no K8 minor.
    CertifySimpleRing {
        /// A simple ring file (graph plus `outer` line) or a ring blowup file.
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Check an existing certificate instead of producing one.
        #[arg(long)]
        check: Option<PathBuf>,
    },
    /// Turn a ring blowup with a clique model into a simple ring blowup with a clique model.
    MakeSimple {
        file: PathBuf,
        #[arg(long)]
        model: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        model_out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GadgetAction {
    /// Recompute the signature of a gadget file (default: the shipped sign-crossing gadget).
    Verify { file: Option<PathBuf> },
}

#[derive(Clone, Copy, ValueEnum)]
enum Engine {
    Brute,
    Fkt,
    Auto,
}

/// What a command prints and whether its check passed.
struct Outcome {
    text: String,
    pass: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, pass: true }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn seed() -> Result<u64> {
    match std::env::var("RB_SEED") {
        Ok(s) => s
            .trim()
            .parse()
            .with_context(|| format!("RB_SEED={s:?} is not an integer")),
        Err(_) => Ok(1),
    }
}

/// A graph file, or the graph of a ring blowup file.
fn load_graph(path: &Path) -> Result<WeightedGraph> {
    let text = read(path)?;
    match parse_graph(&text) {
        Ok(g) => Ok(g),
        Err(e) => match RingBlowup::parse(&text) {
            Ok(r) => Ok(r.graph),
            Err(_) => Err(e).with_context(|| format!("parsing {}", path.display())),
        },
    }
}

fn load_blowup(path: &Path) -> Result<RingBlowup> {
    let text = read(path)?;
    RingBlowup::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load_ring(path: &Path) -> Result<SimpleRing> {
    let text = read(path)?;
    if let Ok(r) = RingBlowup::parse(&text) {
        return Ok(SimpleRing::new(r.reduct, r.outer)?);
    }
    SimpleRing::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn count(file: &Path, engine: Engine) -> Result<Outcome> {
    let g = load_graph(file)?;
    let value = match engine {
        Engine::Brute => count_pm_exact(&g),
        Engine::Fkt => count_pm_fkt(&g)?,
        Engine::Auto if g.has_nonnegative_weights() && is_planar(&g) => count_pm_fkt(&g)?,
        Engine::Auto => count_pm_exact(&g),
    };
    Ok(Outcome::ok(format!("{}\n", format_rational(&value))))
}

fn reduce(file: &Path, output: Option<&Path>, svg: Option<&Path>) -> Result<Outcome> {
    let g = load_graph(file)?;
    let build = build_ring_blowup_seeded(&g, seed()?)?;
    let r = &build.blowup;
    if !verify_ring_blowup(r) {
        bail!("construction produced an invalid ring blowup");
    }
    if let Some(path) = svg {
        write(path, &ring_blowup_svg(&build))?;
    }
    let text = r.serialize();
    match output {
        Some(path) => {
            write(path, &text)?;
            Ok(Outcome::ok(format!(
                "ring blowup: {} vertices, {} edges, {} reduct vertices, {} gadgets\n",
                r.graph.vertex_count(),
                r.graph.edge_count(),
                r.reduct.vertex_count(),
                build.gadgets.len()
            )))
        }
        None => Ok(Outcome::ok(text)),
    }
}

fn oracle(spec: &str) -> Result<Box<dyn CountOracle>> {
    match spec.split_once(':') {
        None if spec == "exact" => Ok(Box::new(ExactOracle)),
        Some(("extern", cmd)) if !cmd.trim().is_empty() => Ok(Box::new(ExternalOracle {
            command: cmd.to_string(),
        })),
        _ => bail!("unknown oracle {spec:?}; use exact or extern:CMD"),
    }
}

fn strip(file: &Path, oracle_spec: &str, jobs: usize) -> Result<Outcome> {
    let r = load_blowup(file)?;
    let report = strip_weights_with(&r, oracle(oracle_spec)?.as_ref(), jobs)?;
    Ok(Outcome::ok(format!("{}\n", format_rational(&report.value))))
}

fn pipeline(file: &Path) -> Result<Outcome> {
    let g = load_graph(file)?;
    if g.vertex_count() % 2 == 1 {
        bail!("odd number of vertices");
    }
    let direct = count_pm_exact(&g);
    let build = build_ring_blowup_seeded(&g, seed()?)?;
    let r = &build.blowup;
    let report = strip_weights_with(r, &ExactOracle, 1)?;
    let pass = verify_ring_blowup(r) && report.value == direct;
    let mut text = String::new();
    writeln!(
        text,
        "ring blowup: {} vertices, {} edges, {} gadgets",
        r.graph.vertex_count(),
        r.graph.edge_count(),
        build.gadgets.len()
    )?;
    writeln!(text, "oracle calls: {}", report.samples.len())?;
    writeln!(text, "direct: {}", format_rational(&direct))?;
    writeln!(text, "reduced: {}", format_rational(&report.value))?;
    writeln!(text, "{}", if pass { "PASS" } else { "FAIL" })?;
    Ok(Outcome { text, pass })
}

fn gadget_verify(file: Option<&Path>) -> Result<Outcome> {
    let gadget = match file {
        Some(path) => SignCrossingGadget::parse(&read(path)?)?,
        None => SignCrossingGadget::shipped(),
    };
    let sig = gadget.signature();
    let outer = gadget.has_outer_order();
    let pass = outer && sig == GadgetSignature::sign_crossing();
    let mut text = format!(
        "gadget: {} vertices, {} edges\n{sig}",
        gadget.graph.vertex_count(),
        gadget.graph.edge_count()
    );
    writeln!(
        text,
        "attachments on one face in order e1 f1 e2 f2: {}",
        if outer { "yes" } else { "no" }
    )?;
    writeln!(text, "{}", if pass { "PASS" } else { "FAIL" })?;
    Ok(Outcome { text, pass })
}

fn minor(file: &Path, clique: Option<usize>, budget: u64) -> Result<Outcome> {
    let g = load_graph(file)?.unweighted_copy();
    let search = MinorSearch::with_budget(budget);
    let text = match clique {
        Some(k) => match search.find(&g, &named::complete(k))? {
            Some(m) => format!("present\n{}", m.serialize()),
            None => "absent\n".to_string(),
        },
        None => {
            let (eta, m) = search.hadwiger_with_model(&g)?;
            format!("hadwiger {eta}\n{}", m.serialize())
        }
    };
    Ok(Outcome::ok(text))
}

fn certify(file: &Path, output: Option<&Path>, check: Option<&Path>) -> Result<Outcome> {
    let q = load_ring(file)?;
    if let Some(path) = check {
        let cert = parse_certificate(&read(path)?)?;
        return Ok(match check_certificate(&cert, &q) {
            Ok(()) => Outcome::ok("valid\n".into()),
            Err(e) => Outcome {
                text: format!("invalid: {e}\n"),
                pass: false,
            },
        });
    }
    let cert = certify_simple_ring_blowup(&q)?;
    if let Err(e) = check_certificate(&cert, &q) {
        bail!("produced certificate does not check: {e}");
    }
    let text = serialize_certificate(&cert);
    let Some(path) = output else {
        return Ok(Outcome::ok(text));
    };
    write(path, &text)?;
    let mut verdicts: Vec<String> = cert
        .leaves()
        .iter()
        .map(|(_, v)| v.tag().to_string())
        .collect();
    verdicts.sort();
    let supergraph = matches!(cert.step, Step::Supergraph(_));
    Ok(Outcome::ok(format!(
        "valid: {} splits, leaves {}{}\n",
        cert.split_count(),
        verdicts.join(" "),
        if supergraph {
            ", after triangulating"
        } else {
            ""
        }
    )))
}

fn simple(
    file: &Path,
    model: &Path,
    output: Option<&Path>,
    model_out: Option<&Path>,
) -> Result<Outcome> {
    let r = load_blowup(file)?;
    let m = MinorModel::parse(&read(model)?)?;
    let (out, out_model) = make_simple(&r, &m)?;
    if let Err(e) = check_simple_ring_blowup(&out) {
        bail!("output is not a simple ring blowup: {e}");
    }
    let mut text = String::new();
    match output {
        Some(path) => write(path, &out.serialize())?,
        None => text.push_str(&out.serialize()),
    }
    match model_out {
        Some(path) => write(path, &out_model.serialize())?,
        None => {
            text.push_str("model\n");
            text.push_str(&out_model.serialize());
        }
    }
    if output.is_some() && model_out.is_some() {
        writeln!(
            text,
            "simple ring blowup: {} vertices, K{} model",
            out.graph.vertex_count(),
            out_model.len()
        )?;
    }
    Ok(Outcome::ok(text))
}

fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Count { file, engine } => count(&file, engine),
        Command::Reduce { file, output, svg } => reduce(&file, output.as_deref(), svg.as_deref()),
        Command::StripWeights { file, oracle, jobs } => strip(&file, &oracle, jobs),
        Command::Pipeline { file } => pipeline(&file),
        Command::Gadget {
            action: GadgetAction::Verify { file },
        } => gadget_verify(file.as_deref()),
        Command::Minor {
            file,
            clique,
            budget,
        } => minor(&file, clique, budget),
        Command::CertifySimpleRing {
            file,
            output,
            check,
        } => certify(&file, output.as_deref(), check.as_deref()),
        Command::MakeSimple {
            file,
            model,
            output,
            model_out,
        } => simple(&file, &model, output.as_deref(), model_out.as_deref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{}", out.text);
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
