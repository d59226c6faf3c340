//! Removing the weight -1 by polynomial interpolation over unweighted oracle calls.

use std::io::Write;
use std::process::{Command, Stdio};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::blowup::RingBlowup;
use crate::count::count_pm_exact;
use crate::error::{Error, Result};
use crate::format::serialize_graph;
use crate::graph::{Rational, WeightedGraph};

/// A planar two-terminal graph standing in for an edge of weight `w` between vertices 0 and 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightGadget {
    pub weight: u64,
    pub graph: WeightedGraph,
}

impl WeightGadget {
    pub const TERMINALS: (usize, usize) = (0, 1);
}

/// `w = 0`: no edge. `w = 1`: the edge itself. Otherwise `w` paths `0 - a_k - b_k - 1`: with
/// both terminals matched inside, exactly one path is used; with neither, every `a_k b_k` is.
pub fn integer_weight_gadget(w: i64) -> Result<WeightGadget> {
    if w < 0 {
        return Err(Error::NegativeWeight(w));
    }
    let graph = match w {
        0 => WeightedGraph::new(2),
        1 => WeightedGraph::from_edges(2, &[(0, 1)]),
        _ => {
            let mut g = WeightedGraph::new(2);
            for _ in 0..w {
                let a = g.add_vertex();
                let b = g.add_vertex();
                for (x, y) in [(0, a), (a, b), (b, 1)] {
                    g.add_edge(x, y, Rational::one())?;
                }
            }
            g
        }
    };
    Ok(WeightGadget {
        weight: w as u64,
        graph,
    })
}

/// An integer polynomial, constant term first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingPolynomial {
    pub coefficients: Vec<BigInt>,
}

impl MatchingPolynomial {
    pub fn degree(&self) -> usize {
        self.coefficients
            .iter()
            .rposition(|c| !c.is_zero())
            .unwrap_or(0)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coefficients
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// The polynomial of degree `< values.len()` with `p(k) = values[k]`. Fails when a
    /// coefficient is not an integer.
    pub fn interpolate(values: &[BigInt]) -> Result<Self> {
        let n = values.len();
        // Newton divided differences at nodes 0, 1, ..., n-1.
        let mut dd: Vec<Rational> = values.iter().cloned().map(Rational::from_integer).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                dd[i] = (&dd[i] - &dd[i - 1]) / Rational::from_integer(BigInt::from(level));
            }
        }
        // Expand Σ dd[i] Π_{j<i} (x - j) by Horner from the top.
        let mut coeffs: Vec<Rational> = vec![Rational::zero(); n.max(1)];
        for i in (0..n).rev() {
            let mut next = vec![Rational::zero(); n.max(1)];
            for (d, c) in coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if d + 1 < next.len() {
                    next[d + 1] += c;
                }
                next[d] -= c * Rational::from_integer(BigInt::from(i));
            }
            next[0] += &dd[i];
            coeffs = next;
        }
        let coefficients = coeffs
            .into_iter()
            .map(|c| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(Error::Oracle(format!(
                        "interpolated coefficient {c} is not an integer"
                    )))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MatchingPolynomial { coefficients })
    }
}

/// Counts perfect matchings of unweighted ring blowups.
pub trait CountOracle: Sync {
    fn count(&self, instance: &RingBlowup) -> Result<BigInt>;
}

/// The built-in exact counter.
#[derive(Clone, Copy, Debug, Default)]
pub struct ExactOracle;

impl CountOracle for ExactOracle {
    fn count(&self, instance: &RingBlowup) -> Result<BigInt> {
        let c = count_pm_exact(&instance.graph);
        if !c.is_integer() {
            return Err(Error::Oracle(format!("non-integral count {c}")));
        }
        Ok(c.to_integer())
    }
}

/// Runs a shell command per instance with the graph file on standard input and reads a decimal
/// integer from standard output.
#[derive(Clone, Debug)]
pub struct ExternalOracle {
    pub command: String,
}

impl CountOracle for ExternalOracle {
    fn count(&self, instance: &RingBlowup) -> Result<BigInt> {
        let mut child = Command::new("sh")
            .arg("-c")
            .arg(&self.command)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .spawn()
            .map_err(|e| Error::Oracle(format!("cannot start {:?}: {e}", self.command)))?;
        let input = serialize_graph(&instance.graph);
        let mut stdin = child.stdin.take().unwrap();
        let writer = std::thread::spawn(move || stdin.write_all(input.as_bytes()));
        let out = child
            .wait_with_output()
            .map_err(|e| Error::Oracle(format!("{:?}: {e}", self.command)))?;
        let _ = writer.join();
        if !out.status.success() {
            return Err(Error::Oracle(format!(
                "{:?} exited with {}",
                self.command, out.status
            )));
        }
        let text = String::from_utf8_lossy(&out.stdout);
        text.trim()
            .parse()
            .map_err(|_| Error::Oracle(format!("{:?} printed {:?}", self.command, text.trim())))
    }
}

impl<F> CountOracle for F
where
    F: Fn(&RingBlowup) -> Result<BigInt> + Sync,
{
    fn count(&self, instance: &RingBlowup) -> Result<BigInt> {
        self(instance)
    }
}

/// Edges of weight -1, after checking the weights are ±1 and avoid blowup vertices.
fn negative_edges(r: &RingBlowup) -> Result<Vec<(usize, usize)>> {
    let blown = r.blowup_vertices();
    let minus_one = -Rational::one();
    let mut out = Vec::new();
    for (u, v, w) in r.graph.edges() {
        if w.is_one() {
            continue;
        }
        if w != &minus_one {
            return Err(Error::OraclePrecondition(format!(
                "edge {u}-{v} has weight {w}, expected 1 or -1"
            )));
        }
        if blown.contains(&u) || blown.contains(&v) {
            return Err(Error::OraclePrecondition(format!(
                "edge {u}-{v} of weight -1 touches a blowup vertex"
            )));
        }
        out.push((u, v));
    }
    Ok(out)
}

/// `r` with every weight -1 edge replaced by [`integer_weight_gadget`]`(k)`. The gadget paths
/// run beside the reduct edge of the replaced edge, so the result is again a ring blowup.
pub fn evaluation_instance(r: &RingBlowup, k: u64) -> Result<RingBlowup> {
    let negative = negative_edges(r)?;
    let gadget = integer_weight_gadget(k as i64)?;
    let mut graph = WeightedGraph::new(r.graph.vertex_count());
    for (u, v, w) in r.graph.edges() {
        if w.is_one() {
            graph.add_edge(u, v, Rational::one())?;
        }
    }
    let mut reduct = r.reduct.clone();
    let mut projection = r.projection.clone();
    for &(u, v) in &negative {
        let mut map = vec![u, v];
        for _ in 2..gadget.graph.vertex_count() {
            map.push(graph.add_vertex());
            projection.push(reduct.add_vertex());
        }
        for (a, b, _) in gadget.graph.edges() {
            let (x, y) = (map[a], map[b]);
            graph.add_edge(x, y, Rational::one())?;
            reduct.ensure_edge(projection[x], projection[y])?;
        }
    }
    Ok(RingBlowup {
        graph,
        reduct,
        outer: r.outer.clone(),
        projection,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StripReport {
    /// Oracle answers `p(0), ..., p(d)`.
    pub samples: Vec<BigInt>,
    pub polynomial: MatchingPolynomial,
    /// `p(-1)`.
    pub value: Rational,
}

/// The ±1-weighted count of `r` computed from unweighted oracle calls only.
pub fn strip_weights(r: &RingBlowup, oracle: &dyn CountOracle) -> Result<Rational> {
    Ok(strip_weights_with(r, oracle, 1)?.value)
}

/// Evaluates `p(0..=d)` with `d = min(n/2, #(-1 edges))`, spreading the oracle calls over
/// `jobs` threads, and interpolates.
pub fn strip_weights_with(
    r: &RingBlowup,
    oracle: &dyn CountOracle,
    jobs: usize,
) -> Result<StripReport> {
    let negative = negative_edges(r)?;
    let d = (r.graph.vertex_count() / 2).min(negative.len());
    let points: Vec<u64> = (0..=d as u64).collect();
    let jobs = jobs.max(1).min(points.len());
    let mut results: Vec<Option<Result<BigInt>>> = vec![None; points.len()];
    if jobs == 1 {
        for (i, &k) in points.iter().enumerate() {
            results[i] = Some(evaluation_instance(r, k).and_then(|x| oracle.count(&x)));
        }
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..jobs)
                .map(|j| {
                    let points = &points;
                    scope.spawn(move || {
                        (j..points.len())
                            .step_by(jobs)
                            .map(|i| {
                                let res = evaluation_instance(r, points[i])
                                    .and_then(|x| oracle.count(&x));
                                (i, res)
                            })
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            for h in handles {
                for (i, res) in h.join().expect("oracle worker panicked") {
                    results[i] = Some(res);
                }
            }
        });
    }
    let samples = results
        .into_iter()
        .map(|x| x.expect("every point evaluated"))
        .collect::<Result<Vec<_>>>()?;
    let polynomial = MatchingPolynomial::interpolate(&samples)?;
    let value = Rational::from_integer(polynomial.eval(&-BigInt::one()));
    debug_assert!(samples.iter().all(|s| !s.is_negative()));
    Ok(StripReport {
        samples,
        polynomial,
        value,
    })
}
