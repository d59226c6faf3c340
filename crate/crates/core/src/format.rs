//! Plain-text graph file format.
//!
//! ```text
//! # optional comments
//! n m
//! u v w      (m lines; w is an integer or p/q)
//! ```
//!
//! Serialization is canonical: edges sorted lexicographically, weights in lowest terms,
//! integers printed without a denominator.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{Rational, WeightedGraph};

/// Formats an exact value as an integer when integral, otherwise as `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"-3"`, `"7"` or `"p/q"`. The error string describes the problem.
pub fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num: BigInt = num.parse().map_err(|_| format!("bad numerator {num:?}"))?;
    let den: BigInt = match den {
        Some(d) => d.parse().map_err(|_| format!("bad denominator {d:?}"))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err("zero denominator".into());
    }
    Ok(Rational::new(num, den))
}

/// Lines with comments stripped, paired with their 1-based line numbers; blank lines skipped.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = match line.find('#') {
            Some(p) => &line[..p],
            None => line,
        };
        let line = line.trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_usize(tok: &str, line: usize) -> Result<usize> {
    tok.parse().map_err(|_| Error::Syntax {
        line,
        msg: format!("expected a non-negative integer, found {tok:?}"),
    })
}

/// Parses a graph from an iterator of numbered content lines, consuming exactly the header and
/// `m` edge lines.
pub(crate) fn parse_graph_lines<'a, I>(lines: &mut I) -> Result<WeightedGraph>
where
    I: Iterator<Item = (usize, &'a str)>,
{
    let (hline, header) = lines.next().ok_or(Error::Syntax {
        line: 1,
        msg: "missing header \"n m\"".into(),
    })?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 2 {
        return Err(Error::Syntax {
            line: hline,
            msg: "header must be \"n m\"".into(),
        });
    }
    let n = parse_usize(toks[0], hline)?;
    let m = parse_usize(toks[1], hline)?;
    let mut g = WeightedGraph::new(n);
    let mut last_line = hline;
    for k in 0..m {
        let (line, body) = lines.next().ok_or(Error::Syntax {
            line: last_line + 1,
            msg: format!("expected {m} edge lines, found {k}"),
        })?;
        last_line = line;
        let toks: Vec<&str> = body.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(Error::Syntax {
                line,
                msg: "edge line must be \"u v w\"".into(),
            });
        }
        let u = parse_usize(toks[0], line)?;
        let v = parse_usize(toks[1], line)?;
        let w = parse_rational(toks[2]).map_err(|msg| {
            if msg == "zero denominator" {
                Error::Semantic { line, msg }
            } else {
                Error::Syntax { line, msg }
            }
        })?;
        g.add_edge(u, v, w).map_err(|e| Error::Semantic {
            line,
            msg: e.to_string(),
        })?;
    }
    Ok(g)
}

/// Parses a complete graph file; trailing content is a syntax error.
pub fn parse_graph(text: &str) -> Result<WeightedGraph> {
    let mut lines = content_lines(text);
    let g = parse_graph_lines(&mut lines)?;
    if let Some((line, _)) = lines.next() {
        return Err(Error::Syntax {
            line,
            msg: "unexpected content after the edge list".into(),
        });
    }
    Ok(g)
}

pub fn serialize_graph(g: &WeightedGraph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (u, v, w) in g.edges() {
        out.push_str(&format!("{u} {v} {}\n", format_rational(w)));
    }
    out
}
