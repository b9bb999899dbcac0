//! Text formats: graphs (`u v` per line, optional `n N` header), constraint
//! files and witness lines. `#` starts a comment anywhere on a line.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::constraints::ConstraintSet;
use crate::embedding::CrossingWitness;
use crate::graph::{edge, Edge, Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

/// Non-empty lines with comments stripped, numbered from 1.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let body = l.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn number(line: usize, tok: &str) -> Result<usize, ParseError> {
    tok.parse()
        .map_err(|_| err(line, format!("expected a nonnegative integer, found `{tok}`")))
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut seen: BTreeMap<Edge, usize> = BTreeMap::new();
    let mut max_id: Option<Vertex> = None;
    for (ln, tok) in lines(text) {
        match tok.as_slice() {
            ["n", count] => {
                if header.is_some() {
                    return Err(err(ln, "second `n` header"));
                }
                header = Some((number(ln, count)?, ln));
            }
            [u, v] => {
                let (u, v) = (number(ln, u)?, number(ln, v)?);
                if u == v {
                    return Err(err(ln, format!("self-loop at vertex {u}")));
                }
                if let Some(first) = seen.insert(edge(u, v), ln) {
                    return Err(err(ln, format!("duplicate edge {u} {v} (first on line {first})")));
                }
                max_id = max_id.max(Some(u.max(v)));
            }
            _ => return Err(err(ln, "expected `u v` or `n N`")),
        }
    }
    let n = match (header, max_id) {
        (Some((n, ln)), Some(m)) if m >= n => return Err(err(ln, format!("vertex {m} exceeds header count {n}"))),
        (Some((n, _)), _) => n,
        (None, m) => m.map_or(0, |m| m + 1),
    };
    Ok(Graph::new(n, seen.into_keys()).expect("edges were checked while parsing"))
}

/// Graph text that `parse_graph` reads back to the same graph.
pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Constraint lines: `uncrossable u v`, `forbid u1 v1 u2 v2`, `color c u v`.
/// Once any color line appears, edges without one get color 1.
pub fn parse_constraints(text: &str, g: &Graph) -> Result<ConstraintSet, ParseError> {
    let mut cs = ConstraintSet::default();
    let mut colors: BTreeMap<Edge, u32> = BTreeMap::new();
    let known = |ln: usize, u: usize, v: usize| -> Result<Edge, ParseError> {
        if u < g.n() && v < g.n() && g.has_edge(u, v) {
            Ok(edge(u, v))
        } else {
            Err(err(ln, format!("unknown edge {u} {v}")))
        }
    };
    for (ln, tok) in lines(text) {
        match tok.as_slice() {
            ["uncrossable", u, v] => {
                let e = known(ln, number(ln, u)?, number(ln, v)?)?;
                cs.uncrossable.insert(e);
            }
            ["forbid", a, b, c, d] => {
                let e = known(ln, number(ln, a)?, number(ln, b)?)?;
                let f = known(ln, number(ln, c)?, number(ln, d)?)?;
                cs.forbid(e, f);
            }
            ["color", c, u, v] => {
                let c = u32::try_from(number(ln, c)?).map_err(|_| err(ln, "color out of range"))?;
                let e = known(ln, number(ln, u)?, number(ln, v)?)?;
                colors.insert(e, c);
            }
            _ => return Err(err(ln, "expected `uncrossable u v`, `forbid u1 v1 u2 v2` or `color c u v`")),
        }
    }
    if !colors.is_empty() {
        for &e in g.edges() {
            colors.entry(e).or_insert(1);
        }
        cs.colors = Some(colors);
    }
    Ok(cs)
}

/// Reads every `cross u1 v1 u2 v2` line and ignores all other lines, so a
/// text report can be fed back as a witness file.
pub fn parse_witness(text: &str) -> Result<CrossingWitness, ParseError> {
    let mut pairs = Vec::new();
    for (ln, tok) in lines(text) {
        if tok[0] != "cross" {
            continue;
        }
        let [_, a, b, c, d] = tok.as_slice() else {
            return Err(err(ln, "expected `cross u1 v1 u2 v2`"));
        };
        pairs.push((
            (number(ln, a)?, number(ln, b)?),
            (number(ln, c)?, number(ln, d)?),
        ));
    }
    Ok(CrossingWitness::new(pairs))
}
