//! Plain-text file formats.
//!
//! All formats are line based; `#` starts a comment and blank lines are
//! skipped. Complex files start with `n d` followed by one facet per line,
//! graph files start with `n` followed by one edge `i j` per line, and
//! representation files hold one `v a b` line per vertex with endpoints
//! written as integers or `p/q`.

use num_rational::Rational64;
use thiserror::Error;

use crate::graphs::Graph;
use crate::scomplex::{IntervalRep, SimplicialComplex};
use crate::vset::VertexSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("missing header line")]
    MissingHeader,
}

fn line_err(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Line { line, msg: msg.into() }
}

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(k, raw)| {
        let body = raw.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some((k + 1, body))
    })
}

fn parse_usizes(line: usize, body: &str) -> Result<Vec<usize>, FormatError> {
    body.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>().map_err(|_| line_err(line, format!("expected a non-negative integer, got `{tok}`")))
        })
        .collect()
}

pub fn parse_complex(text: &str) -> Result<SimplicialComplex, FormatError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or(FormatError::MissingHeader)?;
    let head = parse_usizes(hline, header)?;
    let [n, d] = head[..] else {
        return Err(line_err(hline, "header must be `n d`"));
    };
    let mut facets = Vec::new();
    for (line, body) in lines {
        let vs = parse_usizes(line, body)?;
        if vs.len() != d + 1 {
            return Err(line_err(line, format!("facet has {} vertices, expected {}", vs.len(), d + 1)));
        }
        if let Some(&v) = vs.iter().find(|&&v| v == 0 || v > n) {
            return Err(line_err(line, format!("vertex {v} outside 1..={n}")));
        }
        let f = VertexSet::from_vertices(vs.iter().copied());
        if f.len() != vs.len() {
            return Err(line_err(line, "repeated vertex in facet"));
        }
        facets.push(f);
    }
    SimplicialComplex::new(n, d, facets).map_err(|e| line_err(hline, e.to_string()))
}

pub fn render_complex(c: &SimplicialComplex) -> String {
    let mut out = format!("{} {}\n", c.n(), c.dim());
    for f in c.facets() {
        let vs: Vec<String> = f.iter().map(|v| v.to_string()).collect();
        out.push_str(&vs.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or(FormatError::MissingHeader)?;
    let head = parse_usizes(hline, header)?;
    let [n] = head[..] else {
        return Err(line_err(hline, "header must be `n`"));
    };
    let mut g = Graph::empty(n).map_err(|e| line_err(hline, e.to_string()))?;
    for (line, body) in lines {
        let vs = parse_usizes(line, body)?;
        let [u, v] = vs[..] else {
            return Err(line_err(line, "edge lines hold exactly two vertices"));
        };
        g.add_edge(u, v).map_err(|e| line_err(line, e.to_string()))?;
    }
    Ok(g)
}

pub fn render_graph(g: &Graph) -> String {
    let mut out = format!("{}\n", g.n());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

fn parse_endpoint(line: usize, tok: &str) -> Result<Rational64, FormatError> {
    tok.parse::<Rational64>().map_err(|_| line_err(line, format!("bad endpoint `{tok}`")))
}

/// Vertices must appear as `1, 2, ..., n` in order.
pub fn parse_interval_rep(text: &str) -> Result<IntervalRep, FormatError> {
    let mut intervals = Vec::new();
    for (line, body) in content_lines(text) {
        let toks: Vec<&str> = body.split_whitespace().collect();
        let [v, a, b] = toks[..] else {
            return Err(line_err(line, "expected `v a b`"));
        };
        let v: usize = v.parse().map_err(|_| line_err(line, format!("bad vertex `{v}`")))?;
        if v != intervals.len() + 1 {
            return Err(line_err(line, format!("expected vertex {}, got {v}", intervals.len() + 1)));
        }
        let (a, b) = (parse_endpoint(line, a)?, parse_endpoint(line, b)?);
        if a > b {
            return Err(line_err(line, "left endpoint above right endpoint"));
        }
        intervals.push((a, b));
    }
    IntervalRep::new(intervals).map_err(|e| line_err(0, e.to_string()))
}

pub fn render_interval_rep(rep: &IntervalRep) -> String {
    rep.to_string()
}
