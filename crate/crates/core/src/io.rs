//! Edge-list text formats.
//!
//! ```text
//! # comment
//! vertices 4
//! 0 1 0.25
//! 1 2 0.75
//! ```
//!
//! The header `vertices <n>` comes first; each following line is `u v`
//! (unweighted) or `u v w`. Blank lines and `#` lines are ignored. When a
//! weighted digraph is read, unweighted lines get weight 1.0.

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::persistence::{format_real, parse_real, WeightedDigraph};

struct EdgeLine {
    line: usize,
    u: usize,
    v: usize,
    weight: Option<f64>,
}

fn parse_lines(text: &str) -> Result<(usize, Vec<EdgeLine>)> {
    let mut vertex_count = None;
    let mut edges = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let bad = |message: String| Error::Parse { line, message };
        let fields: Vec<&str> = content.split_whitespace().collect();
        if vertex_count.is_none() {
            match fields.as_slice() {
                ["vertices", n] => {
                    vertex_count = Some(
                        n.parse::<usize>()
                            .map_err(|_| bad(format!("bad vertex count {n:?}")))?,
                    );
                    continue;
                }
                _ => return Err(bad("expected header `vertices <n>`".into())),
            }
        }
        let index = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| bad(format!("bad vertex index {s:?}")))
        };
        let (u, v, weight) = match fields.as_slice() {
            [u, v] => (index(u)?, index(v)?, None),
            [u, v, w] => {
                let w = parse_real(w).ok_or_else(|| bad(format!("bad weight {w:?}")))?;
                (index(u)?, index(v)?, Some(w))
            }
            _ => return Err(bad("expected `u v` or `u v w`".into())),
        };
        edges.push(EdgeLine { line, u, v, weight });
    }
    let n = vertex_count.ok_or(Error::Parse {
        line: 0,
        message: "missing header `vertices <n>`".into(),
    })?;
    // duplicates and range checks with line numbers
    let mut seen = std::collections::HashSet::new();
    for e in &edges {
        if e.u >= n || e.v >= n {
            return Err(Error::Parse {
                line: e.line,
                message: format!("vertex out of range for {n} vertices"),
            });
        }
        if !seen.insert((e.u, e.v)) {
            return Err(Error::Parse {
                line: e.line,
                message: format!("duplicate edge {} {}", e.u, e.v),
            });
        }
    }
    Ok((n, edges))
}

/// Reads an edge list, ignoring any weights.
pub fn parse_digraph(text: &str) -> Result<Digraph> {
    let (n, lines) = parse_lines(text)?;
    let edges: Vec<_> = lines.iter().map(|e| (e.u, e.v)).collect();
    Digraph::new(n, &edges, false)
}

pub fn parse_weighted(text: &str) -> Result<WeightedDigraph> {
    let (n, lines) = parse_lines(text)?;
    let edges: Vec<_> = lines
        .iter()
        .map(|e| ((e.u, e.v), e.weight.unwrap_or(1.0)))
        .collect();
    WeightedDigraph::new(n, &edges)
}

pub fn write_digraph(g: &Digraph) -> String {
    let mut out = format!("vertices {}\n", g.vertex_count());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Weighted edge list with weights at 17 significant digits.
pub fn write_weighted(w: &WeightedDigraph) -> String {
    let mut out = format!("vertices {}\n", w.graph().vertex_count());
    for (&(u, v), &x) in w.graph().edges().iter().zip(w.weights()) {
        out.push_str(&format!("{u} {v} {}\n", format_real(x)));
    }
    out
}
