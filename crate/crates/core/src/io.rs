//! Plain-text edge-list format.
//!
//! ```text
//! # optional comments anywhere
//! n m [bipartite s]
//! u v        (m lines, u < v)
//! ```

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(parse_err(1, "missing header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let (n, m, left) = match fields.as_slice() {
        [n, m] => (num(hline, n)?, num(hline, m)?, None),
        [n, m, "bipartite", s] => (num(hline, n)?, num(hline, m)?, Some(num(hline, s)?)),
        _ => return Err(parse_err(hline, "header must be `n m` or `n m bipartite s`")),
    };

    let mut edges = Vec::with_capacity(m);
    for (line, l) in lines {
        let mut it = l.split_whitespace();
        let (Some(u), Some(v), None) = (it.next(), it.next(), it.next()) else {
            return Err(parse_err(line, "edge line must be `u v`"));
        };
        let (u, v) = (num(line, u)?, num(line, v)?);
        if u >= v {
            return Err(parse_err(line, "edge must be written with u < v"));
        }
        if v >= n {
            return Err(parse_err(line, "vertex id out of range"));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(parse_err(hline, &format!("header promises {m} edges, found {}", edges.len())));
    }
    let g = Graph::from_edges(n, edges)?;
    match left {
        Some(s) => g.with_bipartition(s),
        None => Ok(g),
    }
}

/// Renders the graph with `comments` as leading `#` lines.
pub fn format_graph(g: &Graph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        for line in c.lines() {
            let _ = writeln!(out, "# {line}");
        }
    }
    match g.bipartition() {
        Some(s) => {
            let _ = writeln!(out, "{} {} bipartite {}", g.n(), g.m(), s);
        }
        None => {
            let _ = writeln!(out, "{} {}", g.n(), g.m());
        }
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<Graph> {
    parse_graph(&std::fs::read_to_string(path)?)
}

pub fn write_graph(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, format_graph(g, &[]))?;
    Ok(())
}

fn num(line: usize, tok: &str) -> Result<usize> {
    tok.parse().map_err(|_| parse_err(line, &format!("`{tok}` is not a vertex count or id")))
}

fn parse_err(line: usize, msg: &str) -> Error {
    Error::Parse { line, msg: msg.to_string() }
}
