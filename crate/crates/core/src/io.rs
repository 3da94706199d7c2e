//! Line-oriented text formats: slope lists, slope-pair corpora, graphs and
//! vertex sets. Blank lines and `#` comments are ignored everywhere.

use crate::farey::Slope;
use crate::graph::FiniteGraph;
use crate::{Error, Result};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap().trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn at_line<T>(line: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::Parse(format!("line {line}: {e}")))
}

/// One slope per line.
pub fn parse_slope_list(text: &str) -> Result<Vec<Slope>> {
    content_lines(text)
        .map(|(n, line)| at_line(n, line.parse()))
        .collect()
}

/// One pair per line, `p/q r/s`.
pub fn parse_slope_pairs(text: &str) -> Result<Vec<(Slope, Slope)>> {
    content_lines(text)
        .map(|(n, line)| {
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields[..] {
                [x, y] => Ok((at_line(n, x.parse())?, at_line(n, y.parse())?)),
                _ => Err(Error::Parse(format!("line {n}: expected two slopes"))),
            }
        })
        .collect()
}

/// Comma-separated slopes, as printed for geodesics.
pub fn parse_slope_csv(text: &str) -> Result<Vec<Slope>> {
    text.trim().split(',').map(str::parse).collect()
}

fn parse_usize(n: usize, field: &str) -> Result<usize> {
    field
        .parse()
        .map_err(|_| Error::Parse(format!("line {n}: {field:?} is not a vertex id")))
}

/// First line `n m`, then `m` lines `u v` with 0-based vertex ids.
pub fn parse_graph(text: &str) -> Result<FiniteGraph> {
    let mut lines = content_lines(text);
    let (hn, header) = lines
        .next()
        .ok_or_else(|| Error::Parse("empty graph file".into()))?;
    let header: Vec<&str> = header.split_whitespace().collect();
    let [n, m] = header[..] else {
        return Err(Error::Parse(format!("line {hn}: expected `n m`")));
    };
    let (n, m) = (parse_usize(hn, n)?, parse_usize(hn, m)?);
    let mut edges = Vec::with_capacity(m);
    for (ln, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [u, v] = fields[..] else {
            return Err(Error::Parse(format!("line {ln}: expected `u v`")));
        };
        edges.push((parse_usize(ln, u)?, parse_usize(ln, v)?));
    }
    if edges.len() != m {
        return Err(Error::Parse(format!(
            "header announces {m} edges, found {}",
            edges.len()
        )));
    }
    FiniteGraph::from_edges(n, &edges)
}

/// One vertex id per line.
pub fn parse_vertex_set(text: &str) -> Result<Vec<usize>> {
    content_lines(text)
        .map(|(n, line)| parse_usize(n, line))
        .collect()
}
