//! Uniform local finiteness on ordinary finite graphs.
//!
//! A graph of maximum valency `V` has balls of size at most `sum_{i<=l} V^i`,
//! so a vertex set that avoids `k` pairwise `l`-separated points is covered by
//! `k - 1` such balls. [`greedy_separated`] realizes both sides of that
//! dichotomy with certificates.

use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::{Error, Result};

/// Simple undirected graph on `0..n` with sorted neighbour lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGraph {
    adj: Vec<Vec<usize>>,
}

impl FiniteGraph {
    /// Builds a graph from an edge list; duplicate edges are merged.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<FiniteGraph> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Precondition(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::Precondition(format!("self-loop at {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(FiniteGraph { adj })
    }

    /// The path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> FiniteGraph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        FiniteGraph::from_edges(n, &edges).unwrap()
    }

    pub fn complete(n: usize) -> FiniteGraph {
        let edges: Vec<_> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        FiniteGraph::from_edges(n, &edges).unwrap()
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Breadth-first distances from `source`; `None` outside its component.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.adj.len()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Connected components, each sorted, in order of least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.adj.len()];
        let mut out = Vec::new();
        for v in 0..self.adj.len() {
            if seen[v] {
                continue;
            }
            let mut comp: Vec<usize> = self
                .distances_from(v)
                .iter()
                .enumerate()
                .filter_map(|(i, d)| d.map(|_| i))
                .collect();
            for &u in &comp {
                seen[u] = true;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.adj.len() {
            Ok(())
        } else {
            Err(Error::Precondition(format!("vertex {v} out of range")))
        }
    }
}

pub fn max_valency(g: &FiniteGraph) -> usize {
    g.adj.iter().map(Vec::len).max().unwrap_or(0)
}

/// `N_r(x)`: vertices within distance `r` of `x`.
pub fn ball(g: &FiniteGraph, x: usize, r: usize) -> Result<BTreeSet<usize>> {
    g.check_vertex(x)?;
    Ok(g.distances_from(x)
        .into_iter()
        .enumerate()
        .filter_map(|(v, d)| d.filter(|&d| d <= r).map(|_| v))
        .collect())
}

/// `C_r(x)`: vertices at distance exactly `r` from `x`.
pub fn circle(g: &FiniteGraph, x: usize, r: usize) -> Result<BTreeSet<usize>> {
    g.check_vertex(x)?;
    Ok(g.distances_from(x)
        .into_iter()
        .enumerate()
        .filter_map(|(v, d)| (d == Some(r)).then_some(v))
        .collect())
}

/// `(k - 1) * sum_{i=0}^{l} V^i`, the largest vertex set that can avoid `k`
/// pairwise `l`-separated vertices in a graph of valency at most `V`.
pub fn ulf_bound(valency: u64, l: u64, k: u64) -> BigUint {
    let v = BigUint::from(valency);
    let mut term = BigUint::one();
    let mut sum = BigUint::zero();
    for _ in 0..=l {
        sum += &term;
        term *= &v;
    }
    sum * BigUint::from(k.saturating_sub(1))
}

/// Outcome of a greedy separation over an arbitrary distance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", content = "points", rename_all = "snake_case")]
pub enum Separation<T> {
    /// `k` items pairwise more than `l` apart.
    Witness(Vec<T>),
    /// A maximal `l`-separated set of fewer than `k` items; every item is
    /// within `l` of one of them.
    Covered(Vec<T>),
}

/// Greedily grows a maximal pairwise `> l` subset of `items` in the given
/// order, stopping as soon as it reaches `k` elements.
pub fn greedy_separated_by<T: Clone, F>(items: &[T], l: u64, k: usize, mut dist: F) -> Separation<T>
where
    F: FnMut(&T, &T) -> u64,
{
    let mut chosen: Vec<T> = Vec::new();
    for item in items {
        if chosen.iter().all(|c| dist(c, item) > l) {
            chosen.push(item.clone());
            if chosen.len() == k {
                return Separation::Witness(chosen);
            }
        }
    }
    Separation::Covered(chosen)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BallCoverCertificate {
    pub centers: Vec<usize>,
    pub radius: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum GraphDichotomy {
    Witness { vertices: Vec<usize> },
    Covered(BallCoverCertificate),
}

/// The separated-set / ball-cover dichotomy for a vertex set `a`, scanning
/// vertices in ascending id order.
pub fn greedy_separated(g: &FiniteGraph, a: &[usize], l: u64, k: usize) -> Result<GraphDichotomy> {
    if l == 0 || k < 2 {
        return Err(Error::Precondition(format!("need l > 0 and k > 1, got l={l}, k={k}")));
    }
    let set: BTreeSet<usize> = a.iter().copied().collect();
    for &v in &set {
        g.check_vertex(v)?;
    }
    let vertices: Vec<usize> = set.into_iter().collect();
    let Some(&first) = vertices.first() else {
        return Ok(GraphDichotomy::Covered(BallCoverCertificate { centers: vec![], radius: l }));
    };
    let component = g.distances_from(first);
    if vertices.iter().any(|&v| component[v].is_none()) {
        return Err(Error::DisconnectedQuery);
    }

    // Distances are only ever needed from chosen vertices.
    let mut rows: Vec<(usize, Vec<Option<usize>>)> = Vec::new();
    let sep = greedy_separated_by(&vertices, l, k, |c, v| {
        let row = match rows.iter().position(|(src, _)| src == c) {
            Some(i) => &rows[i].1,
            None => {
                rows.push((*c, g.distances_from(*c)));
                &rows.last().unwrap().1
            }
        };
        row[*v].expect("same component") as u64
    });
    Ok(match sep {
        Separation::Witness(vertices) => GraphDichotomy::Witness { vertices },
        Separation::Covered(centers) => GraphDichotomy::Covered(BallCoverCertificate { centers, radius: l }),
    })
}

/// Re-checks a dichotomy result against direct BFS.
pub fn verify_dichotomy(g: &FiniteGraph, a: &[usize], l: u64, k: usize, result: &GraphDichotomy) -> bool {
    match result {
        GraphDichotomy::Witness { vertices } => {
            vertices.len() == k
                && vertices.iter().all(|v| a.contains(v))
                && vertices.iter().enumerate().all(|(i, &u)| {
                    let d = g.distances_from(u);
                    vertices[i + 1..]
                        .iter()
                        .all(|&w| d[w].is_some_and(|d| d as u64 > l))
                })
        }
        GraphDichotomy::Covered(cert) => {
            let rows: Vec<_> = cert.centers.iter().map(|&c| g.distances_from(c)).collect();
            cert.centers.len() < k
                && cert.radius == l
                && a.iter()
                    .all(|&v| rows.iter().any(|d| d[v].is_some_and(|d| d as u64 <= l)))
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct UlfpTrialReport {
    /// `ulf_bound(max_valency, l, k)`.
    pub bound: String,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

/// Draws `trials` random vertex sets strictly larger than [`ulf_bound`] from
/// single components and checks that the greedy scan always finds a witness.
/// Trials for which no component is large enough are counted as skipped.
pub fn check_ulfp_threshold(g: &FiniteGraph, trials: usize, l: u64, k: usize, seed: u64) -> Result<UlfpTrialReport> {
    let bound = ulf_bound(max_valency(g) as u64, l, k as u64);
    let mut report = UlfpTrialReport {
        bound: bound.to_string(),
        ..Default::default()
    };
    let min_size = usize::try_from(bound + 1u32).unwrap_or(usize::MAX);
    let large: Vec<Vec<usize>> = g
        .components()
        .into_iter()
        .filter(|c| c.len() >= min_size)
        .collect();
    if large.is_empty() {
        report.skipped = trials;
        return Ok(report);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let comp = &large[rng.random_range(0..large.len())];
        let size = rng.random_range(min_size..=comp.len());
        let a: Vec<usize> = index::sample(&mut rng, comp.len(), size)
            .into_iter()
            .map(|i| comp[i])
            .collect();
        let result = greedy_separated(g, &a, l, k)?;
        if matches!(result, GraphDichotomy::Witness { .. }) && verify_dichotomy(g, &a, l, k, &result) {
            report.passed += 1;
        } else {
            report.failed += 1;
        }
    }
    Ok(report)
}
