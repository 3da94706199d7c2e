//! Distances and geodesics in the Farey graph.
//!
//! The graph is locally infinite, so nothing here searches it blindly. After
//! moving `x` to `1/0`, the hyperbolic line from `1/0` to `y` crosses a finite
//! chain of Farey triangles (the ladder): the triangle `(∞, n, n+1)` above
//! `y`, then the Stern–Brocot descent from `[n, n+1]` down to `y`. Shortest
//! paths are computed inside the graph induced on the ladder vertices.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::mobius::normalizer_to_infinity;
use super::slope::{adjacent, Slope};
use crate::{Error, Result};

/// Vertices of the Farey triangles crossed by the line from `x` to `y`.
///
/// When `x` and `y` are adjacent the line is an edge; the apexes of the two
/// triangles on either side of it are included.
pub fn pivot_candidates(x: Slope, y: Slope) -> Result<BTreeSet<Slope>> {
    if x == y {
        return Err(Error::Precondition(format!(
            "pivot candidates need distinct endpoints, got {x} twice"
        )));
    }
    let g = normalizer_to_infinity(x);
    let back = g.inverse();
    let target = g.try_apply(y)?;
    let (p, q) = (target.numer() as i128, target.denom() as i128);

    let mut normalized: Vec<(i128, i128)> = vec![(1, 0)];
    let floor = p.div_euclid(q);
    if q == 1 {
        normalized.extend([(floor - 1, 1), (floor, 1), (floor + 1, 1)]);
    } else {
        let (mut left, mut right) = ((floor, 1i128), (floor + 1, 1i128));
        normalized.extend([left, right]);
        loop {
            let mediant = (left.0 + right.0, left.1 + right.1);
            normalized.push(mediant);
            if mediant == (p, q) {
                break;
            }
            // Compare p/q with the mediant; both denominators are positive.
            if p * mediant.1 < mediant.0 * q {
                right = mediant;
            } else {
                left = mediant;
            }
        }
    }

    let mut out = BTreeSet::new();
    for (a, b) in normalized {
        out.insert(back.try_apply(Slope::from_wide(a, b)?)?);
    }
    Ok(out)
}

/// The closure used for geodesic enumeration: the pivot candidates plus the
/// two common neighbours of every adjacent candidate pair.
fn candidate_closure(x: Slope, y: Slope) -> Result<BTreeSet<Slope>> {
    let pivots: Vec<Slope> = pivot_candidates(x, y)?.into_iter().collect();
    let mut closure: BTreeSet<Slope> = pivots.iter().copied().collect();
    for (i, &u) in pivots.iter().enumerate() {
        for &v in &pivots[i + 1..] {
            if adjacent(u, v) {
                let (a, b) = (u.numer() as i128, u.denom() as i128);
                let (c, d) = (v.numer() as i128, v.denom() as i128);
                closure.insert(Slope::from_wide(a + c, b + d)?);
                closure.insert(Slope::from_wide(a - c, b - d)?);
            }
        }
    }
    Ok(closure)
}

/// Induced subgraph on a finite vertex set, with BFS helpers.
struct Induced {
    vertices: Vec<Slope>,
    index: HashMap<Slope, usize>,
    adj: Vec<Vec<usize>>,
}

impl Induced {
    fn new(vertices: impl IntoIterator<Item = Slope>) -> Induced {
        let vertices: Vec<Slope> = vertices.into_iter().collect();
        let index = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut adj = vec![Vec::new(); vertices.len()];
        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                if adjacent(vertices[i], vertices[j]) {
                    adj[i].push(j);
                    adj[j].push(i);
                }
            }
        }
        Induced { vertices, index, adj }
    }

    fn bfs(&self, from: Slope) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.vertices.len()];
        let start = self.index[&from];
        dist[start] = Some(0);
        let mut queue = VecDeque::from([start]);
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
}

/// Curve-graph distance between two slopes.
pub fn distance(x: Slope, y: Slope) -> u32 {
    if x == y {
        return 0;
    }
    let pivots = pivot_candidates(x, y).expect("ladder vertices overflow i64");
    let graph = Induced::new(pivots);
    graph.bfs(x)[graph.index[&y]].expect("the Farey ladder is connected")
}

/// A path of Farey-adjacent slopes whose length equals the distance between
/// its endpoints.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Geodesic {
    vertices: Vec<Slope>,
}

impl Geodesic {
    /// Validates adjacency and length before accepting the sequence.
    pub fn new(vertices: Vec<Slope>) -> Result<Geodesic> {
        let (Some(&first), Some(&last)) = (vertices.first(), vertices.last()) else {
            return Err(Error::NotGeodesic("empty vertex sequence".into()));
        };
        if let Some(w) = vertices.windows(2).find(|w| !adjacent(w[0], w[1])) {
            return Err(Error::NotGeodesic(format!("{} and {} are not adjacent", w[0], w[1])));
        }
        let d = distance(first, last) as usize;
        if vertices.len() - 1 != d {
            return Err(Error::NotGeodesic(format!(
                "path of length {} between {first} and {last}, which are {d} apart",
                vertices.len() - 1
            )));
        }
        Ok(Geodesic { vertices })
    }

    pub fn vertices(&self) -> &[Slope] {
        &self.vertices
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn first(&self) -> Slope {
        self.vertices[0]
    }

    pub fn last(&self) -> Slope {
        *self.vertices.last().unwrap()
    }

    pub fn interior(&self) -> &[Slope] {
        let n = self.vertices.len();
        if n <= 2 {
            &[]
        } else {
            &self.vertices[1..n - 1]
        }
    }
}

impl fmt::Display for Geodesic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for Geodesic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Geodesic> {
        let vertices = s
            .split(',')
            .map(str::parse)
            .collect::<Result<Vec<Slope>>>()?;
        Geodesic::new(vertices)
    }
}

impl Serialize for Geodesic {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.vertices.serialize(serializer)
    }
}

/// Every geodesic from `x` to `y` inside the candidate closure, sorted
/// lexicographically.
pub fn geodesics(x: Slope, y: Slope) -> Vec<Geodesic> {
    if x == y {
        return vec![Geodesic { vertices: vec![x] }];
    }
    let expected = distance(x, y);
    let graph = Induced::new(candidate_closure(x, y).expect("closure overflows i64"));
    let from_x = graph.bfs(x);
    let from_y = graph.bfs(y);
    let d = from_x[graph.index[&y]].expect("the closure is connected");
    assert_eq!(
        d, expected,
        "closure distance {d} disagrees with ladder distance {expected} for {x} -> {y}"
    );

    let mut out = Vec::new();
    let mut path = vec![graph.index[&x]];
    extend_paths(&graph, &from_x, &from_y, d, &mut path, &mut out);
    out.sort();
    out
}

fn extend_paths(
    graph: &Induced,
    from_x: &[Option<u32>],
    from_y: &[Option<u32>],
    total: u32,
    path: &mut Vec<usize>,
    out: &mut Vec<Geodesic>,
) {
    let u = *path.last().unwrap();
    let step = path.len() as u32;
    if step == total + 1 {
        out.push(Geodesic {
            vertices: path.iter().map(|&i| graph.vertices[i]).collect(),
        });
        return;
    }
    for &w in &graph.adj[u] {
        if from_x[w] == Some(step) && from_y[w] == Some(total - step) {
            path.push(w);
            extend_paths(graph, from_x, from_y, total, path, out);
            path.pop();
        }
    }
}

/// Neighbours `v` of `x` with `distance(v, target) = d`, taken from the
/// candidate closure of `x` and `target`.
pub fn link_at_distance(x: Slope, target: Slope, d: u32) -> BTreeSet<Slope> {
    if x == target {
        return BTreeSet::new();
    }
    candidate_closure(x, target)
        .expect("closure overflows i64")
        .into_iter()
        .filter(|&v| adjacent(x, v) && distance(v, target) == d)
        .collect()
}
