//! Brute-force oracles and seeded corpora shared by the integration tests.
//! Nothing here calls the ladder machinery: adjacency is the raw determinant
//! test and distances come from plain BFS on a finite box of the Farey graph.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ulfp::farey::{MobiusMap, Slope};

/// Seed of the pair corpus behind the frozen audit value.
pub const AUDIT_SEED: u64 = 0x5eed_0001;
/// `bgit_audit` over `pair_corpus(AUDIT_SEED, 100, 3, 6)`, computed once and frozen.
pub const FROZEN_M_EMP: u64 = 3;

pub fn s(p: i64, q: i64) -> Slope {
    Slope::new(p, q).unwrap()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

fn det(x: Slope, y: Slope) -> i128 {
    x.numer() as i128 * y.denom() as i128 - x.denom() as i128 * y.numer() as i128
}

/// The Farey graph induced on `∞` and the slopes `p/q` with `q <= max_q`
/// and `lo <= p/q <= hi`.
pub struct FareyBox {
    pub vertices: Vec<Slope>,
    index: HashMap<Slope, usize>,
    adj: Vec<Vec<usize>>,
}

impl FareyBox {
    pub fn new(max_q: i64, lo: i64, hi: i64) -> FareyBox {
        let mut vertices = vec![s(1, 0)];
        for q in 1..=max_q {
            for p in lo * q..=hi * q {
                if gcd(p, q) == 1 {
                    vertices.push(s(p, q));
                }
            }
        }
        let index: HashMap<Slope, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut adj = vec![Vec::new(); vertices.len()];
        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                if det(vertices[i], vertices[j]).abs() == 1 {
                    adj[i].push(j);
                    adj[j].push(i);
                }
            }
        }
        FareyBox { vertices, index, adj }
    }

    pub fn contains(&self, x: Slope) -> bool {
        self.index.contains_key(&x)
    }

    pub fn bfs(&self, x: Slope) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.vertices.len()];
        let src = self.index[&x];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
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

    pub fn distance(&self, x: Slope, y: Slope) -> Option<u32> {
        self.bfs(x)[self.index[&y]]
    }

    /// Every shortest path from `x` to `y` inside the box, given BFS rows
    /// from both ends.
    pub fn shortest_paths_with(&self, x: Slope, y: Slope, from_x: &[Option<u32>], from_y: &[Option<u32>]) -> BTreeSet<Vec<Slope>> {
        let (sx, sy) = (self.index[&x], self.index[&y]);
        let Some(d) = from_x[sy] else { return BTreeSet::new() };
        let mut out = BTreeSet::new();
        let mut path = vec![sx];
        self.extend(sx, sy, d, from_x, from_y, &mut path, &mut out);
        out
    }

    pub fn shortest_paths(&self, x: Slope, y: Slope) -> BTreeSet<Vec<Slope>> {
        self.shortest_paths_with(x, y, &self.bfs(x), &self.bfs(y))
    }

    #[allow(clippy::too_many_arguments)]
    fn extend(
        &self,
        u: usize,
        target: usize,
        d: u32,
        from_x: &[Option<u32>],
        from_y: &[Option<u32>],
        path: &mut Vec<usize>,
        out: &mut BTreeSet<Vec<Slope>>,
    ) {
        if u == target {
            out.insert(path.iter().map(|&i| self.vertices[i]).collect());
            return;
        }
        let step = from_x[u].unwrap() + 1;
        for &w in &self.adj[u] {
            if from_x[w] == Some(step) && from_y[w] == Some(d - step) {
                path.push(w);
                self.extend(w, target, d, from_x, from_y, path, out);
                path.pop();
            }
        }
    }
}

/// A neighbor `(a + n p)/(b + n q)` of `p/q`, where `a/b` is one fixed
/// neighbor found by the extended Euclidean algorithm.
pub fn farey_neighbor(x: Slope, n: i64) -> Slope {
    let (p, q) = (x.numer(), x.denom());
    if q == 0 {
        return s(n, 1);
    }
    // Solve p*b - q*a = 1.
    let (mut r0, mut r1, mut s0, mut s1) = (p, q, 1i64, 0i64);
    while r1 != 0 {
        let t = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - t * r1);
        (s0, s1) = (s1, s0 - t * s1);
    }
    // s0 * p + t0 * q = r0 = ±1.
    let t0 = (r0 - s0 * p) / q;
    let (b, a) = if r0 == 1 { (s0, -t0) } else { (-s0, t0) };
    debug_assert_eq!(p as i128 * b as i128 - q as i128 * a as i128, 1);
    s(a + n * p, b + n * q)
}

pub fn random_slope(rng: &mut ChaCha8Rng, max_q: i64) -> Slope {
    if rng.random_range(0..20) == 0 {
        return s(1, 0);
    }
    let q = rng.random_range(1..=max_q);
    let p = rng.random_range(-2 * max_q..=2 * max_q);
    Slope::new(p, q).unwrap()
}

/// A random element of `PSL(2, Z)` as a word in shears and the swap.
pub fn random_mobius(rng: &mut ChaCha8Rng, len: usize) -> MobiusMap {
    let swap = MobiusMap::new(0, -1, 1, 0).unwrap();
    let mut m = MobiusMap::IDENTITY;
    for _ in 0..len {
        let step = MobiusMap::shear(rng.random_range(-3..=3)).compose(&swap).unwrap();
        m = m.compose(&step).unwrap();
    }
    m
}

/// `count` distinct pairs `(x, y)` with `dmin <= d(x, y) <= dmax`, built by
/// seeded random walks and filtered with `distance`.
pub fn pair_corpus(seed: u64, count: usize, dmin: u32, dmax: u32) -> Vec<(Slope, Slope)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<(Slope, Slope)> = Vec::new();
    while out.len() < count {
        let x = random_slope(&mut rng, 6);
        let steps = rng.random_range(dmin..=dmax + 2);
        let mut y = x;
        for _ in 0..steps {
            y = farey_neighbor(y, rng.random_range(-4..=4));
        }
        let d = ulfp::farey::distance(x, y);
        if (dmin..=dmax).contains(&d) && !out.contains(&(x, y)) {
            out.push((x, y));
        }
    }
    out
}
