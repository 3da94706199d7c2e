//! Slices `G(a, b) ∩ N_δ(c)` of the geodesics between two curves, weak-tight
//! indices, sampled radius slices and the slice-bound verification harness.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::annular::{projects, Annulus};
use crate::bounds::{BigBound, BoundCalculator, Mode, Surface};
use crate::farey::{distance, geodesics, normalizer_to_infinity, Geodesic, Slope, SurfaceKind};
use crate::projections::{candidate_subsurfaces, endpoint_distance, SubsurfaceRef};
use crate::{Error, Result};

/// Integer offsets `n` used for a random step `x -> g_x^{-1}(n)`.
const STEP_SPAN: i64 = 4;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct SliceQuery {
    pub a: Slope,
    pub b: Slope,
    pub c: Slope,
    pub delta: u64,
    pub r: u64,
}

/// `G(a, b)`: every vertex of every geodesic from `a` to `b`.
pub fn geodesic_union(a: Slope, b: Slope) -> BTreeSet<Slope> {
    geodesics(a, b)
        .into_iter()
        .flat_map(|g| g.vertices().to_vec())
        .collect()
}

/// `G(a, b) ∩ N_δ(c)`. On complexity-one surfaces every geodesic is tight.
pub fn tight_slice(a: Slope, b: Slope, c: Slope, delta: u64) -> BTreeSet<Slope> {
    geodesic_union(a, b)
        .into_iter()
        .filter(|&v| distance(v, c) as u64 <= delta)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeakTightReport {
    pub geodesic: Geodesic,
    /// Least `D` for which the geodesic is `D`-weakly tight.
    pub index: u64,
    /// Vertex and annulus where the index is attained.
    pub attaining: Option<(Slope, Annulus)>,
}

fn require_far_endpoints(x: Slope, y: Slope) -> Result<u32> {
    let d = distance(x, y);
    if d <= 2 {
        return Err(Error::Precondition(format!(
            "weak tightness needs endpoints more than 2 apart, {x} and {y} are {d} apart"
        )));
    }
    Ok(d)
}

fn annuli_of(subsurfaces: Vec<SubsurfaceRef>) -> Vec<Annulus> {
    subsurfaces
        .into_iter()
        .filter_map(|z| match z {
            SubsurfaceRef::Annulus(a) => Some(a),
            SubsurfaceRef::Whole => None,
        })
        .collect()
}

fn index_over(kind: SurfaceKind, g: &Geodesic, annuli: &[Annulus]) -> Result<WeakTightReport> {
    let (x, y) = (g.first(), g.last());
    let mut index = 0;
    let mut attaining = None;
    for &v in g.vertices() {
        for z in annuli.iter().filter(|z| projects(z, v)) {
            let value = endpoint_distance(kind, z, x, v)?.min(endpoint_distance(kind, z, y, v)?);
            if value > index {
                index = value;
                attaining = Some((v, *z));
            }
        }
    }
    Ok(WeakTightReport {
        geodesic: g.clone(),
        index,
        attaining,
    })
}

/// Smallest `D` such that every vertex `v` of `g` satisfies
/// `min(d_Z(x, v), d_Z(v, y)) <= D` in every candidate annulus `Z` it meets.
pub fn weak_tight_index(kind: SurfaceKind, g: &Geodesic) -> Result<WeakTightReport> {
    require_far_endpoints(g.first(), g.last())?;
    let annuli = annuli_of(candidate_subsurfaces(g.vertices())?);
    index_over(kind, g, &annuli)
}

/// Weak-tight reports for every geodesic from `a` to `b`.
pub fn weak_tight_reports(kind: SurfaceKind, a: Slope, b: Slope) -> Result<Vec<WeakTightReport>> {
    require_far_endpoints(a, b)?;
    geodesics(a, b).iter().map(|g| weak_tight_index(kind, g)).collect()
}

/// `G^D(a, b) ∩ N_δ(c)`: vertices near `c` on geodesics of index at most `D`.
pub fn weak_tight_slice(kind: SurfaceKind, a: Slope, b: Slope, c: Slope, delta: u64, d: u64) -> Result<BTreeSet<Slope>> {
    Ok(weak_tight_reports(kind, a, b)?
        .into_iter()
        .filter(|r| r.index <= d)
        .flat_map(|r| r.geodesic.vertices().to_vec())
        .filter(|&v| distance(v, c) as u64 <= delta)
        .collect())
}

/// A certified subset of `G(a, b; r) ∩ N_δ(c)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RadiusSample {
    /// Lower bound only: the balls `N_r` are infinite.
    pub members: BTreeSet<Slope>,
    /// Sampled endpoint pairs `(a', b')` with `a' ∈ N_r(a)`, `b' ∈ N_r(b)`.
    pub samples: Vec<(Slope, Slope)>,
}

fn random_step(rng: &mut ChaCha8Rng, x: Slope) -> Slope {
    let n = rng.random_range(-STEP_SPAN..=STEP_SPAN);
    normalizer_to_infinity(x).inverse().apply(Slope::integer(n))
}

fn random_walk(rng: &mut ChaCha8Rng, from: Slope, r: u64) -> Slope {
    let steps = rng.random_range(0..=r);
    (0..steps).fold(from, |x, _| random_step(rng, x))
}

fn sample_endpoints(a: Slope, b: Slope, r: u64, budget: usize, seed: u64) -> Vec<(Slope, Slope)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..budget)
        .map(|_| {
            let a2 = random_walk(&mut rng, a, r);
            let b2 = random_walk(&mut rng, b, r);
            debug_assert!(distance(a, a2) as u64 <= r && distance(b, b2) as u64 <= r);
            (a2, b2)
        })
        .collect()
}

/// Union of tight slices over `budget` endpoint pairs drawn from `N_r(a) ×
/// N_r(b)` by seeded random walks of at most `r` twist steps.
pub fn radius_slice_sample(a: Slope, b: Slope, r: u64, c: Slope, delta: u64, budget: usize, seed: u64) -> RadiusSample {
    let samples = sample_endpoints(a, b, r, budget, seed);
    let members = samples
        .iter()
        .flat_map(|&(a2, b2)| tight_slice(a2, b2, c, delta))
        .collect();
    RadiusSample { members, samples }
}

/// Hypotheses of the slice bounds, evaluated with hyperbolicity constant `delta`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct HypothesisFlags {
    /// `c` lies on some geodesic from `a` to `b`.
    pub c_on_geodesic: bool,
    /// `j = 3δ + 2`.
    pub j: u64,
    pub distance_ab: u64,
    /// `2r + 2j + 1`.
    pub required_distance: u64,
    /// `d(a, b) >= 2r + 2j + 1`.
    pub distance_ok: bool,
    /// `c ∉ N_{r+j}(a) ∪ N_{r+j}(b)`.
    pub c_far_from_ends: bool,
}

impl HypothesisFlags {
    pub fn radius_form_ok(&self) -> bool {
        self.c_on_geodesic && self.distance_ok && self.c_far_from_ends
    }
}

pub fn radius_hypothesis(a: Slope, b: Slope, c: Slope, r: u64, delta: u64) -> HypothesisFlags {
    let j = 3 * delta + 2;
    let distance_ab = distance(a, b) as u64;
    let required_distance = 2 * r + 2 * j + 1;
    HypothesisFlags {
        c_on_geodesic: geodesic_union(a, b).contains(&c),
        j,
        distance_ab,
        required_distance,
        distance_ok: distance_ab >= required_distance,
        c_far_from_ends: distance(c, a) as u64 > r + j && distance(c, b) as u64 > r + j,
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Sampling {
    pub budget: usize,
    pub seed: u64,
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling { budget: 32, seed: 0 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SliceVerification {
    pub query: SliceQuery,
    pub m: u64,
    pub weak_d: Option<u64>,
    /// `true` when the slice is a sampled lower bound (`r > 0`).
    pub sampled: bool,
    pub slice: Vec<Slope>,
    pub size: u64,
    /// Which threshold was fetched, e.g. `N_S(2M,3)`.
    pub bound_label: &'static str,
    pub bound: BigBound,
    pub margin_log10: f64,
    pub holds: bool,
    pub hypothesis: HypothesisFlags,
}

/// Computes the slice named by `query` (tight, or `D`-weakly tight when `d`
/// is given), fetches the matching threshold and compares.
///
/// `query.delta` is the hyperbolicity constant: plain slices use `N_δ(c)`,
/// radius slices use `N_{2δ}(c)` and require `d(a, b) >= 2r + 2j + 1` and
/// `c ∉ N_{r+j}(a) ∪ N_{r+j}(b)` with `j = 3δ + 2`.
pub fn verify_slice_bounds(
    kind: SurfaceKind,
    query: &SliceQuery,
    m: u64,
    d: Option<u64>,
    sampling: Sampling,
    calc: &BoundCalculator,
) -> Result<SliceVerification> {
    let SliceQuery { a, b, c, delta, r } = *query;
    let flags = radius_hypothesis(a, b, c, r, delta);
    if !flags.c_on_geodesic {
        return Err(Error::Hypothesis(format!("c = {c} lies on no geodesic between {a} and {b}")));
    }
    if r > 0 && !flags.distance_ok {
        return Err(Error::Hypothesis(format!(
            "radius slices need d(a, b) >= 2r + 2j + 1 = {} with j = 3δ + 2 = {}, but d(a, b) = {}",
            flags.required_distance, flags.j, flags.distance_ab
        )));
    }
    if r > 0 && !flags.c_far_from_ends {
        return Err(Error::Hypothesis(format!(
            "radius slices need c outside N_(r+j)(a) ∪ N_(r+j)(b) with r + j = {}",
            r + flags.j
        )));
    }
    if let Some(d) = d {
        if d < m {
            return Err(Error::Hypothesis(format!("weak-tight slice bounds need D >= M, got D={d}, M={m}")));
        }
        require_far_endpoints(a, b)?;
    }

    let slice: BTreeSet<Slope> = if r == 0 {
        match d {
            None => tight_slice(a, b, c, delta),
            Some(d) => weak_tight_slice(kind, a, b, c, delta, d)?,
        }
    } else {
        let radius = 2 * delta;
        let samples = sample_endpoints(a, b, r, sampling.budget, sampling.seed);
        let mut out = BTreeSet::new();
        for (a2, b2) in samples {
            match d {
                None => out.extend(tight_slice(a2, b2, c, radius)),
                Some(d) => out.extend(weak_tight_slice(kind, a2, b2, c, radius, d)?),
            }
        }
        out
    };

    let surface = Surface::for_kind(kind);
    let (bound_label, bound) = match (d, r == 0) {
        (None, true) => ("N_S(2M,3)", calc.slice_bound_tight(surface, m, Mode::Exact)?.0),
        (None, false) => ("N_S(4M,3)", calc.slice_bound_tight(surface, m, Mode::Exact)?.1),
        (Some(d), true) => ("N_S(2D,3)", calc.slice_bound_weak(surface, d, m, Mode::Exact)?.0),
        (Some(d), false) => ("N_S(2(D+M),3)", calc.slice_bound_weak(surface, d, m, Mode::Exact)?.1),
    };
    let size = slice.len() as u64;
    Ok(SliceVerification {
        query: *query,
        m,
        weak_d: d,
        sampled: r > 0,
        slice: slice.into_iter().collect(),
        size,
        bound_label,
        margin_log10: bound.log10() - (size.max(1) as f64).log10(),
        holds: bound.admits(size),
        bound,
        hypothesis: flags,
    })
}
