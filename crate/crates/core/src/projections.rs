//! Separation property over subsurfaces, ULFP certificates and the
//! bounded-geodesic-image audit for complexity-one surfaces.
//!
//! On `S_{1,1}` and `S_{0,4}` the proper essential subsurfaces are annuli, so
//! a subsurface is either the whole surface (Farey distance) or an annulus
//! (twist-model distance from [`crate::annular`]).

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::annular::{annular_distance, projects, Annulus};
use crate::farey::{distance, geodesics, Geodesic, Slope, SurfaceKind};
use crate::graph::{greedy_separated_by, Separation};
use crate::{Error, Result};

/// Largest `k` accepted by the exact witness search.
pub const MAX_WITNESS_K: usize = 8;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
#[serde(tag = "kind", content = "core", rename_all = "snake_case")]
pub enum SubsurfaceRef {
    Whole,
    Annulus(Annulus),
}

impl SubsurfaceRef {
    pub fn annulus(core: Slope) -> SubsurfaceRef {
        SubsurfaceRef::Annulus(Annulus::new(core))
    }

    /// Whether `y` has nonempty projection here.
    pub fn sees(&self, y: Slope) -> bool {
        match self {
            SubsurfaceRef::Whole => true,
            SubsurfaceRef::Annulus(z) => projects(z, y),
        }
    }
}

impl fmt::Display for SubsurfaceRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubsurfaceRef::Whole => f.write_str("S"),
            SubsurfaceRef::Annulus(z) => z.fmt(f),
        }
    }
}

/// `d_Z(y, w)`: Farey distance for the whole surface, model distance for annuli.
pub fn proj_distance(kind: SurfaceKind, z: &SubsurfaceRef, y: Slope, w: Slope) -> Result<u64> {
    match z {
        SubsurfaceRef::Whole => Ok(distance(y, w) as u64),
        SubsurfaceRef::Annulus(a) => annular_distance(kind, a, y, w),
    }
}

/// `d_Z(e, v)` for an endpoint `e` that may miss the annulus. A missing
/// endpoint leaves only the projection of `v`, whose diameter is 1.
pub fn endpoint_distance(kind: SurfaceKind, z: &Annulus, endpoint: Slope, v: Slope) -> Result<u64> {
    if projects(z, endpoint) {
        annular_distance(kind, z, endpoint, v)
    } else {
        Ok(1)
    }
}

fn distinct_sorted(a: &[Slope]) -> Vec<Slope> {
    a.iter().copied().collect::<BTreeSet<_>>().into_iter().collect()
}

/// The whole surface plus every annulus whose core lies on some geodesic
/// between two elements of `a`, in the order whole, then annuli by core
/// denominator and numerator.
///
/// An annulus whose core avoids every geodesic between `y` and `w` sees them
/// at model distance at most 3, so for `l >= 3` no separation witness can
/// live outside this list.
pub fn candidate_subsurfaces(a: &[Slope]) -> Result<Vec<SubsurfaceRef>> {
    let a = distinct_sorted(a);
    if a.len() < 2 {
        return Err(Error::Precondition(format!(
            "candidate subsurfaces need at least two distinct curves, got {}",
            a.len()
        )));
    }
    let pairs: Vec<(Slope, Slope)> = a
        .iter()
        .enumerate()
        .flat_map(|(i, &x)| a[i + 1..].iter().map(move |&y| (x, y)))
        .collect();
    let cores: BTreeSet<Slope> = pairs
        .par_iter()
        .flat_map_iter(|&(x, y)| {
            geodesics(x, y)
                .into_iter()
                .flat_map(|g| g.vertices().to_vec())
        })
        .collect();
    Ok(std::iter::once(SubsurfaceRef::Whole)
        .chain(cores.into_iter().map(SubsurfaceRef::annulus))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub slopes: Vec<Slope>,
    pub subsurface: SubsurfaceRef,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyPReport {
    pub holds: bool,
    pub witness: Option<Witness>,
    pub checked_subsurfaces: usize,
}

fn check_params(l: u64, k: usize) -> Result<()> {
    if l == 0 || !(2..=MAX_WITNESS_K).contains(&k) {
        return Err(Error::Precondition(format!(
            "separation search needs l > 0 and 2 <= k <= {MAX_WITNESS_K}, got l={l}, k={k}"
        )));
    }
    Ok(())
}

/// Searches for `k` curves of `a` whose projections to `z` are pairwise more
/// than `l` apart. Curves missing `z` are skipped. The witness returned is
/// the lexicographically first clique in slope order.
pub fn check_p(kind: SurfaceKind, a: &[Slope], l: u64, k: usize, z: &SubsurfaceRef) -> Result<PropertyPReport> {
    check_params(l, k)?;
    let seen: Vec<Slope> = distinct_sorted(a).into_iter().filter(|&y| z.sees(y)).collect();
    let n = seen.len();
    let mut far = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let d = proj_distance(kind, z, seen[i], seen[j])?;
            far[i][j] = d > l;
            far[j][i] = d > l;
        }
    }
    let mut clique = Vec::with_capacity(k);
    let found = n >= k && extend_clique(&far, k, 0, &mut clique);
    Ok(PropertyPReport {
        holds: !found,
        witness: found.then(|| Witness {
            slopes: clique.iter().map(|&i| seen[i]).collect(),
            subsurface: *z,
        }),
        checked_subsurfaces: 1,
    })
}

fn extend_clique(far: &[Vec<bool>], k: usize, start: usize, clique: &mut Vec<usize>) -> bool {
    if clique.len() == k {
        return true;
    }
    let n = far.len();
    // Not enough vertices left to finish.
    if n - start < k - clique.len() {
        return false;
    }
    for v in start..n {
        if clique.iter().all(|&u| far[u][v]) {
            clique.push(v);
            if extend_clique(far, k, v + 1, clique) {
                return true;
            }
            clique.pop();
        }
    }
    false
}

/// [`check_p`] over every candidate subsurface, stopping at the first witness.
pub fn check_p_all(kind: SurfaceKind, a: &[Slope], l: u64, k: usize) -> Result<PropertyPReport> {
    check_params(l, k)?;
    if distinct_sorted(a).len() < 2 {
        return Ok(PropertyPReport {
            holds: true,
            witness: None,
            checked_subsurfaces: 0,
        });
    }
    let mut checked = 0;
    for z in candidate_subsurfaces(a)? {
        let report = check_p(kind, a, l, k, &z)?;
        checked += 1;
        if !report.holds {
            return Ok(PropertyPReport {
                checked_subsurfaces: checked,
                ..report
            });
        }
    }
    Ok(PropertyPReport {
        holds: true,
        witness: None,
        checked_subsurfaces: checked,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubsurfaceCover {
    pub subsurface: SubsurfaceRef,
    pub centers: Vec<Slope>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum UlfpCertificate {
    Witness(Witness),
    /// For every candidate subsurface, at most `k - 1` centers whose radius-`l`
    /// balls contain the projection of every curve that projects there.
    Covered { radius: u64, covers: Vec<SubsurfaceCover> },
}

/// Either `k` curves that are pairwise far in some subsurface, or a ball
/// cover of `a` in every candidate subsurface.
pub fn ulfp_witness(kind: SurfaceKind, a: &[Slope], l: u64, k: usize) -> Result<UlfpCertificate> {
    let report = check_p_all(kind, a, l, k)?;
    if let Some(w) = report.witness {
        return Ok(UlfpCertificate::Witness(w));
    }
    let distinct = distinct_sorted(a);
    let subsurfaces = if distinct.len() < 2 {
        vec![SubsurfaceRef::Whole]
    } else {
        candidate_subsurfaces(&distinct)?
    };
    let mut covers = Vec::with_capacity(subsurfaces.len());
    for z in subsurfaces {
        let seen: Vec<Slope> = distinct.iter().copied().filter(|&y| z.sees(y)).collect();
        let mut err = None;
        let sep = greedy_separated_by(&seen, l, k, |&u, &v| {
            proj_distance(kind, &z, u, v).unwrap_or_else(|e| {
                err = Some(e);
                0
            })
        });
        if let Some(e) = err {
            return Err(e);
        }
        match sep {
            Separation::Covered(centers) => covers.push(SubsurfaceCover { subsurface: z, centers }),
            Separation::Witness(slopes) => {
                // The exact search found no k-clique, so the greedy scan cannot either.
                unreachable!("greedy found a witness {slopes:?} in {z} missed by the exact search")
            }
        }
    }
    Ok(UlfpCertificate::Covered { radius: l, covers })
}

/// Re-verifies a certificate by recomputing every distance it relies on.
pub fn verify_certificate(kind: SurfaceKind, a: &[Slope], l: u64, k: usize, cert: &UlfpCertificate) -> Result<bool> {
    let members: BTreeSet<Slope> = a.iter().copied().collect();
    match cert {
        UlfpCertificate::Witness(w) => {
            if w.slopes.len() != k || !w.slopes.iter().all(|s| members.contains(s) && w.subsurface.sees(*s)) {
                return Ok(false);
            }
            for (i, &u) in w.slopes.iter().enumerate() {
                for &v in &w.slopes[i + 1..] {
                    if proj_distance(kind, &w.subsurface, u, v)? <= l {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        UlfpCertificate::Covered { radius, covers } => {
            if *radius != l {
                return Ok(false);
            }
            for cover in covers {
                if cover.centers.len() >= k {
                    return Ok(false);
                }
                for &y in members.iter().filter(|&&y| cover.subsurface.sees(y)) {
                    let mut covered = false;
                    for &c in &cover.centers {
                        if proj_distance(kind, &cover.subsurface, c, y)? <= l {
                            covered = true;
                            break;
                        }
                    }
                    if !covered {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
    }
}

/// For each `b` in `targets`, the pair `(b, b')` where `b'` is the second
/// vertex of the lexicographically least geodesic from `x` to `b`.
pub fn first_steps(x: Slope, targets: &[Slope], i: u32) -> Result<Vec<(Slope, Slope)>> {
    if i < 2 {
        return Err(Error::Precondition(format!("first steps need i > 1, got {i}")));
    }
    distinct_sorted(targets)
        .into_iter()
        .map(|b| {
            let d = distance(x, b);
            if d != i {
                return Err(Error::Precondition(format!("{b} is at distance {d} from {x}, expected {i}")));
            }
            let g = geodesics(x, b).into_iter().next().expect("at least one geodesic");
            Ok((b, g.vertices()[1]))
        })
        .collect()
}

/// `B' = ⋃_{b ∈ B} g_{x,b} ∩ C_1(x)` with the lexicographically least geodesic
/// chosen for each `b`.
pub fn first_step_cover(x: Slope, targets: &[Slope], i: u32) -> Result<BTreeSet<Slope>> {
    Ok(first_steps(x, targets, i)?.into_iter().map(|(_, b)| b).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditHit {
    pub value: u64,
    pub x: Slope,
    pub y: Slope,
    pub geodesic: Geodesic,
    pub vertex: Slope,
    pub core: Slope,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BgitAudit {
    /// Largest `min(d_Z(x, v), d_Z(v, y))` observed; 0 for an empty corpus.
    pub m_emp: u64,
    pub attained: Option<AuditHit>,
    pub pairs_checked: usize,
    /// Pairs at distance at most 2, which the audit does not cover.
    pub skipped: usize,
}

/// The worst one-sided annular image over all interior vertices of all
/// geodesics for one pair.
pub fn audit_pair(kind: SurfaceKind, x: Slope, y: Slope) -> Result<Option<AuditHit>> {
    let annuli: Vec<Annulus> = candidate_subsurfaces(&[x, y])?
        .into_iter()
        .filter_map(|z| match z {
            SubsurfaceRef::Annulus(a) => Some(a),
            SubsurfaceRef::Whole => None,
        })
        .collect();
    let mut best: Option<AuditHit> = None;
    for g in geodesics(x, y) {
        for &v in g.interior() {
            for z in annuli.iter().filter(|z| projects(z, v)) {
                let value = endpoint_distance(kind, z, x, v)?.min(endpoint_distance(kind, z, y, v)?);
                if best.as_ref().is_none_or(|b| value > b.value) {
                    best = Some(AuditHit {
                        value,
                        x,
                        y,
                        geodesic: g.clone(),
                        vertex: v,
                        core: z.core(),
                    });
                }
            }
        }
    }
    Ok(best)
}

/// Empirical bounded-geodesic-image constant of the annular model over a
/// corpus of pairs at distance greater than 2. Ties keep the earliest pair.
pub fn bgit_audit(kind: SurfaceKind, pairs: &[(Slope, Slope)]) -> Result<BgitAudit> {
    let eligible: Vec<(usize, Slope, Slope)> = pairs
        .iter()
        .enumerate()
        .filter(|(_, (x, y))| distance(*x, *y) > 2)
        .map(|(i, &(x, y))| (i, x, y))
        .collect();
    let hits: Vec<(usize, Option<AuditHit>)> = eligible
        .par_iter()
        .map(|&(i, x, y)| audit_pair(kind, x, y).map(|h| (i, h)))
        .collect::<Result<_>>()?;
    let attained = hits
        .into_iter()
        .filter_map(|(i, h)| h.map(|h| (i, h)))
        .fold(None::<(usize, AuditHit)>, |best, (i, h)| match best {
            Some((bi, b)) if b.value >= h.value => Some((bi, b)),
            _ => Some((i, h)),
        })
        .map(|(_, h)| h);
    Ok(BgitAudit {
        m_emp: attained.as_ref().map_or(0, |h| h.value),
        attained,
        pairs_checked: eligible.len(),
        skipped: pairs.len() - eligible.len(),
    })
}
