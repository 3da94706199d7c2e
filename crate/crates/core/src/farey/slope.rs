use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// A vertex of the Farey graph: a reduced fraction `p/q` with `q >= 0`, or
/// `1/0` for the slope at infinity.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Slope {
    p: i64,
    q: i64,
}

impl Slope {
    pub const INFINITY: Slope = Slope { p: 1, q: 0 };
    pub const ZERO: Slope = Slope { p: 0, q: 1 };

    pub fn new(p: i64, q: i64) -> Result<Slope> {
        canonical(p, q)
    }

    pub fn integer(n: i64) -> Slope {
        Slope { p: n, q: 1 }
    }

    pub(crate) fn from_wide(p: i128, q: i128) -> Result<Slope> {
        if p == 0 && q == 0 {
            return Err(Error::ZeroSlope);
        }
        if q == 0 {
            return Ok(Slope::INFINITY);
        }
        let g = p.gcd(&q);
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 {
            p = -p;
            q = -q;
        }
        match (i64::try_from(p), i64::try_from(q)) {
            (Ok(p), Ok(q)) => Ok(Slope { p, q }),
            _ => Err(Error::Overflow("slope")),
        }
    }

    pub fn numer(self) -> i64 {
        self.p
    }

    pub fn denom(self) -> i64 {
        self.q
    }

    pub fn is_infinity(self) -> bool {
        self.q == 0
    }

    /// `max(|p|, q)`, the size of the box this slope lives in.
    pub fn height(self) -> u64 {
        self.p.unsigned_abs().max(self.q.unsigned_abs())
    }

    /// `p_x q_y - q_x p_y`, whose absolute value is the torus intersection number.
    pub fn cross(self, other: Slope) -> i128 {
        self.p as i128 * other.q as i128 - self.q as i128 * other.p as i128
    }
}

/// Reduces `(p, q)` to its canonical representative. `(0, 0)` is rejected.
pub fn canonical(p: i64, q: i64) -> Result<Slope> {
    Slope::from_wide(p as i128, q as i128)
}

/// Slopes order by denominator, then numerator, so `1/0` is least.
impl Ord for Slope {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.q, self.p).cmp(&(other.q, other.p))
    }
}

impl PartialOrd for Slope {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Slope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Slope> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid slope {s:?}, expected p/q"));
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s, "1"),
        };
        let p: i64 = p.parse().map_err(|_| bad())?;
        let q: i64 = q.parse().map_err(|_| bad())?;
        canonical(p, q).map_err(|_| bad())
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Slope {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Which complexity-one surface the Farey graph is standing in for.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SurfaceKind {
    /// The once-holed torus `S_{1,1}`: adjacent curves meet once.
    Torus,
    /// The four-holed sphere `S_{0,4}`: adjacent curves meet twice.
    Sphere,
}

impl SurfaceKind {
    /// Geometric intersection of two curves whose Farey determinant is 1.
    pub fn intersection_unit(self) -> u64 {
        match self {
            SurfaceKind::Torus => 1,
            SurfaceKind::Sphere => 2,
        }
    }

    /// Shift of the normalized slope coordinate produced by one full Dehn twist.
    pub fn twist_unit(self) -> i64 {
        match self {
            SurfaceKind::Torus => 1,
            SurfaceKind::Sphere => 2,
        }
    }
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SurfaceKind::Torus => "torus",
            SurfaceKind::Sphere => "sphere",
        })
    }
}

impl FromStr for SurfaceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "torus" | "torus_1_1" | "s11" | "1,1" => Ok(SurfaceKind::Torus),
            "sphere" | "sphere_0_4" | "s04" | "0,4" => Ok(SurfaceKind::Sphere),
            _ => Err(Error::Parse(format!("unknown surface kind {s:?}"))),
        }
    }
}

/// Geometric intersection number of two curves on the given surface.
pub fn intersection(kind: SurfaceKind, x: Slope, y: Slope) -> u64 {
    let det = x.cross(y).unsigned_abs();
    u64::try_from(det).expect("intersection number exceeds u64") * kind.intersection_unit()
}

/// Farey adjacency: `|p_x q_y - q_x p_y| = 1`. The same graph serves both surfaces.
pub fn adjacent(x: Slope, y: Slope) -> bool {
    x.cross(y).unsigned_abs() == 1
}
