//! Twist-coordinate model of annular projections.
//!
//! For an annulus `Z` with core `x`, a curve `y ≠ x` is recorded by the
//! rational number `g(y)` where `g` is the canonical map sending `x` to `1/0`.
//! Twisting about `x` translates this coordinate by whole units, so the model
//! distance compares `floor(t / s)` where `s` is the coordinate shift of one
//! full twist (1 on the torus, 2 on the sphere):
//!
//! ```text
//! d(y, z) = 1                                   if y = z
//!         = |floor(t_y / s) - floor(t_z / s)| + 2  otherwise
//! ```
//!
//! This reproduces `d(y, T^n y) = |n| + 2` on the torus exactly.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::farey::{normalizer_to_infinity, MobiusMap, Slope, SurfaceKind};
use crate::{Error, Result};

/// A proper annular subsurface, identified by its core curve.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Annulus {
    core: Slope,
    normalizer: MobiusMap,
}

impl Annulus {
    pub fn new(core: Slope) -> Annulus {
        Annulus {
            core,
            normalizer: normalizer_to_infinity(core),
        }
    }

    pub fn core(&self) -> Slope {
        self.core
    }

    pub fn normalizer(&self) -> &MobiusMap {
        &self.normalizer
    }
}

impl PartialOrd for Annulus {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Annulus {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.core.cmp(&other.core)
    }
}

impl fmt::Display for Annulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R({})", self.core)
    }
}

impl Serialize for Annulus {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.core.serialize(serializer)
    }
}

/// Position of a curve in the annulus, as an exact rational.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TwistCoord(Ratio<i64>);

impl TwistCoord {
    pub fn value(&self) -> Ratio<i64> {
        self.0
    }

    /// `floor(t / unit)`.
    pub fn floor_units(&self, unit: i64) -> i64 {
        self.0.numer().div_floor(&(self.0.denom() * unit))
    }

    /// Fractional part of `t / unit`, in `[0, 1)`.
    pub fn frac_units(&self, unit: i64) -> Ratio<i64> {
        let scaled = self.0 / unit;
        scaled - Ratio::from_integer(self.floor_units(unit))
    }
}

impl fmt::Display for TwistCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl Serialize for TwistCoord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Whether `y` meets the core, i.e. has nonempty projection to `z`.
pub fn projects(z: &Annulus, y: Slope) -> bool {
    y != z.core
}

pub fn twist_coord(z: &Annulus, y: Slope) -> Result<TwistCoord> {
    if !projects(z, y) {
        return Err(Error::EmptyProjection { curve: y, core: z.core });
    }
    let image = z.normalizer.try_apply(y)?;
    Ok(TwistCoord(Ratio::new(image.numer(), image.denom())))
}

/// Model distance between the projections of `y` and `w` to `z`.
pub fn annular_distance(kind: SurfaceKind, z: &Annulus, y: Slope, w: Slope) -> Result<u64> {
    let ty = twist_coord(z, y)?;
    let tw = twist_coord(z, w)?;
    if y == w {
        return Ok(1);
    }
    let unit = kind.twist_unit();
    Ok(ty.floor_units(unit).abs_diff(tw.floor_units(unit)) + 2)
}

/// One line of an audit dump: a curve's twist and its distance to a reference.
#[derive(Clone, Debug, Serialize)]
pub struct TwistRecord {
    pub core: Slope,
    pub twist: TwistCoord,
    pub distance: u64,
}
