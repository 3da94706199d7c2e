use std::fmt;

use serde::Serialize;

use super::slope::{Slope, SurfaceKind};
use crate::{Error, Result};

/// An integer matrix `(a b; c d)` of determinant ±1 acting on slopes by
/// `p/q ↦ (a p + b q)/(c p + d q)`. Every such map is an automorphism of the
/// Farey graph.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct MobiusMap {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

impl MobiusMap {
    pub const IDENTITY: MobiusMap = MobiusMap { a: 1, b: 0, c: 0, d: 1 };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<MobiusMap> {
        let det = a as i128 * d as i128 - b as i128 * c as i128;
        if det.abs() != 1 {
            return Err(Error::NotUnimodular(det));
        }
        Ok(MobiusMap { a, b, c, d })
    }

    /// `p/q ↦ (p + n q)/q`, the twist about `1/0` in normalized coordinates.
    pub fn shear(n: i64) -> MobiusMap {
        MobiusMap { a: 1, b: n, c: 0, d: 1 }
    }

    pub fn entries(&self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn inverse(&self) -> MobiusMap {
        let det = self.det();
        MobiusMap {
            a: det * self.d,
            b: -det * self.b,
            c: -det * self.c,
            d: det * self.a,
        }
    }

    /// Matrix product `self · other`, i.e. apply `other` first.
    pub fn compose(&self, other: &MobiusMap) -> Result<MobiusMap> {
        let m = |x: i64, y: i64, z: i64, w: i64| -> Result<i64> {
            i64::try_from(x as i128 * y as i128 + z as i128 * w as i128)
                .map_err(|_| Error::Overflow("matrix product"))
        };
        Ok(MobiusMap {
            a: m(self.a, other.a, self.b, other.c)?,
            b: m(self.a, other.b, self.b, other.d)?,
            c: m(self.c, other.a, self.d, other.c)?,
            d: m(self.c, other.b, self.d, other.d)?,
        })
    }

    pub fn try_apply(&self, x: Slope) -> Result<Slope> {
        let (p, q) = (x.numer() as i128, x.denom() as i128);
        Slope::from_wide(
            self.a as i128 * p + self.b as i128 * q,
            self.c as i128 * p + self.d as i128 * q,
        )
    }

    /// Image of a slope.
    ///
    /// Panics if the reduced image does not fit in `i64`.
    pub fn apply(&self, x: Slope) -> Slope {
        self.try_apply(x).expect("slope image overflows i64")
    }
}

impl fmt::Display for MobiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{};{},{})", self.a, self.b, self.c, self.d)
    }
}

/// Convenience wrapper for [`MobiusMap::apply`].
pub fn apply(m: &MobiusMap, x: Slope) -> Slope {
    m.apply(x)
}

/// The canonical map sending `x` to `1/0`.
///
/// For `x = p/q` with `q > 0` this is `(v, -u; -q, p)` where `p v - q u = 1`
/// and `0 <= v < q`; for `x = 1/0` it is the identity.
pub fn normalizer_to_infinity(x: Slope) -> MobiusMap {
    if x.is_infinity() {
        return MobiusMap::IDENTITY;
    }
    let (p, q) = (x.numer() as i128, x.denom() as i128);
    let v = mod_inverse(p.rem_euclid(q), q);
    let u = (p * v - 1) / q;
    debug_assert_eq!(p * v - q * u, 1);
    let narrow = |t: i128| i64::try_from(t).expect("normalizer entry overflows i64");
    MobiusMap {
        a: narrow(v),
        b: narrow(-u),
        c: -x.denom(),
        d: x.numer(),
    }
}

/// Inverse of `a` modulo `m` in `[0, m)`; `a` and `m` coprime, `m >= 1`.
fn mod_inverse(a: i128, m: i128) -> i128 {
    if m == 1 {
        return 0;
    }
    let (mut r0, mut r1) = (m, a);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let quot = r0 / r1;
        (r0, r1) = (r1, r0 - quot * r1);
        (t0, t1) = (t1, t0 - quot * t1);
    }
    debug_assert_eq!(r0, 1);
    t0.rem_euclid(m)
}

/// Conjugate of `shear(n)` by the canonical normalizer of `x`.
fn conjugated_shear(x: Slope, n: i64, y: Slope) -> Result<Slope> {
    let g = normalizer_to_infinity(x);
    let moved = MobiusMap::shear(n).try_apply(g.try_apply(y)?)?;
    g.inverse().try_apply(moved)
}

/// `T_x^n(y)`: a full twist shifts the normalized coordinate by one unit on
/// the torus and by two on the sphere (two half twists).
pub fn dehn_twist(kind: SurfaceKind, x: Slope, n: i64, y: Slope) -> Slope {
    let shift = n
        .checked_mul(kind.twist_unit())
        .expect("twist power overflows i64");
    conjugated_shear(x, shift, y).expect("twisted slope overflows i64")
}

/// `H_x^n(y)`, the half twist on the four-holed sphere.
pub fn half_twist(x: Slope, n: i64, y: Slope) -> Slope {
    conjugated_shear(x, n, y).expect("twisted slope overflows i64")
}
