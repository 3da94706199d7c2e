//! Exact evaluation of the threshold `N_S(l, k)` beyond which every set of
//! curves contains `k` elements pairwise more than `l` apart in some
//! subsurface projection.
//!
//! With `M` the bounded-geodesic-image constant:
//!
//! ```text
//! N_{S_{1,1}}(l, k) = ((l + 2M + 2) k)^(l+1)
//! N_{S_{0,4}}(l, k) = (2 (l + 2M + 2) k)^(l+1)
//! N_S(l, k)         = (2 N'(L, k))^(l+1),  L = l + 2M,  when ξ(S) >= 2
//! ```
//!
//! where `N'` is the maximum of `N` over all surfaces of strictly smaller
//! complexity. The recursive formula does not look at `(g, n)`, so `N'` is
//! memoized per complexity level.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::farey::SurfaceKind;
use crate::{Error, Result};

/// Default ceiling on decimal digits for exact evaluation.
pub const DEFAULT_DIGIT_CAP: u64 = 1_000_000;

/// Relative and absolute padding applied after every floating-point step so
/// that log estimates stay upper bounds.
const LOG_PAD_REL: f64 = 1e-13;
const LOG_PAD_ABS: f64 = 1e-13;

/// `S_{g,n}`: genus `g`, `n` boundary components.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Surface {
    pub genus: u32,
    pub boundary: u32,
}

impl Surface {
    pub const TORUS_1_1: Surface = Surface { genus: 1, boundary: 1 };
    pub const SPHERE_0_4: Surface = Surface { genus: 0, boundary: 4 };

    pub fn new(genus: u32, boundary: u32) -> Result<Surface> {
        let s = Surface { genus, boundary };
        complexity(s)?;
        Ok(s)
    }

    pub fn for_kind(kind: SurfaceKind) -> Surface {
        match kind {
            SurfaceKind::Torus => Surface::TORUS_1_1,
            SurfaceKind::Sphere => Surface::SPHERE_0_4,
        }
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S_{{{},{}}}", self.genus, self.boundary)
    }
}

/// `ξ(S_{g,n}) = 3g + n - 3`; surfaces below complexity one are rejected.
pub fn complexity(s: Surface) -> Result<u32> {
    let xi = 3 * s.genus as i64 + s.boundary as i64 - 3;
    if xi < 1 {
        return Err(Error::InvalidSurface {
            genus: s.genus,
            boundary: s.boundary,
            complexity: xi,
        });
    }
    Ok(xi as u32)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct BoundParams {
    pub l: u64,
    pub k: u64,
    pub m: u64,
}

impl BoundParams {
    pub fn new(l: u64, k: u64, m: u64) -> Result<BoundParams> {
        if l == 0 || k < 2 || m == 0 {
            return Err(Error::Precondition(format!(
                "bound parameters need l > 0, k > 1, M > 0; got l={l}, k={k}, M={m}"
            )));
        }
        Ok(BoundParams { l, k, m })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exact,
    Log10,
}

/// A bound value, either exact or as an upper bound on its base-10 logarithm.
#[derive(Clone, PartialEq, Debug)]
pub enum BigBound {
    Exact(BigUint),
    /// `x` with `log10(value) <= x`.
    Log10(f64),
}

impl BigBound {
    pub fn mode(&self) -> Mode {
        match self {
            BigBound::Exact(_) => Mode::Exact,
            BigBound::Log10(_) => Mode::Log10,
        }
    }

    pub fn exact(&self) -> Option<&BigUint> {
        match self {
            BigBound::Exact(v) => Some(v),
            BigBound::Log10(_) => None,
        }
    }

    /// Base-10 logarithm; approximate for exact values, the stored upper
    /// bound otherwise.
    pub fn log10(&self) -> f64 {
        match self {
            BigBound::Exact(v) => log10_biguint(v),
            BigBound::Log10(x) => *x,
        }
    }

    /// Whether a count is provably within this bound.
    pub fn admits(&self, count: u64) -> bool {
        match self {
            BigBound::Exact(v) => BigUint::from(count) <= *v,
            // An upper bound on the log can only certify counts far below it.
            BigBound::Log10(x) => (count.max(1) as f64).log10() < *x - 1.0,
        }
    }
}

impl fmt::Display for BigBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BigBound::Exact(v) => write!(f, "{v}"),
            BigBound::Log10(x) => write!(f, "10^{x}"),
        }
    }
}

impl Serialize for BigBound {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// `log10` of a big integer from its top 64 bits.
pub fn log10_biguint(v: &BigUint) -> f64 {
    let bits = v.bits();
    if bits <= 64 {
        return v.to_f64().unwrap().log10();
    }
    let shift = bits - 64;
    let top = (v >> shift).to_f64().unwrap();
    (top.log2() + shift as f64) * std::f64::consts::LOG10_2
}

fn pad_up(x: f64) -> f64 {
    x + x.abs() * LOG_PAD_REL + LOG_PAD_ABS
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
struct LevelKey {
    level: u32,
    l: u64,
    k: u64,
    m: u64,
}

/// Evaluates `N_S(l, k)` with a shared memo of per-complexity values.
///
/// The memo is behind a lock so one calculator can serve several threads;
/// values are computed outside the lock and are identical whichever thread
/// publishes them first.
#[derive(Debug)]
pub struct BoundCalculator {
    digit_cap: u64,
    exact: RwLock<HashMap<LevelKey, Arc<BigUint>>>,
    logs: RwLock<HashMap<LevelKey, f64>>,
}

impl Default for BoundCalculator {
    fn default() -> Self {
        BoundCalculator::new(DEFAULT_DIGIT_CAP)
    }
}

impl BoundCalculator {
    pub fn new(digit_cap: u64) -> BoundCalculator {
        BoundCalculator {
            digit_cap,
            exact: RwLock::default(),
            logs: RwLock::default(),
        }
    }

    pub fn digit_cap(&self) -> u64 {
        self.digit_cap
    }

    /// `N_S(l, k)`. Exact mode falls back to [`BigBound::Log10`] when the
    /// predicted number of digits exceeds the cap.
    pub fn n_bound(&self, s: Surface, p: BoundParams, mode: Mode) -> Result<BigBound> {
        let xi = complexity(s)?;
        let log = self.n_bound_log10(s, xi, p);
        let predicted_digits = log.floor() + 1.0;
        if mode == Mode::Log10 || predicted_digits > self.digit_cap as f64 {
            return Ok(BigBound::Log10(log));
        }
        let value = match (xi, s == Surface::TORUS_1_1) {
            (1, true) => torus_base(p.l, p.k, p.m),
            (1, false) => sphere_base(p.l, p.k, p.m),
            _ => {
                let lower = self.lower_exact(xi - 1, p.l + 2 * p.m, p.k, p.m);
                (lower.as_ref() * 2u32).pow(exponent(p.l))
            }
        };
        Ok(BigBound::Exact(value))
    }

    fn n_bound_log10(&self, s: Surface, xi: u32, p: BoundParams) -> f64 {
        match (xi, s == Surface::TORUS_1_1) {
            (1, true) => base_log10(1, p.l, p.k, p.m),
            (1, false) => base_log10(2, p.l, p.k, p.m),
            _ => {
                let lower = self.lower_log10(xi - 1, p.l + 2 * p.m, p.k, p.m);
                pad_up((p.l + 1) as f64 * pad_up(std::f64::consts::LOG10_2 + lower))
            }
        }
    }

    /// Value shared by every surface of complexity `level`: the sphere value
    /// at level one, the recursive formula above it.
    fn level_exact(&self, level: u32, l: u64, k: u64, m: u64) -> Arc<BigUint> {
        let key = LevelKey { level, l, k, m };
        if let Some(v) = self.exact.read().unwrap().get(&key) {
            return v.clone();
        }
        let value = if level == 1 {
            torus_base(l, k, m).max(sphere_base(l, k, m))
        } else {
            let lower = self.lower_exact(level - 1, l + 2 * m, k, m);
            (lower.as_ref() * 2u32).pow(exponent(l))
        };
        let value = Arc::new(value);
        self.exact.write().unwrap().entry(key).or_insert(value).clone()
    }

    /// `N'` over complexities `1..=level`.
    fn lower_exact(&self, level: u32, l: u64, k: u64, m: u64) -> Arc<BigUint> {
        (1..=level)
            .map(|j| self.level_exact(j, l, k, m))
            .max()
            .expect("level >= 1")
    }

    fn level_log10(&self, level: u32, l: u64, k: u64, m: u64) -> f64 {
        let key = LevelKey { level, l, k, m };
        if let Some(&v) = self.logs.read().unwrap().get(&key) {
            return v;
        }
        let value = if level == 1 {
            base_log10(2, l, k, m)
        } else {
            let lower = self.lower_log10(level - 1, l + 2 * m, k, m);
            pad_up((l + 1) as f64 * pad_up(std::f64::consts::LOG10_2 + lower))
        };
        *self.logs.write().unwrap().entry(key).or_insert(value)
    }

    fn lower_log10(&self, level: u32, l: u64, k: u64, m: u64) -> f64 {
        (1..=level)
            .map(|j| self.level_log10(j, l, k, m))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Bounds for tight slices: `(N_S(2M, 3), N_S(4M, 3))`.
    pub fn slice_bound_tight(&self, s: Surface, m: u64, mode: Mode) -> Result<(BigBound, BigBound)> {
        Ok((
            self.n_bound(s, BoundParams::new(2 * m, 3, m)?, mode)?,
            self.n_bound(s, BoundParams::new(4 * m, 3, m)?, mode)?,
        ))
    }

    /// Bounds for `D`-weakly tight slices: `(N_S(2D, 3), N_S(2(D + M), 3))`,
    /// defined for `D >= M`.
    pub fn slice_bound_weak(&self, s: Surface, d: u64, m: u64, mode: Mode) -> Result<(BigBound, BigBound)> {
        if d < m {
            return Err(Error::Precondition(format!(
                "weak-tight slice bounds need D >= M, got D={d}, M={m}"
            )));
        }
        Ok((
            self.n_bound(s, BoundParams::new(2 * d, 3, m)?, mode)?,
            self.n_bound(s, BoundParams::new(2 * (d + m), 3, m)?, mode)?,
        ))
    }
}

fn exponent(l: u64) -> u32 {
    u32::try_from(l + 1).expect("exponent l + 1 exceeds u32")
}

fn torus_base(l: u64, k: u64, m: u64) -> BigUint {
    (BigUint::from(l + 2 * m + 2) * k).pow(exponent(l))
}

fn sphere_base(l: u64, k: u64, m: u64) -> BigUint {
    (BigUint::from(l + 2 * m + 2) * k * 2u32).pow(exponent(l))
}

fn base_log10(factor: u64, l: u64, k: u64, m: u64) -> f64 {
    let base = factor as f64 * (l + 2 * m + 2) as f64 * k as f64;
    pad_up((l + 1) as f64 * pad_up(base.log10()))
}

/// `log10` of the closed-form envelope
/// `N_{S_{0,4}}(ξ L, k)^((2 ξ L)^ξ)` with `L = l + 2M`.
pub fn growth_upper(s: Surface, p: BoundParams) -> Result<BigBound> {
    let xi = complexity(s)? as f64;
    let big_l = (p.l + 2 * p.m) as f64;
    let inner_l = xi * big_l;
    let base = 2.0 * (inner_l + 2.0 * p.m as f64 + 2.0) * p.k as f64;
    let sphere_log = (inner_l + 1.0) * base.log10();
    Ok(BigBound::Log10((2.0 * xi * big_l).powf(xi) * sphere_log))
}

/// Free-function form using a fresh calculator with the default digit cap.
pub fn n_bound(s: Surface, p: BoundParams, mode: Mode) -> Result<BigBound> {
    BoundCalculator::default().n_bound(s, p, mode)
}
