//! Exact combinatorics for the curve graphs of the once-holed torus and the
//! four-holed sphere, together with the counting bounds that make the curve
//! graph "uniformly locally finite" after subsurface projection.
//!
//! Both complexity-one curve graphs are the Farey graph on `Q ∪ {∞}`. The
//! crate is organised bottom-up:
//!
//! - [`farey`]: slopes, the `SL(2,Z)`/`GL(2,Z)` action, Dehn and half twists,
//!   distance and geodesic enumeration through the Farey ladder.
//! - [`annular`]: a twist-coordinate model of annular projections.
//! - [`projections`]: the separation property over all subsurfaces, witness
//!   and cover certificates, and the bounded-geodesic-image audit.
//! - [`slices`]: slices of geodesics near a vertex and weak-tight indices.
//! - [`graph`]: the same dichotomy on ordinary finite graphs.
//! - [`bounds`]: big-integer evaluation of the threshold `N_S(l, k)`.
//! - [`io`]: the line-oriented text formats shared with the CLI.

pub mod annular;
pub mod bounds;
mod error;
pub mod farey;
pub mod graph;
pub mod io;
pub mod projections;
pub mod slices;

pub use error::{Error, Result};
