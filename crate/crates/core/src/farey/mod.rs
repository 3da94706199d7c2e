//! The Farey graph as the curve graph of `S_{1,1}` and `S_{0,4}`.

mod ladder;
mod mobius;
mod slope;

pub use ladder::{distance, geodesics, link_at_distance, pivot_candidates, Geodesic};
pub use mobius::{apply, dehn_twist, half_twist, normalizer_to_infinity, MobiusMap};
pub use slope::{adjacent, canonical, intersection, Slope, SurfaceKind};
