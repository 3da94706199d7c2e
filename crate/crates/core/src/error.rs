use thiserror::Error;

use crate::farey::Slope;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("(0, 0) does not determine a slope")]
    ZeroSlope,

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("matrix determinant is {0}, expected +1 or -1")]
    NotUnimodular(i128),

    #[error("{curve} has empty projection to the annulus with core {core}")]
    EmptyProjection { curve: Slope, core: Slope },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("not a geodesic: {0}")]
    NotGeodesic(String),

    #[error("query vertices span more than one connected component")]
    DisconnectedQuery,

    #[error("S_{{{genus},{boundary}}} has complexity {complexity}, need at least 1")]
    InvalidSurface {
        genus: u32,
        boundary: u32,
        complexity: i64,
    },

    #[error("parse error: {0}")]
    Parse(String),
}
