use thiserror::Error;

use crate::lattice::LatticePoint;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("no primitive direction: zero vector")]
    NoPrimitiveDirection,

    #[error("empty support")]
    EmptySupport,

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("degenerate Newton polygon: support spans dimension {0}")]
    DegenerateNewtonPolygon(u8),

    #[error("tropical curve is not smooth: {0}")]
    NonSmooth(String),

    #[error("dual segment {a}-{b} is not adjacent to two triangles")]
    NotTriangulated { a: LatticePoint, b: LatticePoint },

    #[error("missing sign for lattice point {0}")]
    MissingSign(LatticePoint),

    #[error("invalid family: {0}")]
    InvalidFamily(String),

    #[error("coefficient at {point} overflows at t = {t:e} (log-magnitude {log_magnitude:.1}); use a smaller t")]
    Overflow { t: f64, point: LatticePoint, log_magnitude: f64 },

    #[error("singular point of V_f: both log-derivatives vanish")]
    SingularPoint,

    #[error("degenerate: the log Gauss map is constant on a component (inflection polynomial vanishes identically)")]
    DegenerateGaussMap,

    #[error("resultant vanishes identically: f and its inflection polynomial share a component (non-generic input)")]
    ResultantVanishes,

    #[error("root finder did not converge after {iterations} iterations (worst relative residual {residual:e})")]
    RootsNotConverged { iterations: usize, residual: f64 },

    #[error("polynomial has degree 0 after stripping")]
    ConstantPolynomial,

    #[error("empty point set")]
    EmptyPointSet,

    #[error("twist set is infeasible: {0}")]
    Infeasible(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
