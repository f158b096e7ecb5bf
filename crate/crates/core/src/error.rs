use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("all homogeneous coordinates are zero")]
    InvalidPoint,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("inputs are linearly dependent")]
    DegenerateSpan,
    #[error("points are not collinear")]
    NotCollinear,
    #[error("quadruple has coinciding base points")]
    DegenerateQuadruple,
    #[error("triple is degenerate")]
    DegenerateTriple,
    #[error("point lies on the hyperplane at infinity of the chart")]
    AtInfinity,
    #[error("chart matrix is singular")]
    SingularChart,
    #[error("points do not form a projective frame")]
    NotAFrame,
    #[error("input is not generic with respect to the simplex")]
    NotGeneric,
    #[error("lines expected to be concurrent are not")]
    ConcurrencyFailure,
    #[error("invalid auxiliary point for the ruler construction")]
    BadAuxiliary,
    #[error("construction trace is malformed: {0}")]
    BadTrace(String),
    #[error("expected {expected} vectors, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("contraction count {k} outside 1..={degree}")]
    ContractionOutOfRange { k: usize, degree: usize },
    #[error("zero vector")]
    InvalidVector,
    #[error("point lies in the kernel of the polar form at the required level")]
    KernelObstruction,
    #[error("hyperplane has no preimage under the last polarity")]
    NotInvertibleHere,
    #[error("Cremona transformation is undefined at a vertex")]
    UndefinedAtVertex,
    #[error("convex hull is not full-dimensional")]
    DegenerateBody,
    #[error("point is not interior to the convex body")]
    NotInterior,
    #[error("hyperplane meets the closure of the convex body")]
    NotDisjoint,
    #[error("chart does not send the given hyperplane to infinity")]
    ChartMismatch,
    #[error("solver did not converge after {iterations} iterations")]
    NoConvergence {
        iterations: usize,
        iterates: Vec<Vec<f64>>,
    },
    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
