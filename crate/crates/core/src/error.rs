use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[non_exhaustive]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix columns are linearly dependent (rank {rank}, expected {expected})")]
    RankDeficient { rank: usize, expected: usize },

    #[error("label {label} is outside 1..={max}")]
    LabelOutOfRange { label: i64, max: usize },

    #[error("invalid fundamental set: {0}")]
    InvalidFundamentalSet(String),

    #[error("invalid simplicial complex: {0}")]
    InvalidComplex(String),

    #[error("the complex has no facets")]
    EmptyComplex,

    #[error("the complex is not pure")]
    NotPure,

    #[error("the fundamental set does not satisfy SEU")]
    SeuViolated,

    #[error("degenerate type: n = M, the associated complex is {{∅}}")]
    DegenerateType,

    #[error("hull or cone is not full-dimensional: {0}")]
    NotFullDimensional(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("not a good system: {0}")]
    NotGoodSystem(String),

    #[error("0 is not in the convex hull of the directions")]
    SiegelViolated,

    #[error("directions are not integral; scale them first")]
    NotConditionK,

    #[error("projected cone collapsed: {0}")]
    CollapsedCone(String),

    #[error("invalid fan: {0}")]
    InvalidFan(String),

    #[error("vertex {0} has zero coordinates")]
    ZeroVertex(usize),

    #[error("expected an even vertex count, got {0}")]
    OddVertexCount(usize),

    #[error("expected an odd vertex count, got {0}")]
    EvenVertexCount(usize),

    #[error("realization is not starshaped around 0: {0}")]
    StarshapeViolated(String),

    #[error("invalid realization: {0}")]
    InvalidRealization(String),

    #[error("constructed system failed verification: {0}")]
    VerificationFailed(String),

    #[error("complex uses label {label} but the ambient count is {n}")]
    LabelOverflow { label: usize, n: usize },

    #[error("n = {n} exceeds the enumeration limit {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("the fundamental set has no indispensable element")]
    NoIndispensable,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
