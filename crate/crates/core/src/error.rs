use thiserror::Error;

/// Errors produced by diagram construction, invariant evaluation and bound formulas.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("malformed crossing tuple `{0}`")]
    MalformedTuple(String),
    #[error("edge label {0} is dangling (appears once)")]
    DanglingEdge(u64),
    #[error("edge label {label} appears {count} times")]
    OverusedEdge { label: u64, count: usize },
    #[error("rotation system around edge label {label} does not embed in the sphere (V - E + F = {euler})")]
    NotSpherical { label: u64, euler: i64 },
    #[error("inconsistent strand orientation at edge label {0}")]
    InconsistentOrientation(u64),
    #[error("tangle corner {0} is not declared")]
    MissingCorner(&'static str),
    #[error("tangle corner {0} is declared twice")]
    DuplicateCorner(&'static str),
    #[error("malformed corner declaration `{0}`")]
    MalformedCorner(String),
    #[error("a Conway sum needs at least one tangle")]
    EmptySum,
    #[error("diagram carries no belt marking")]
    MissingBelt,
    #[error("diagram carries no tangle decomposition")]
    MissingDecomposition,
    #[error("diagram is not connected")]
    Disconnected,
    #[error("diagram has no crossings")]
    NoCrossings,
    #[error("the empty diagram has no bracket")]
    EmptyDiagram,
    #[error("{crossings} crossings exceed the state-sum cap of {cap}")]
    CapExceeded { crossings: usize, cap: usize },
    #[error("the zero polynomial has no boundary coefficients")]
    ZeroPolynomial,
    #[error("tangle is not alternating")]
    NotAlternating,
    #[error("{op}: argument out of domain ({detail})")]
    Domain { op: &'static str, detail: String },
    #[error("unknown census manifold `{0}`")]
    UnknownManifold(String),
    #[error("malformed lens space `{0}`")]
    MalformedLensSpace(String),
    #[error("cusp translations are linearly dependent")]
    DegenerateLattice,
    #[error("instance generation failed: {0}")]
    Generation(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        op,
        detail: detail.into(),
    }
}
