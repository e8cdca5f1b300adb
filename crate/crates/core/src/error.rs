use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("complex has no facets")]
    EmptyFacetList,
    #[error("facet #{0} is empty")]
    EmptyFacet(usize),
    #[error("vertex {vertex} lies outside 1..={m}")]
    VertexOutOfRange { vertex: usize, m: usize },
    #[error("vertex {0} does not appear in any facet")]
    UnusedVertex(usize),
    #[error("{0} is not a face of the complex")]
    NotAFace(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("coefficient matrix is not a linear system of parameters")]
    NotLsop,
    #[error("no linear system of parameters found after {0} tries")]
    LsopSearchExhausted(usize),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{m} vertices exceed the subset cap of {cap}")]
    CapExceeded { m: usize, cap: usize },
    #[error("face monomials span only {found} of {needed} dimensions in degree {degree}")]
    SpanFailure {
        degree: usize,
        found: usize,
        needed: usize,
    },
    #[error("cochain is not a cocycle")]
    NotCocycle,
}

pub type Result<T> = std::result::Result<T, Error>;
