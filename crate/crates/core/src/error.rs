use thiserror::Error;

use crate::vertex_set::VertexSet;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {0} appears in no face")]
    GhostVertex(usize),
    #[error("vertex label {label} outside 1..={n}")]
    LabelOutOfRange { label: usize, n: usize },
    #[error("{0} is not a face of the complex")]
    NotAFace(VertexSet),
    #[error("{0} is not a facet of the complex")]
    NotAFacet(VertexSet),
    #[error("gluing faces have different sizes ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("invalid simplicial wedge vector: {0}")]
    InvalidWedge(String),
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("{n} vertices exceeds the sweep limit of {limit}")]
    LimitExceeded { n: usize, limit: usize },
    #[error("classes belong to different complexes")]
    MixedComplexes,
    #[error("Z_K is acyclic (K is a simplex)")]
    Acyclic,
    #[error("complex is not a certified sphere: {0}")]
    NotCertifiedSphere(String),
    #[error("complex is not a triangulated sphere of dimension at most 2")]
    NotALowSphere,
    #[error("complex is outside the scope of the decision procedure: {0}")]
    OutOfTheoremScope(String),
    #[error("cross-check mismatch: {0}")]
    CrossCheckMismatch(String),
    #[error("inconsistent category bounds: lower {lower} > upper {upper}")]
    InconsistentBounds { lower: usize, upper: usize },
    #[error("invalid construction certificate: {0}")]
    InvalidCertificate(String),
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("polytope is not simple: {0}")]
    NotSimple(String),
    #[error("dual complex is not a 2-sphere")]
    NotASphere,
    #[error("corrupt cache entry {0}")]
    CorruptCacheEntry(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
