use thiserror::Error;

use crate::polygon::Vertex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polygon size {m} is outside the supported range {min}..={max} for {what}")]
    SizeGuard {
        what: &'static str,
        m: usize,
        min: usize,
        max: usize,
    },

    #[error("vertex {vertex} is outside 1..={m}")]
    VertexOutOfRange { vertex: usize, m: usize },

    #[error("vertex {0} is repeated")]
    RepeatedVertex(Vertex),

    #[error("expected a {expected}-subset, got {got} elements")]
    WrongSubsetSize { expected: usize, got: usize },

    #[error("{p}-{q} is not an internal diagonal of the {m}-gon")]
    NotADiagonal { p: Vertex, q: Vertex, m: usize },

    #[error("not a triangulation: {0}")]
    NotATriangulation(String),

    #[error("arc {0} is not in the triangulation")]
    ArcNotPresent(String),

    #[error("arcs {0} and {1} do not cross")]
    ArcsDoNotCross(String, String),

    #[error("empty collection of simplices")]
    EmptyCollection,

    #[error("collection of simplices is not a triangulation of the oriented matroid: {0}")]
    InvalidMatroidTriangulation(String),

    #[error("matroid triangulation is not stackable")]
    NotStackable,

    #[error("increasing-flip replay failed: {0}")]
    ReplayFailed(String),

    #[error("green sequence exceeded {0} mutations without reaching the target")]
    DepthExceeded(usize),

    #[error("point configuration is degenerate on {0:?}")]
    Degenerate([Vertex; 4]),

    #[error("parse error: {0}")]
    Parse(String),
}
