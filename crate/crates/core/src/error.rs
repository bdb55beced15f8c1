use thiserror::Error;

use crate::graph::Vertex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph6 parse error at byte {offset}: {message}")]
    Graph6 { offset: usize, message: String },

    #[error("edge list parse error at line {line}: {message}")]
    EdgeList { line: usize, message: String },

    #[error("graphs with {0} vertices are not supported (short graph6 form allows at most 62)")]
    UnsupportedSize(usize),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("edge set is not a union of two disjoint matchings: {0}")]
    InfeasibleUnion(String),

    #[error("refused: {0}")]
    Refused(String),

    #[error("graph has isolated vertices {0:?}; analysis assumes every vertex has an incident edge")]
    IsolatedVertices(Vec<Vertex>),
}

pub type Result<T> = std::result::Result<T, Error>;
