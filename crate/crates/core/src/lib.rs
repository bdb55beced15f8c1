//! Exact computation of the disjoint-matching-pair parameters β, λ and α of
//! small graphs, the alternating-path machinery behind them, and a
//! structural checker for graphs with β/α = 5/4 built on spanning forests of
//! spanners.

pub mod alternating;
pub mod characterization;
pub mod edgeset;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod harness;
pub mod matching;
pub mod pair;
pub mod structure;

pub use edgeset::EdgeSet;
pub use error::{Error, Result};
pub use graph::{Edge, EdgeId, Graph, Vertex};
pub use graph6::{parse_graph6, to_graph6};
pub use matching::{beta, maximum_matching, Matching};
pub use pair::{solve, solve_brute, DisjointPair, PairSolution};
pub use structure::{spanner_template, SForest, SpannerEmbedding};
