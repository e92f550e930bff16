//! Exact and approximate solvers for the maximum common star forest
//! subgraph problem: given two graphs, find the largest star forest that
//! is a subgraph of both.

pub mod bip;
pub mod combinatorics;
pub mod components;
pub mod eptas;
pub mod error;
pub mod forest;
pub mod fpt;
pub mod graph;
pub mod instance;
pub mod matching;
pub mod oracle;
pub mod reductions;
pub mod treewidth;
pub mod vc;

pub use error::{Error, ParseError, Result};
pub use forest::{
    verify_embedding, Certificate, Embedding, StarCountVector, StarForest, VectorFamily,
};
pub use graph::{bfs_levels, parse_graph, Graph};
pub use instance::{parse_instance, Instance};
