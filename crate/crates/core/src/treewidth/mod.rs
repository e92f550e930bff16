//! Tree decompositions and the star-forest dynamic program over them.

mod decomposition;
mod dp;
mod nice;

pub use decomposition::{heuristic_decomposition, verify_decomposition, TreeDecomposition};
pub use dp::{enum_star_vectors_dp, enum_star_vectors_dp_with, solve_tw, Role};
pub use nice::{to_nice, NiceNode, NiceTreeDecomposition, NodeKind};
