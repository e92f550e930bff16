//! Partition enumeration, vector sumsets and the dominating-set matching.

mod dominating;
mod partitions;
mod sumset;

pub use dominating::{dominating_matching, hopcroft_karp};
pub use partitions::{enum_partitions, enum_star_partitions};
pub use sumset::{sumset, sumset_naive, sumset_transform, IntVectorSet};
