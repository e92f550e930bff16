//! Shifted BFS-layer pruning for planar inputs of bounded degree.
//!
//! Deleting every `3k`-th level class (offset by a shift) leaves graphs of
//! bounded outerplanarity, which the tree decomposition DP solves exactly.
//! Over all shift pairs at least one loses at most an `ε` fraction of an
//! optimal forest. Planarity is not checked; on other graphs the result is
//! still a valid lower bound.

use crate::error::{Error, Result};
use crate::forest::StarCountVector;
use crate::graph::{bfs_levels, Graph};
use crate::treewidth::solve_tw;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EptasConfig {
    epsilon: f64,
}

impl EptasConfig {
    pub fn new(epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::precondition(format!(
                "epsilon must lie in (0, 1), got {epsilon}"
            )));
        }
        Ok(EptasConfig { epsilon })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Number of shifts, `⌈2/ε⌉`.
    pub fn k(&self) -> usize {
        (2.0 / self.epsilon).ceil() as usize
    }
}

/// Removes the vertices whose BFS level is `3r + 2` modulo `3k`. Returns the
/// remaining induced subgraph and, per new vertex, its original index.
pub fn prune_levels(g: &Graph, r: usize, k: usize) -> (Graph, Vec<usize>) {
    assert!(r < k, "shift {r} out of range for k = {k}");
    let levels = bfs_levels(g);
    let kept: Vec<usize> = (0..g.vertex_count())
        .filter(|&v| levels[v] % (3 * k) != 3 * r + 2)
        .collect();
    (g.induced_subgraph(&kept), kept)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EptasSolution {
    pub size: usize,
    pub vector: StarCountVector,
    pub shift: (usize, usize),
}

pub fn solve_eptas(g1: &Graph, g2: &Graph, cfg: EptasConfig) -> EptasSolution {
    let k = cfg.k();
    let pruned1: Vec<Graph> = (0..k).map(|r| prune_levels(g1, r, k).0).collect();
    let pruned2: Vec<Graph> = (0..k).map(|r| prune_levels(g2, r, k).0).collect();
    let mut best: Option<EptasSolution> = None;
    for (r1, h1) in pruned1.iter().enumerate() {
        for (r2, h2) in pruned2.iter().enumerate() {
            let (size, vector) = solve_tw(h1, h2);
            if best.as_ref().map_or(true, |b| size > b.size) {
                best = Some(EptasSolution {
                    size,
                    vector,
                    shift: (r1, r2),
                });
            }
        }
    }
    best.expect("at least one shift pair")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    #[test]
    fn config() {
        assert_eq!(EptasConfig::new(0.5).unwrap().k(), 4);
        assert_eq!(EptasConfig::new(0.9).unwrap().k(), 3);
        assert!(EptasConfig::new(0.0).is_err());
        assert!(EptasConfig::new(1.0).is_err());
    }

    #[test]
    fn pruning() {
        let (h, kept) = prune_levels(&path(8), 0, 2);
        assert_eq!(kept, vec![0, 1, 3, 4, 5, 6, 7]);
        assert_eq!(h.edge_count(), 5);
        let (h, kept) = prune_levels(&path(4), 1, 2);
        assert_eq!((h, kept.len()), (path(4), 4));
        for r in 0..3 {
            assert_eq!(prune_levels(&complete(3), r, 3).0, complete(3));
        }
    }

    #[test]
    fn solutions() {
        let cfg = EptasConfig::new(0.5).unwrap();
        assert_eq!(solve_eptas(&path(2), &path(2), cfg).size, 2);
        let s = solve_eptas(&path(4), &star(3), EptasConfig::new(0.9).unwrap());
        assert!((1..=3).contains(&s.size));
        let (h1, _) = prune_levels(&path(4), s.shift.0, 3);
        let (h2, _) = prune_levels(&star(3), s.shift.1, 3);
        assert_eq!(solve_tw(&h1, &h2).0, s.size);
    }
}
