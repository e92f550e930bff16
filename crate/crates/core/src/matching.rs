//! Maximum matching, minimum edge cover and bounded vertex cover.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::forest::{Embedding, StarForest};
use crate::graph::Graph;

/// Maximum-cardinality matching in a general graph (Edmonds' blossom
/// algorithm). Edges are returned as `(u, v)` with `u < v`, sorted.
pub fn max_matching(g: &Graph) -> Vec<(usize, usize)> {
    let mate = Blossom::new(g).run();
    let mut out: Vec<_> = mate
        .iter()
        .enumerate()
        .filter_map(|(u, &m)| (m != NONE && u < m).then_some((u, m)))
        .collect();
    out.sort_unstable();
    out
}

const NONE: usize = usize::MAX;

struct Blossom<'a> {
    g: &'a Graph,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'a> Blossom<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.vertex_count();
        Blossom {
            g,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn run(mut self) -> Vec<usize> {
        let n = self.g.vertex_count();
        // greedy warm start
        for u in 0..n {
            if self.mate[u] == NONE {
                if let Some(&v) = self.g.neighbors(u).iter().find(|&&v| self.mate[v] == NONE) {
                    self.mate[u] = v;
                    self.mate[v] = u;
                }
            }
        }
        for root in 0..n {
            if self.mate[root] != NONE {
                continue;
            }
            if let Some(mut v) = self.find_path(root) {
                while v != NONE {
                    let pv = self.parent[v];
                    let ppv = self.mate[pv];
                    self.mate[v] = pv;
                    self.mate[pv] = v;
                    v = ppv;
                }
            }
        }
        self.mate
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.g.vertex_count()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.g.vertex_count();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for idx in 0..self.g.degree(v) {
                let to = self.g.neighbors(v)[idx];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let m = self.mate[to];
                    self.used[m] = true;
                    self.queue.push_back(m);
                }
            }
        }
        None
    }
}

/// Minimum edge cover of a graph without isolated vertices, returned as
/// the star forest it induces.
///
/// Built from a maximum matching plus one edge per unmatched vertex. Each
/// unmatched vertex hangs off a matched neighbour (two unmatched neighbours
/// would extend the matching), so each component is a star.
pub fn min_edge_cover(g: &Graph) -> Result<(StarForest, Embedding)> {
    if let Some(v) = g.isolated_vertices().first() {
        return Err(Error::precondition(format!(
            "vertex {v} is isolated; no edge cover exists"
        )));
    }
    let n = g.vertex_count();
    let matching = max_matching(g);
    let mut mate = vec![NONE; n];
    for &(u, v) in &matching {
        mate[u] = v;
        mate[v] = u;
    }
    // star index keyed by its centre
    let mut centre_of_edge = vec![NONE; n];
    let mut stars: Vec<Vec<usize>> = Vec::new();
    let mut extra: Vec<(usize, usize)> = Vec::new();
    for v in 0..n {
        if mate[v] == NONE {
            let w = g.neighbors(v)[0];
            debug_assert!(mate[w] != NONE);
            extra.push((w, v));
        }
    }
    // A matched edge whose both endpoints gain extra leaves cannot occur: it
    // would give an augmenting path of length three.
    let mut gains = vec![0usize; n];
    for &(w, _) in &extra {
        gains[w] += 1;
    }
    for &(u, v) in &matching {
        let (c, l) = if gains[v] > gains[u] { (v, u) } else { (u, v) };
        debug_assert!(gains[l] == 0);
        centre_of_edge[c] = stars.len();
        stars.push(vec![c, l]);
    }
    for (w, v) in extra {
        stars[centre_of_edge[w]].push(v);
    }
    let emb = Embedding::new(stars);
    Ok((emb.shape(), emb))
}

/// Minimum vertex cover if its size is at most `k`, by bounded branching
/// on the lowest uncovered edge.
pub fn min_vertex_cover(g: &Graph, k: usize) -> Option<Vec<usize>> {
    let edges: Vec<_> = g.edges().collect();
    let mut best = None;
    let mut chosen = vec![false; g.vertex_count()];
    for budget in 0..=k {
        if branch(&edges, 0, budget, &mut chosen, &mut best) {
            break;
        }
    }
    best
}

fn branch(
    edges: &[(usize, usize)],
    from: usize,
    budget: usize,
    chosen: &mut [bool],
    best: &mut Option<Vec<usize>>,
) -> bool {
    let next = edges[from..]
        .iter()
        .position(|&(u, v)| !chosen[u] && !chosen[v])
        .map(|p| p + from);
    let Some(i) = next else {
        *best = Some((0..chosen.len()).filter(|&v| chosen[v]).collect());
        return true;
    };
    if budget == 0 {
        return false;
    }
    let (u, v) = edges[i];
    for w in [u, v] {
        chosen[w] = true;
        let found = branch(edges, i + 1, budget - 1, chosen, best);
        chosen[w] = false;
        if found {
            return true;
        }
    }
    false
}

pub fn is_vertex_cover(g: &Graph, cover: &[usize]) -> bool {
    let mut inc = vec![false; g.vertex_count()];
    for &v in cover {
        inc[v] = true;
    }
    g.edges().all(|(u, v)| inc[u] || inc[v])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::verify_embedding;
    use crate::graph::named::*;

    fn brute_matching(g: &Graph) -> usize {
        let edges: Vec<_> = g.edges().collect();
        let mut best = 0;
        for mask in 0u32..(1 << edges.len()) {
            let mut used = vec![false; g.vertex_count()];
            let mut ok = true;
            for (i, &(u, v)) in edges.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    if used[u] || used[v] {
                        ok = false;
                        break;
                    }
                    used[u] = true;
                    used[v] = true;
                }
            }
            if ok {
                best = best.max(mask.count_ones() as usize);
            }
        }
        best
    }

    #[test]
    fn matchings_of_small_graphs() {
        assert_eq!(max_matching(&complete(3)).len(), 1);
        assert_eq!(max_matching(&cycle(4)).len(), 2);
        let p = petersen();
        assert_eq!(brute_matching(&p), 5);
        assert_eq!(max_matching(&p).len(), 5);
    }

    #[test]
    fn odd_cycle_blossom() {
        // a triangle with pendant paths forces a blossom contraction
        let g = Graph::from_edges(7, &[(0, 1), (1, 2), (2, 0), (0, 3), (1, 4), (4, 5), (2, 6)]);
        assert_eq!(max_matching(&g).len(), brute_matching(&g));
    }

    #[test]
    fn edge_cover_examples() {
        let (f, e) = min_edge_cover(&path(2)).unwrap();
        assert_eq!(f.sizes(), &[2]);
        assert!(verify_embedding(&path(2), &f, &e).is_ok());
        let (f, _) = min_edge_cover(&path(4)).unwrap();
        assert_eq!(f.sizes(), &[2, 2]);
        let (f, _) = min_edge_cover(&star(3)).unwrap();
        assert_eq!(f.sizes(), &[4]);
        assert!(min_edge_cover(&Graph::new(2)).is_err());
    }

    #[test]
    fn vertex_cover_examples() {
        assert_eq!(min_vertex_cover(&complete(3), 2).unwrap().len(), 2);
        assert!(min_vertex_cover(&path(4), 1).is_none());
        assert_eq!(min_vertex_cover(&star(5), 1).unwrap(), vec![0]);
        assert_eq!(
            min_vertex_cover(&Graph::new(3), 0).unwrap(),
            Vec::<usize>::new()
        );
    }
}
