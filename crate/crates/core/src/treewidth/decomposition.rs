use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::graph::Graph;

/// A rooted tree decomposition: `bags[i]` is sorted, `parent[i]` is `None`
/// exactly at the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<usize>>,
    pub parent: Vec<Option<usize>>,
}

impl TreeDecomposition {
    pub fn new(mut bags: Vec<Vec<usize>>, parent: Vec<Option<usize>>) -> Self {
        assert_eq!(bags.len(), parent.len());
        for b in &mut bags {
            b.sort_unstable();
            b.dedup();
        }
        TreeDecomposition { bags, parent }
    }

    /// A path-shaped decomposition; bag `i + 1` hangs below bag `i`.
    pub fn path(bags: Vec<Vec<usize>>) -> Self {
        let parent = (0..bags.len()).map(|i| i.checked_sub(1)).collect();
        TreeDecomposition::new(bags, parent)
    }

    /// Largest bag size minus one; `-1` style empty decompositions report 0.
    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(Vec::len)
            .max()
            .unwrap_or(1)
            .saturating_sub(1)
    }

    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    pub fn root(&self) -> Option<usize> {
        self.parent.iter().position(Option::is_none)
    }

    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut ch = vec![Vec::new(); self.bags.len()];
        for (i, p) in self.parent.iter().enumerate() {
            if let Some(p) = p {
                ch[*p].push(i);
            }
        }
        ch
    }

    /// One line per node: `node <i> parent <p|-> : <bag>`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, (bag, p)) in self.bags.iter().zip(&self.parent).enumerate() {
            let p = p.map_or("-".to_string(), |p| p.to_string());
            let b: Vec<_> = bag.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "node {i} parent {p} : {}", b.join(" "));
        }
        out
    }
}

/// Decomposition from a min-fill elimination ordering (ties: fewer
/// neighbours, then lower index). Each eliminated vertex contributes the bag
/// of itself and its remaining neighbours, attached below the bag of the
/// first of those neighbours to be eliminated later. Component roots are
/// chained so the result is one tree; an empty graph gets one empty bag.
pub fn heuristic_decomposition(g: &Graph) -> TreeDecomposition {
    let n = g.vertex_count();
    if n == 0 {
        return TreeDecomposition::new(vec![Vec::new()], vec![None]);
    }
    let mut adj: Vec<BTreeSet<usize>> = (0..n)
        .map(|v| g.neighbors(v).iter().copied().collect())
        .collect();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    let mut bags = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (fill_in(&adj, v), adj[v].len(), v))
            .unwrap();
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        for &a in &nb {
            adj[a].remove(&v);
        }
        adj[v].clear();
        alive[v] = false;
        let mut bag = nb;
        bag.push(v);
        order.push(v);
        bags.push(bag);
    }
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut parent: Vec<Option<usize>> = vec![None; n];
    for (i, bag) in bags.iter().enumerate() {
        parent[i] = bag
            .iter()
            .filter(|&&w| w != order[i])
            .map(|&w| pos[w])
            .min();
    }
    // chain component roots under the last one
    let roots: Vec<usize> = (0..n).filter(|&i| parent[i].is_none()).collect();
    let top = *roots.last().unwrap();
    for &r in &roots[..roots.len() - 1] {
        parent[r] = Some(top);
    }
    TreeDecomposition::new(bags, parent)
}

fn fill_in(adj: &[BTreeSet<usize>], v: usize) -> usize {
    let nb: Vec<usize> = adj[v].iter().copied().collect();
    let mut missing = 0;
    for (i, &a) in nb.iter().enumerate() {
        for &b in &nb[i + 1..] {
            if !adj[a].contains(&b) {
                missing += 1;
            }
        }
    }
    missing
}

/// Checks that `td` is a rooted tree whose bags cover every vertex and
/// edge of `g` and whose per-vertex bag sets are connected. The error names
/// the first violated property.
pub fn verify_decomposition(g: &Graph, td: &TreeDecomposition) -> Result<(), String> {
    let m = td.bags.len();
    if m == 0 {
        return Err("decomposition has no nodes".into());
    }
    let roots = td.parent.iter().filter(|p| p.is_none()).count();
    if roots != 1 {
        return Err(format!("expected one root, found {roots}"));
    }
    // every node must reach the root without revisiting
    for start in 0..m {
        let mut cur = start;
        let mut steps = 0;
        while let Some(p) = td.parent[cur] {
            if p >= m {
                return Err(format!("node {cur} has out-of-range parent {p}"));
            }
            cur = p;
            steps += 1;
            if steps > m {
                return Err(format!("parent links from node {start} form a cycle"));
            }
        }
    }
    let n = g.vertex_count();
    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            if v >= n {
                return Err(format!("bag {i} contains unknown vertex {v}"));
            }
            holders[v].push(i);
        }
    }
    if let Some(v) = (0..n).find(|&v| holders[v].is_empty()) {
        return Err(format!("vertex {v} is in no bag"));
    }
    for (u, v) in g.edges() {
        let ok = holders[u]
            .iter()
            .any(|&i| td.bags[i].binary_search(&v).is_ok());
        if !ok {
            return Err(format!("edge ({u}, {v}) is in no bag"));
        }
    }
    // a node set of a tree is connected iff exactly one member has its
    // parent outside the set
    for v in 0..n {
        let tops = holders[v]
            .iter()
            .filter(|&&i| match td.parent[i] {
                None => true,
                Some(p) => td.bags[p].binary_search(&v).is_err(),
            })
            .count();
        if tops != 1 {
            return Err(format!("bags containing vertex {v} are not connected"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    #[test]
    fn widths() {
        let t = heuristic_decomposition(&path(6));
        assert!(verify_decomposition(&path(6), &t).is_ok());
        assert_eq!(t.width(), 1);
        assert_eq!(heuristic_decomposition(&complete(4)).width(), 3);
        let c5 = heuristic_decomposition(&cycle(5));
        assert_eq!(c5.width(), 2);
        assert!(verify_decomposition(&cycle(5), &c5).is_ok());
        let e = heuristic_decomposition(&Graph::new(0));
        assert_eq!(e.bags, vec![Vec::<usize>::new()]);
    }

    #[test]
    fn disconnected_graphs_give_one_tree() {
        let g = Graph::from_edges(5, &[(0, 1), (2, 3)]);
        let t = heuristic_decomposition(&g);
        assert!(verify_decomposition(&g, &t).is_ok());
    }

    #[test]
    fn violations() {
        let p3 = path(3);
        let good = TreeDecomposition::path(vec![vec![0, 1], vec![1, 2]]);
        assert!(verify_decomposition(&p3, &good).is_ok());
        let missing = TreeDecomposition::path(vec![vec![0, 1], vec![2]]);
        assert!(verify_decomposition(&p3, &missing)
            .unwrap_err()
            .contains("edge"));
        let split = TreeDecomposition::path(vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert!(verify_decomposition(&p3, &split)
            .unwrap_err()
            .contains("not connected"));
    }
}
