//! Simple undirected graphs, the edge-list text format, and BFS layering.

use std::collections::VecDeque;
use std::fmt;

use crate::error::ParseError;

/// Simple undirected graph over the dense vertex set `0..n`.
///
/// Neighbour lists are kept sorted and duplicate-free, and the adjacency is
/// symmetric. There are no self-loops.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Builds a graph from an edge list. Duplicate edges collapse.
    ///
    /// Panics on self-loops or out-of-range endpoints; use [`parse_graph`]
    /// for untrusted input.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Adds `{u, v}`; returns false if the edge was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u != v, "self-loop on vertex {u}");
        assert!(
            u < self.adj.len() && v < self.adj.len(),
            "edge ({u}, {v}) out of range for {} vertices",
            self.adj.len()
        );
        match self.adj[u].binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                self.edge_count += 1;
                true
            }
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&v| self.adj[v].is_empty())
            .collect()
    }

    /// Subgraph induced by `keep` (in the given order); vertex `i` of the
    /// result is `keep[i]` of `self`.
    pub fn induced_subgraph(&self, keep: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::new(keep.len());
        for (i, &v) in keep.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = index[w];
                if j != usize::MAX && i < j {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Disjoint union; vertices of `other` are shifted by `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.vertex_count();
        let mut g = Graph::new(off + other.vertex_count());
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(u + off, v + off);
        }
        g
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Serializes to the edge-list format: `n m` followed by sorted edges.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.vertex_count(), self.edge_count());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Graph({}, {:?})",
            self.vertex_count(),
            self.edges().collect::<Vec<_>>()
        )
    }
}

/// BFS level of every vertex. Each connected component is rooted at its
/// lowest-index vertex, which gets level 0.
pub fn bfs_levels(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut level = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        if level[root] != usize::MAX {
            continue;
        }
        level[root] = 0;
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if level[w] == usize::MAX {
                    level[w] = level[v] + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    level
}

/// Parses the `n m` / `u v` edge-list format.
///
/// Blank lines are skipped. The edge count in the header must match the
/// number of edge lines; repeated edges are accepted and collapse to one.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    parse_graph_lines(&mut lines)
}

pub(crate) fn parse_graph_lines<'a, I>(lines: &mut I) -> Result<Graph, ParseError>
where
    I: Iterator<Item = (usize, &'a str)>,
{
    let (hline, header) = lines
        .next()
        .ok_or(ParseError::new(0, "missing graph header"))?;
    let (n, m) = parse_pair(hline, header, "header `n m`")?;
    let mut g = Graph::new(n);
    for i in 0..m {
        let (lno, line) = lines
            .next()
            .ok_or_else(|| ParseError::new(hline, format!("expected {m} edge lines, found {i}")))?;
        let (u, v) = parse_pair(lno, line, "edge `u v`")?;
        if u >= n || v >= n {
            return Err(ParseError::new(
                lno,
                format!("vertex index out of range in edge ({u}, {v}) for {n} vertices"),
            ));
        }
        if u == v {
            return Err(ParseError::new(lno, format!("self-loop on vertex {u}")));
        }
        g.add_edge(u, v);
    }
    Ok(g)
}

fn parse_pair(lno: usize, line: &str, what: &str) -> Result<(usize, usize), ParseError> {
    let mut it = line.split_whitespace();
    let mut next = || -> Result<usize, ParseError> {
        it.next()
            .ok_or_else(|| ParseError::new(lno, format!("malformed {what}: `{line}`")))?
            .parse::<usize>()
            .map_err(|_| ParseError::new(lno, format!("malformed {what}: `{line}`")))
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(ParseError::new(
            lno,
            format!("trailing tokens in {what}: `{line}`"),
        ));
    }
    Ok((a, b))
}

/// Small named graphs used throughout tests and examples.
pub mod named {
    use super::Graph;

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn cycle(n: usize) -> Graph {
        let mut g = path(n);
        if n >= 3 {
            g.add_edge(n - 1, 0);
        }
        g
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// `K_{1,leaves}` with the hub at vertex 0.
    pub fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Graph::from_edges(leaves + 1, &edges)
    }

    pub fn petersen() -> Graph {
        let mut g = Graph::new(10);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5);
            g.add_edge(i, i + 5);
            g.add_edge(5 + i, 5 + (i + 2) % 5);
        }
        g
    }

    pub fn grid(rows: usize, cols: usize) -> Graph {
        let mut g = Graph::new(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let v = r * cols + c;
                if c + 1 < cols {
                    g.add_edge(v, v + 1);
                }
                if r + 1 < rows {
                    g.add_edge(v, v + cols);
                }
            }
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    #[test]
    fn parses_path() {
        let g = parse_graph("4 3\n0 1\n1 2\n2 3").unwrap();
        assert_eq!(g, path(4));
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn parses_single_vertex() {
        let g = parse_graph("1 0").unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn parses_triangle() {
        let g = parse_graph("3 3\n0 1\n1 2\n0 2\n").unwrap();
        assert_eq!(g, complete(3));
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = parse_graph("3 3\n0 1\n1 0\n1 2").unwrap();
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn parse_errors_name_the_line() {
        let e = parse_graph("3 x").unwrap_err();
        assert_eq!(e.line, 1);
        let e = parse_graph("3 2\n0 1\n1 3").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.message.contains("out of range"));
        let e = parse_graph("3 1\n\n2 2").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.message.contains("self-loop"));
        assert!(parse_graph("3 2\n0 1").is_err());
        assert!(parse_graph("").is_err());
    }

    #[test]
    fn levels() {
        assert_eq!(bfs_levels(&path(4)), vec![0, 1, 2, 3]);
        assert_eq!(bfs_levels(&complete(3)), vec![0, 1, 1]);
        let two = Graph::from_edges(4, &[(0, 1), (2, 3)]);
        assert_eq!(bfs_levels(&two), vec![0, 1, 0, 1]);
    }

    #[test]
    fn petersen_shape() {
        let p = petersen();
        assert_eq!(p.edge_count(), 15);
        assert!((0..10).all(|v| p.degree(v) == 3));
    }
}

/// Seeded random graph families for tests and benchmarks.
pub mod random {
    use rand::seq::SliceRandom;
    use rand::Rng;

    use super::Graph;

    /// Erdős–Rényi `G(n, p)`.
    pub fn gnp<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Uniform random labelled tree via random parent attachment.
    pub fn tree<R: Rng>(rng: &mut R, n: usize) -> Graph {
        let mut g = Graph::new(n);
        for v in 1..n {
            let p = rng.gen_range(0..v);
            g.add_edge(p, v);
        }
        g
    }

    /// Disjoint union of random connected pieces with at most `k` vertices
    /// each, totalling `n` vertices.
    pub fn small_components<R: Rng>(rng: &mut R, n: usize, k: usize, p: f64) -> Graph {
        let mut g = Graph::new(n);
        let mut start = 0;
        while start < n {
            let size = rng.gen_range(1..=k.min(n - start));
            let t = tree(rng, size);
            for (u, v) in t.edges() {
                g.add_edge(start + u, start + v);
            }
            for u in 0..size {
                for v in u + 1..size {
                    if rng.gen_bool(p) {
                        g.add_edge(start + u, start + v);
                    }
                }
            }
            start += size;
        }
        g
    }

    /// Random graph whose minimum vertex cover has at most `k` vertices:
    /// edges only touch the first `k` vertices.
    pub fn small_cover<R: Rng>(rng: &mut R, n: usize, k: usize, p: f64) -> Graph {
        let mut g = Graph::new(n);
        let k = k.min(n);
        for u in 0..k {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Random subgraph of a `rows × cols` grid with maximum degree at most
    /// `max_deg`; always planar.
    pub fn planar_grid<R: Rng>(
        rng: &mut R,
        rows: usize,
        cols: usize,
        max_deg: usize,
        p: f64,
    ) -> Graph {
        let full = super::named::grid(rows, cols);
        let mut edges: Vec<_> = full.edges().collect();
        edges.shuffle(rng);
        let mut g = Graph::new(full.vertex_count());
        for (u, v) in edges {
            if rng.gen_bool(p) && g.degree(u) < max_deg && g.degree(v) < max_deg {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Random outerplanar graph: a cycle-ordered vertex set with
    /// non-crossing chords, degree capped at `max_deg`.
    pub fn outerplanar<R: Rng>(rng: &mut R, n: usize, max_deg: usize, p: f64) -> Graph {
        let mut g = Graph::new(n);
        let mut chords: Vec<(usize, usize)> = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let boundary = j == i + 1 || (i == 0 && j == n - 1 && n > 2);
                let q = if boundary { (p + 1.0) / 2.0 } else { p / 2.0 };
                if !rng.gen_bool(q) || g.degree(i) >= max_deg || g.degree(j) >= max_deg {
                    continue;
                }
                // (i, j) crosses (a, b) iff exactly one of a, b lies strictly inside
                let crosses = chords.iter().any(|&(a, b)| {
                    (i < a && a < j) != (i < b && b < j) && a != i && a != j && b != i && b != j
                });
                if !crosses {
                    chords.push((i, j));
                    g.add_edge(i, j);
                }
            }
        }
        g
    }
}
