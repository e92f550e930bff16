use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A matching that saturates `d`, every edge joining `d` to `V ∖ d`.
///
/// For a minimum dominating set of a graph without isolated vertices such a
/// matching exists; it is found with Hopcroft–Karp on the bipartite graph of
/// edges crossing the cut. Edges are returned as `(x, y)` with `x ∈ d`.
pub fn dominating_matching(g: &Graph, d: &[usize]) -> Result<Vec<(usize, usize)>> {
    let n = g.vertex_count();
    let mut in_d = vec![false; n];
    for &v in d {
        if v >= n {
            return Err(Error::precondition(format!("vertex {v} out of range")));
        }
        in_d[v] = true;
    }
    let left: Vec<usize> = (0..n).filter(|&v| in_d[v]).collect();
    let adj: Vec<Vec<usize>> = left
        .iter()
        .map(|&x| {
            g.neighbors(x)
                .iter()
                .copied()
                .filter(|&y| !in_d[y])
                .collect()
        })
        .collect();
    let mate_l = hopcroft_karp(&adj, n);
    if mate_l.iter().any(|m| m.is_none()) {
        return Err(Error::precondition("D not a minimum dominating set"));
    }
    Ok(left
        .iter()
        .zip(mate_l)
        .map(|(&x, y)| (x, y.unwrap()))
        .collect())
}

/// Maximum bipartite matching; `adj[i]` lists right-side vertices in
/// `0..right` adjacent to left vertex `i`. Returns each left vertex's mate.
pub fn hopcroft_karp(adj: &[Vec<usize>], right: usize) -> Vec<Option<usize>> {
    const INF: usize = usize::MAX;
    let l = adj.len();
    let mut mate_l: Vec<Option<usize>> = vec![None; l];
    let mut mate_r: Vec<Option<usize>> = vec![None; right];
    let mut dist = vec![INF; l];
    loop {
        let mut queue = VecDeque::new();
        for i in 0..l {
            if mate_l[i].is_none() {
                dist[i] = 0;
                queue.push_back(i);
            } else {
                dist[i] = INF;
            }
        }
        let mut found = false;
        while let Some(i) = queue.pop_front() {
            for &y in &adj[i] {
                match mate_r[y] {
                    None => found = true,
                    Some(j) if dist[j] == INF => {
                        dist[j] = dist[i] + 1;
                        queue.push_back(j);
                    }
                    _ => {}
                }
            }
        }
        if !found {
            break;
        }
        for i in 0..l {
            if mate_l[i].is_none() {
                augment(i, adj, &mut mate_l, &mut mate_r, &mut dist);
            }
        }
    }
    mate_l
}

fn augment(
    i: usize,
    adj: &[Vec<usize>],
    mate_l: &mut [Option<usize>],
    mate_r: &mut [Option<usize>],
    dist: &mut [usize],
) -> bool {
    for &y in &adj[i] {
        let ok = match mate_r[y] {
            None => true,
            Some(j) => dist[j] == dist[i].wrapping_add(1) && augment(j, adj, mate_l, mate_r, dist),
        };
        if ok {
            mate_l[i] = Some(y);
            mate_r[y] = Some(i);
            return true;
        }
    }
    dist[i] = usize::MAX;
    false
}
