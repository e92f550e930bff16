//! Brute-force ground truth for small graphs.
//!
//! Everything here is plain backtracking over star packings, kept simple on
//! purpose so the faster solvers can be checked against it.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::forest::{Embedding, StarCountVector, VectorFamily};
use crate::graph::Graph;

pub const DEFAULT_LIMIT: usize = 12;

fn check_limit(g: &Graph, limit: usize) -> Result<()> {
    if g.vertex_count() > limit {
        return Err(Error::resource(format!(
            "brute-force oracle refuses {} vertices (limit {limit})",
            g.vertex_count()
        )));
    }
    if g.vertex_count() > 63 {
        return Err(Error::resource(
            "brute-force oracle supports at most 63 vertices",
        ));
    }
    Ok(())
}

/// Every star-count vector realisable by vertex-disjoint stars of sizes in
/// `[2, delta + 1]` in `g`.
///
/// Vertices are scanned in index order; each may become the centre of a star
/// on some subset of its still-free neighbours or be passed over (it can
/// still be a leaf of a later centre).
pub fn enum_star_vectors_brute(g: &Graph, delta: usize, limit: usize) -> Result<VectorFamily> {
    check_limit(g, limit)?;
    let mut found = BTreeSet::new();
    let mut visited = HashSet::new();
    let mut counts = vec![0usize; delta];
    scan(g, delta, 0, 0, &mut counts, &mut visited, &mut found);
    Ok(VectorFamily {
        delta,
        vectors: found,
    })
}

fn scan(
    g: &Graph,
    delta: usize,
    v: usize,
    used: u64,
    counts: &mut Vec<usize>,
    visited: &mut HashSet<(usize, u64, Vec<usize>)>,
    found: &mut BTreeSet<StarCountVector>,
) {
    if !visited.insert((v, used, counts.clone())) {
        return;
    }
    found.insert(StarCountVector::from_dense(counts.clone()));
    if v == g.vertex_count() {
        return;
    }
    scan(g, delta, v + 1, used, counts, visited, found);
    if used >> v & 1 == 1 {
        return;
    }
    let free: Vec<usize> = g
        .neighbors(v)
        .iter()
        .copied()
        .filter(|&w| used >> w & 1 == 0)
        .collect();
    for mask in 1u64..(1 << free.len()) {
        let leaves = mask.count_ones() as usize;
        if leaves > delta {
            continue;
        }
        let mut next = used | 1 << v;
        for (i, &w) in free.iter().enumerate() {
            if mask >> i & 1 == 1 {
                next |= 1 << w;
            }
        }
        counts[leaves - 1] += 1;
        scan(g, delta, v + 1, next, counts, visited, found);
        counts[leaves - 1] -= 1;
    }
}

/// A star packing of `g` with exactly the star sizes of `target`.
pub fn find_packing(g: &Graph, target: &StarCountVector) -> Option<Embedding> {
    let sizes = target.to_forest().sizes().to_vec();
    let mut used = vec![false; g.vertex_count()];
    let mut stars = Vec::new();
    place(g, &sizes, &mut used, &mut stars).then(|| Embedding::new(stars))
}

fn place(g: &Graph, sizes: &[usize], used: &mut [bool], stars: &mut Vec<Vec<usize>>) -> bool {
    let Some((&d, rest)) = sizes.split_first() else {
        return true;
    };
    for c in 0..g.vertex_count() {
        if used[c] {
            continue;
        }
        let free: Vec<usize> = g
            .neighbors(c)
            .iter()
            .copied()
            .filter(|&w| !used[w])
            .collect();
        if free.len() < d - 1 {
            continue;
        }
        used[c] = true;
        let mut pick = Vec::new();
        if choose(g, &free, 0, d - 1, &mut pick, c, rest, used, stars) {
            return true;
        }
        used[c] = false;
    }
    false
}

#[allow(clippy::too_many_arguments)]
fn choose(
    g: &Graph,
    free: &[usize],
    from: usize,
    need: usize,
    pick: &mut Vec<usize>,
    centre: usize,
    rest: &[usize],
    used: &mut [bool],
    stars: &mut Vec<Vec<usize>>,
) -> bool {
    if need == 0 {
        let mut star = vec![centre];
        star.extend_from_slice(pick);
        stars.push(star);
        if place(g, rest, used, stars) {
            return true;
        }
        stars.pop();
        return false;
    }
    for i in from..free.len() {
        if free.len() - i < need {
            break;
        }
        let w = free[i];
        used[w] = true;
        pick.push(w);
        if choose(g, free, i + 1, need - 1, pick, centre, rest, used, stars) {
            return true;
        }
        pick.pop();
        used[w] = false;
    }
    false
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommonSolution {
    pub size: usize,
    pub vector: StarCountVector,
    pub emb1: Embedding,
    pub emb2: Embedding,
}

/// Largest star forest common to both graphs, by intersecting their full
/// vector families.
pub fn opt_common_brute(g1: &Graph, g2: &Graph, limit: usize) -> Result<CommonSolution> {
    check_limit(g1, limit)?;
    check_limit(g2, limit)?;
    let delta = g1.max_degree().min(g2.max_degree());
    let f1 = enum_star_vectors_brute(g1, delta, limit)?;
    let f2 = enum_star_vectors_brute(g2, delta, limit)?;
    let (size, vector) = f1.best_common(&f2);
    let emb1 = find_packing(g1, &vector).expect("member of family has a packing");
    let emb2 = find_packing(g2, &vector).expect("member of family has a packing");
    Ok(CommonSolution {
        size,
        vector,
        emb1,
        emb2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::verify_embedding;
    use crate::graph::named::*;

    fn fam(vs: &[&[usize]]) -> BTreeSet<StarCountVector> {
        vs.iter().map(|s| StarCountVector::from_sizes(s)).collect()
    }

    #[test]
    fn families() {
        let f = enum_star_vectors_brute(&path(2), 3, 12).unwrap();
        assert_eq!(f.vectors, fam(&[&[], &[2]]));
        let f = enum_star_vectors_brute(&path(4), 3, 12).unwrap();
        assert_eq!(f.vectors, fam(&[&[], &[2], &[2, 2], &[3]]));
        let f = enum_star_vectors_brute(&star(3), 3, 12).unwrap();
        assert_eq!(f.vectors, fam(&[&[], &[2], &[3], &[4]]));
        assert!(f.is_downward_closed());
    }

    #[test]
    fn refuses_large_graphs() {
        assert!(matches!(
            enum_star_vectors_brute(&path(13), 2, DEFAULT_LIMIT),
            Err(Error::Resource(_))
        ));
        assert!(enum_star_vectors_brute(&path(13), 2, 13).is_ok());
    }

    #[test]
    fn common_optima() {
        let s = opt_common_brute(&complete(3), &complete(3), 12).unwrap();
        assert_eq!((s.size, s.vector.to_string()), (3, "{3:1}".to_string()));
        let s = opt_common_brute(&path(4), &star(3), 12).unwrap();
        assert_eq!(s.size, 3);
        let f = s.vector.to_forest();
        assert!(verify_embedding(&path(4), &f, &s.emb1).is_ok());
        assert!(verify_embedding(&star(3), &f, &s.emb2).is_ok());
        let s = opt_common_brute(&path(2), &Graph::new(1), 12).unwrap();
        assert_eq!(s.size, 0);
        assert_eq!(s.vector, StarCountVector::zero());
    }
}
