//! Star forests, their count vectors, embeddings and certificates.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

/// A star forest up to isomorphism: the multiset of its star sizes.
///
/// A star of size `d` has one centre and `d - 1` leaves, so every size is at
/// least 2. Sizes are stored non-increasing.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StarForest(Vec<usize>);

impl StarForest {
    /// Panics if some size is below 2.
    pub fn new(mut sizes: Vec<usize>) -> Self {
        assert!(
            sizes.iter().all(|&d| d >= 2),
            "star sizes must be at least 2"
        );
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        StarForest(sizes)
    }

    pub fn empty() -> Self {
        StarForest(Vec::new())
    }

    /// `k` stars of size 2.
    pub fn matching(k: usize) -> Self {
        StarForest(vec![2; k])
    }

    pub fn sizes(&self) -> &[usize] {
        &self.0
    }

    pub fn star_count(&self) -> usize {
        self.0.len()
    }

    pub fn total_vertices(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn to_vector(&self) -> StarCountVector {
        StarCountVector::from_sizes(&self.0)
    }
}

impl fmt::Display for StarForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "}}")
    }
}

/// Star-count vector: entry `d` is the number of stars of size `d`.
///
/// Stored densely from size 2 upward with trailing zeros trimmed, so equal
/// forests give equal vectors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StarCountVector(Vec<usize>);

impl StarCountVector {
    pub fn zero() -> Self {
        StarCountVector(Vec::new())
    }

    /// Builds from dense counts where `counts[i]` is the count of size `i + 2`.
    pub fn from_dense(mut counts: Vec<usize>) -> Self {
        while counts.last() == Some(&0) {
            counts.pop();
        }
        StarCountVector(counts)
    }

    pub fn from_sizes(sizes: &[usize]) -> Self {
        let mut counts = Vec::new();
        for &d in sizes {
            assert!(d >= 2);
            if counts.len() < d - 1 {
                counts.resize(d - 1, 0);
            }
            counts[d - 2] += 1;
        }
        StarCountVector::from_dense(counts)
    }

    /// Dense counts starting at size 2, trailing zeros trimmed.
    pub fn dense(&self) -> &[usize] {
        &self.0
    }

    pub fn count(&self, size: usize) -> usize {
        if size < 2 {
            return 0;
        }
        self.0.get(size - 2).copied().unwrap_or(0)
    }

    pub fn max_size(&self) -> usize {
        if self.0.is_empty() {
            0
        } else {
            self.0.len() + 1
        }
    }

    /// Σ d·c_d, the number of vertices the forest covers.
    pub fn total_vertices(&self) -> usize {
        self.0.iter().enumerate().map(|(i, c)| (i + 2) * c).sum()
    }

    pub fn to_forest(&self) -> StarForest {
        let mut sizes = Vec::new();
        for (i, &c) in self.0.iter().enumerate().rev() {
            sizes.extend(std::iter::repeat(i + 2).take(c));
        }
        StarForest(sizes)
    }

    /// Vectors one step below: one star removed, or one star shrunk by a leaf.
    pub fn lower_neighbors(&self) -> Vec<StarCountVector> {
        let mut out = Vec::new();
        for i in 0..self.0.len() {
            if self.0[i] == 0 {
                continue;
            }
            let mut v = self.0.clone();
            v[i] -= 1;
            out.push(StarCountVector::from_dense(v.clone()));
            if i > 0 {
                v[i - 1] += 1;
                out.push(StarCountVector::from_dense(v));
            }
        }
        out
    }
}

impl fmt::Display for StarCountVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c > 0 {
                if !first {
                    write!(f, ",")?;
                }
                first = false;
                write!(f, "{}:{}", i + 2, c)?;
            }
        }
        write!(f, "}}")
    }
}

/// All star-count vectors realisable in a graph with star sizes at most
/// `delta + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorFamily {
    pub delta: usize,
    pub vectors: BTreeSet<StarCountVector>,
}

impl VectorFamily {
    pub fn contains(&self, v: &StarCountVector) -> bool {
        self.vectors.contains(v)
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// True if every one-step reduction of a member is again a member.
    pub fn is_downward_closed(&self) -> bool {
        self.vectors
            .iter()
            .all(|v| v.lower_neighbors().iter().all(|w| self.vectors.contains(w)))
    }

    /// Largest common vector by covered vertices; ties go to the
    /// lexicographically greatest dense vector.
    pub fn best_common(&self, other: &VectorFamily) -> (usize, StarCountVector) {
        let mut best = (0, StarCountVector::zero());
        for v in self.vectors.intersection(&other.vectors) {
            let t = v.total_vertices();
            if t > best.0 || (t == best.0 && *v > best.1) {
                best = (t, v.clone());
            }
        }
        best
    }
}

/// Host-vertex images of a star forest: one list per star, centre first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Embedding {
    pub stars: Vec<Vec<usize>>,
}

impl Embedding {
    pub fn new(stars: Vec<Vec<usize>>) -> Self {
        Embedding { stars }
    }

    /// The star forest whose shape this embedding has.
    pub fn shape(&self) -> StarForest {
        StarForest::new(self.stars.iter().map(Vec::len).collect())
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.stars.iter().flatten().copied()
    }

    pub fn covered(&self) -> usize {
        self.stars.iter().map(Vec::len).sum()
    }

    /// Reorders stars to match the order of `forest.sizes()` (non-increasing).
    pub fn sorted_by_size(mut self) -> Self {
        self.stars
            .sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        self
    }
}

/// Checks that `emb` is an injective image of `forest` in `host`: every
/// centre–leaf pair is an edge and the star sizes match as a multiset.
///
/// The error string names the first violation found.
pub fn verify_embedding(host: &Graph, forest: &StarForest, emb: &Embedding) -> Result<(), String> {
    let n = host.vertex_count();
    let mut seen = HashSet::new();
    for (i, star) in emb.stars.iter().enumerate() {
        if star.len() < 2 {
            return Err(format!(
                "star {i} has {} vertices; stars need at least 2",
                star.len()
            ));
        }
        for &v in star {
            if v >= n {
                return Err(format!("star {i} uses vertex {v}, host has {n} vertices"));
            }
            if !seen.insert(v) {
                return Err(format!("vertex {v} is used twice (star {i})"));
            }
        }
        let c = star[0];
        for &l in &star[1..] {
            if !host.has_edge(c, l) {
                return Err(format!(
                    "star {i}: centre {c} and leaf {l} are not adjacent"
                ));
            }
        }
    }
    let mut want: BTreeMap<usize, isize> = BTreeMap::new();
    for &d in forest.sizes() {
        *want.entry(d).or_default() += 1;
    }
    for star in &emb.stars {
        *want.entry(star.len()).or_default() -= 1;
    }
    if let Some((d, diff)) = want.iter().find(|(_, &c)| c != 0) {
        return Err(format!(
            "shape mismatch: forest {forest} vs embedding {}; size {d} off by {diff}",
            emb.shape()
        ));
    }
    Ok(())
}

/// A solution certificate: the forest plus its images in both graphs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub star_sizes: Vec<usize>,
    pub emb1: Embedding,
    pub emb2: Embedding,
}

impl Certificate {
    pub fn new(forest: &StarForest, emb1: Embedding, emb2: Embedding) -> Self {
        Certificate {
            star_sizes: forest.sizes().to_vec(),
            emb1,
            emb2,
        }
    }

    /// Verifies both sides; the error says which side failed and why.
    pub fn verify(&self, g1: &Graph, g2: &Graph) -> Result<(), String> {
        if self.star_sizes.iter().any(|&d| d < 2) {
            return Err("star_sizes contains a size below 2".into());
        }
        let forest = StarForest::new(self.star_sizes.clone());
        verify_embedding(g1, &forest, &self.emb1).map_err(|e| format!("emb1: {e}"))?;
        verify_embedding(g2, &forest, &self.emb2).map_err(|e| format!("emb2: {e}"))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    #[test]
    fn verify_examples() {
        let p4 = path(4);
        let f = StarForest::new(vec![3]);
        assert!(verify_embedding(&p4, &f, &Embedding::new(vec![vec![1, 0, 2]])).is_ok());
        let err = verify_embedding(&p4, &f, &Embedding::new(vec![vec![0, 1, 2]])).unwrap_err();
        assert!(err.contains("not adjacent"), "{err}");
        let k3 = complete(3);
        let f = StarForest::new(vec![2, 2]);
        let err =
            verify_embedding(&k3, &f, &Embedding::new(vec![vec![0, 1], vec![1, 2]])).unwrap_err();
        assert!(err.contains("twice"), "{err}");
    }

    #[test]
    fn shape_mismatch_is_reported() {
        let f = StarForest::new(vec![3]);
        let err = verify_embedding(&path(4), &f, &Embedding::new(vec![vec![0, 1]])).unwrap_err();
        assert!(err.contains("shape mismatch"));
    }

    #[test]
    fn vector_roundtrip() {
        let f = StarForest::new(vec![2, 4, 2]);
        assert_eq!(f.sizes(), &[4, 2, 2]);
        let v = f.to_vector();
        assert_eq!(v.dense(), &[2, 0, 1]);
        assert_eq!(v.total_vertices(), 8);
        assert_eq!(v.to_forest(), f);
        assert_eq!(v.to_string(), "{2:2,4:1}");
        assert_eq!(
            StarCountVector::from_dense(vec![0, 0]),
            StarCountVector::zero()
        );
    }

    #[test]
    fn lower_neighbors_of_single_star() {
        let v = StarCountVector::from_sizes(&[3]);
        let lower = v.lower_neighbors();
        assert!(lower.contains(&StarCountVector::zero()));
        assert!(lower.contains(&StarCountVector::from_sizes(&[2])));
    }

    #[test]
    fn certificate_json() {
        let c = Certificate::new(
            &StarForest::new(vec![2]),
            Embedding::new(vec![vec![0, 1]]),
            Embedding::new(vec![vec![1, 0]]),
        );
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"{"star_sizes":[2],"emb1":[[0,1]],"emb2":[[1,0]]}"#);
        let back: Certificate = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        assert!(c.verify(&path(2), &path(2)).is_ok());
    }
}
