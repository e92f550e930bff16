//! Instance generators from hardness constructions, with the constructive
//! embeddings of their yes direction.
//!
//! Vertex names in the label tables use underscores between indices, all
//! 1-based as in the constructions: `r_2`, `t_1_2_3`, `alpha_1_0`.

mod pw4;
mod td5;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::forest::{Certificate, Embedding};
use crate::graph::Graph;
use crate::instance::Instance;

pub use pw4::{gen_kway_pw4, pw4_count, pw4_path_decomposition};
pub use td5::{gen_kway_td5, td5_count};

/// Items, bin count and capacity of a k-way partition problem. Items are
/// kept in non-increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KwayInstance {
    pub items: Vec<usize>,
    pub k: usize,
    pub capacity: usize,
}

impl KwayInstance {
    pub fn new(mut items: Vec<usize>, k: usize, capacity: usize) -> Result<Self> {
        if items.iter().any(|&a| a == 0) {
            return Err(Error::precondition(
                "k-way partition items must be positive",
            ));
        }
        if k == 0 {
            return Err(Error::precondition(
                "k-way partition needs at least one bin",
            ));
        }
        items.sort_unstable_by(|a, b| b.cmp(a));
        let kw = KwayInstance { items, k, capacity };
        if !kw.is_balanced() {
            log::warn!(
                "k * C = {} differs from the item total {}; no partition exists",
                k * capacity,
                kw.total()
            );
        }
        Ok(kw)
    }

    pub fn total(&self) -> usize {
        self.items.iter().sum()
    }

    pub fn is_balanced(&self) -> bool {
        self.k * self.capacity == self.total()
    }

    fn require_balanced(&self) -> Result<()> {
        if !self.is_balanced() {
            return Err(Error::precondition(format!(
                "k * C = {} * {} does not equal the item total M = {}",
                self.k,
                self.capacity,
                self.total()
            )));
        }
        Ok(())
    }
}

/// Bins of 0-based item indices; bin `j` is the `(j+1)`-th bin.
pub type Partition = Vec<Vec<usize>>;

/// Scales items and capacity by `2k + 10`, making every item even and at
/// least `2k + 10`.
pub fn rescale(kw: &KwayInstance) -> KwayInstance {
    let f = 2 * kw.k + 10;
    KwayInstance {
        items: kw.items.iter().map(|a| a * f).collect(),
        k: kw.k,
        capacity: kw.capacity * f,
    }
}

pub const KWAY_BRUTE_LIMIT: usize = 20;

/// A partition into `k` bins of sum `C` each, by backtracking with
/// equal-load bins treated as interchangeable.
pub fn kway_brute(kw: &KwayInstance) -> Result<Option<Partition>> {
    if kw.items.len() > KWAY_BRUTE_LIMIT {
        return Err(Error::resource(format!(
            "k-way brute force refuses {} items (limit {KWAY_BRUTE_LIMIT})",
            kw.items.len()
        )));
    }
    if !kw.is_balanced() {
        return Ok(None);
    }
    let mut loads = vec![0; kw.k];
    let mut bins = vec![Vec::new(); kw.k];
    Ok(place_item(kw, 0, &mut loads, &mut bins).then_some(bins))
}

fn place_item(kw: &KwayInstance, i: usize, loads: &mut [usize], bins: &mut Partition) -> bool {
    if i == kw.items.len() {
        return loads.iter().all(|&l| l == kw.capacity);
    }
    let a = kw.items[i];
    for j in 0..kw.k {
        if loads[j] + a > kw.capacity || loads[..j].contains(&loads[j]) {
            continue;
        }
        loads[j] += a;
        bins[j].push(i);
        if place_item(kw, i + 1, loads, bins) {
            return true;
        }
        bins[j].pop();
        loads[j] -= a;
    }
    false
}

/// Checks that `part` solves `kw`.
pub fn check_partition(kw: &KwayInstance, part: &Partition) -> Result<()> {
    if part.len() != kw.k {
        return Err(Error::precondition(format!(
            "partition has {} bins, expected {}",
            part.len(),
            kw.k
        )));
    }
    let mut seen = vec![false; kw.items.len()];
    for (j, bin) in part.iter().enumerate() {
        let mut sum = 0;
        for &i in bin {
            if i >= kw.items.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::precondition(format!(
                    "item {i} in bin {} is out of range or repeated",
                    j + 1
                )));
            }
            sum += kw.items[i];
        }
        if sum != kw.capacity {
            return Err(Error::precondition(format!(
                "bin {} sums to {sum}, expected {}",
                j + 1,
                kw.capacity
            )));
        }
    }
    if let Some(i) = seen.iter().position(|s| !s) {
        return Err(Error::precondition(format!("item {i} is in no bin")));
    }
    Ok(())
}

/// Offsets that decide which numbered stars of the second graph land in
/// which tree, all 0-based counts. `q`, `f` are indexed `[i][j]` and are
/// zero at `j = b[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbedOffsets {
    /// Bin of each item.
    pub b: Vec<usize>,
    /// Total of earlier items in the same bin.
    pub p: Vec<usize>,
    /// Total of earlier items outside bin `j`.
    pub q: Vec<Vec<usize>>,
    /// Total padding `a - a_i'` of earlier items.
    pub e: Vec<usize>,
    /// Padding slots used before item `i`, bin `j`.
    pub f: Vec<Vec<usize>>,
}

/// Rank of bin `j` among the bins other than `b`, starting at 0.
pub(crate) fn other_rank(j: usize, b: usize) -> usize {
    if j < b {
        j
    } else {
        j - 1
    }
}

pub fn embed_offsets(kw: &KwayInstance, part: &Partition) -> Result<EmbedOffsets> {
    check_partition(kw, part)?;
    let n = kw.items.len();
    let a_max = kw.items.iter().copied().max().unwrap_or(0);
    let mut b = vec![0; n];
    for (j, bin) in part.iter().enumerate() {
        for &i in bin {
            b[i] = j;
        }
    }
    let mut off = EmbedOffsets {
        b: b.clone(),
        p: vec![0; n],
        q: vec![vec![0; kw.k]; n],
        e: vec![0; n],
        f: vec![vec![0; kw.k]; n],
    };
    for i in 0..n {
        off.p[i] = (0..i)
            .filter(|&i2| b[i2] == b[i])
            .map(|i2| kw.items[i2])
            .sum();
        off.e[i] = (0..i).map(|i2| a_max - kw.items[i2]).sum();
        for j in (0..kw.k).filter(|&j| j != b[i]) {
            off.q[i][j] = (0..i).filter(|&i2| b[i2] != j).map(|i2| kw.items[i2]).sum();
            off.f[i][j] = (kw.k - 1) * off.e[i] + (a_max - kw.items[i]) * other_rank(j, b[i]);
        }
    }
    Ok(off)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Construction {
    Domset { k: usize },
    P3,
    KwayTd5(KwayInstance),
    KwayPw4(KwayInstance),
}

/// A generated instance with named vertices on both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledInstance {
    pub instance: Instance,
    pub labels1: BTreeMap<String, usize>,
    pub labels2: BTreeMap<String, usize>,
    pub params: BTreeMap<String, usize>,
    pub construction: Construction,
}

#[derive(Serialize)]
struct Sidecar<'a> {
    construction: &'a Construction,
    params: &'a BTreeMap<String, usize>,
    g1: &'a BTreeMap<String, usize>,
    g2: &'a BTreeMap<String, usize>,
}

impl LabeledInstance {
    pub fn sidecar_json(&self) -> String {
        serde_json::to_string_pretty(&Sidecar {
            construction: &self.construction,
            params: &self.params,
            g1: &self.labels1,
            g2: &self.labels2,
        })
        .expect("label tables serialise")
    }

    pub fn label1(&self, name: &str) -> usize {
        self.labels1[name]
    }

    pub fn label2(&self, name: &str) -> usize {
        self.labels2[name]
    }
}

/// Incrementally builds a graph whose vertices carry names.
#[derive(Default)]
pub(crate) struct Builder {
    labels: BTreeMap<String, usize>,
    edges: Vec<(usize, usize)>,
}

impl Builder {
    pub fn vertex(&mut self, name: String) -> usize {
        let id = self.labels.len();
        let old = self.labels.insert(name, id);
        debug_assert!(old.is_none(), "duplicate vertex name");
        id
    }

    pub fn edge(&mut self, u: usize, v: usize) {
        self.edges.push((u, v));
    }

    /// A star with `leaves` leaves named `{prefix}_0` (centre) onwards.
    pub fn star(&mut self, prefix: &str, leaves: usize) {
        let c = self.vertex(format!("{prefix}_0"));
        for x in 1..=leaves {
            let l = self.vertex(format!("{prefix}_{x}"));
            self.edge(c, l);
        }
    }

    pub fn finish(self) -> (Graph, BTreeMap<String, usize>) {
        (
            Graph::from_edges(self.labels.len(), &self.edges),
            self.labels,
        )
    }
}

/// Every vertex of `g2`'s star named `{prefix}_x`, centre first.
pub(crate) fn star_of(labels: &BTreeMap<String, usize>, prefix: &str, leaves: usize) -> Vec<usize> {
    (0..=leaves)
        .map(|x| labels[&format!("{prefix}_{x}")])
        .collect()
}

/// `G1 = g`, `G2` is `k` stars with `n - 1` leaves each, `h = n`: yes iff
/// `g` has a dominating set of size at most `k`.
pub fn gen_domset(g: &Graph, k: usize) -> Result<LabeledInstance> {
    if k == 0 {
        return Err(Error::precondition(
            "dominating set size k must be at least 1",
        ));
    }
    if let Some(v) = g.isolated_vertices().first() {
        return Err(Error::precondition(format!("vertex {v} is isolated")));
    }
    let n = g.vertex_count();
    let mut b = Builder::default();
    for i in 1..=k {
        let c = b.vertex(format!("c_{i}"));
        for j in 1..n {
            let l = b.vertex(format!("v_{i}_{j}"));
            b.edge(c, l);
        }
    }
    let (g2, labels2) = b.finish();
    Ok(LabeledInstance {
        instance: Instance::new(g.clone(), g2, n),
        labels1: identity_labels(n),
        labels2,
        params: BTreeMap::from([("k".into(), k), ("n".into(), n)]),
        construction: Construction::Domset { k },
    })
}

/// `G1 = g`, `G2` is `n/3` disjoint paths on 3 vertices, `h = n`.
pub fn gen_p3(g: &Graph) -> Result<LabeledInstance> {
    let n = g.vertex_count();
    if n % 3 != 0 {
        return Err(Error::precondition(format!(
            "vertex count {n} is not divisible by 3"
        )));
    }
    let mut b = Builder::default();
    for i in 1..=n / 3 {
        b.star(&format!("p_{i}"), 2);
    }
    let (g2, labels2) = b.finish();
    Ok(LabeledInstance {
        instance: Instance::new(g.clone(), g2, n),
        labels1: identity_labels(n),
        labels2,
        params: BTreeMap::from([("n".into(), n)]),
        construction: Construction::P3,
    })
}

fn identity_labels(n: usize) -> BTreeMap<String, usize> {
    (0..n).map(|v| (format!("x_{v}"), v)).collect()
}

/// Embeddings of the spanning common star forest of a k-way instance built
/// from a solving partition; stars are listed in matching order.
pub fn embed_from_partition(
    inst: &LabeledInstance,
    part: &Partition,
) -> Result<(Embedding, Embedding)> {
    match &inst.construction {
        Construction::KwayTd5(kw) => td5::embed(inst, kw, part),
        Construction::KwayPw4(kw) => pw4::embed(inst, kw, part),
        _ => Err(Error::precondition(
            "partition embeddings exist only for k-way constructions",
        )),
    }
}

/// Certificate form of [`embed_from_partition`].
pub fn certificate_from_partition(inst: &LabeledInstance, part: &Partition) -> Result<Certificate> {
    let (e1, e2) = embed_from_partition(inst, part)?;
    let mut sizes: Vec<usize> = e1.stars.iter().map(Vec::len).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    Ok(Certificate {
        star_sizes: sizes,
        emb1: e1,
        emb2: e2,
    })
}

/// Whether every component of `g` can be eliminated within `depth` levels:
/// remove one vertex, recurse on the remaining components. Candidates are
/// tried by decreasing degree, so tree-like inputs with an obvious root
/// finish quickly; the search is exhaustive when they fail.
pub fn treedepth_at_most(g: &Graph, depth: usize) -> bool {
    g.components()
        .iter()
        .all(|c| component_td(&g.induced_subgraph(c), depth))
}

fn component_td(g: &Graph, depth: usize) -> bool {
    let n = g.vertex_count();
    if n <= 1 {
        return depth >= n;
    }
    // a path on more than 2^depth - 1 vertices rules the depth out
    if depth <= 1 || (depth < 60 && longest_shortest_path(g) + 1 > (1usize << depth) - 1) {
        return false;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    order.into_iter().any(|v| {
        let rest: Vec<usize> = (0..n).filter(|&w| w != v).collect();
        treedepth_at_most(&g.induced_subgraph(&rest), depth - 1)
    })
}

/// Edges on a shortest path between two far-apart vertices of a connected
/// graph (double-sweep BFS, a lower bound on its longest path).
fn longest_shortest_path(g: &Graph) -> usize {
    let bfs = |src: usize| {
        let mut dist = vec![usize::MAX; g.vertex_count()];
        let mut queue = std::collections::VecDeque::from([src]);
        dist[src] = 0;
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        let far = (0..dist.len()).max_by_key(|&v| dist[v]).unwrap_or(0);
        (far, dist[far])
    };
    let (far, _) = bfs(0);
    bfs(far).1
}
