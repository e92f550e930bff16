use std::collections::{BTreeSet, HashMap};

use super::decomposition::heuristic_decomposition;
use super::nice::{to_nice, NiceTreeDecomposition, NodeKind};
use crate::combinatorics::{sumset, IntVectorSet};
use crate::forest::{StarCountVector, VectorFamily};
use crate::graph::Graph;

/// Role of a bag vertex in a partial star forest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    /// In no star so far.
    Uncovered,
    /// Centre of a star with this many vertices so far.
    Centre(usize),
    /// Leaf of the star centred at this bag vertex.
    Leaf(usize),
    /// Leaf of a star whose centre has been forgotten.
    LeafOutside,
}

type Vectors = BTreeSet<Vec<usize>>;
type Table = HashMap<Vec<Role>, Vectors>;

/// Star-count vectors of all star forests in `g` with star sizes at most
/// `delta + 1`, computed over a min-fill tree decomposition.
pub fn enum_star_vectors_dp(g: &Graph, delta: usize) -> VectorFamily {
    let nice = to_nice(&heuristic_decomposition(g));
    enum_star_vectors_dp_with(g, delta, &nice)
}

/// As [`enum_star_vectors_dp`] over a caller-supplied nice decomposition.
pub fn enum_star_vectors_dp_with(
    g: &Graph,
    delta: usize,
    nice: &NiceTreeDecomposition,
) -> VectorFamily {
    let dim = delta.min(g.max_degree());
    let mut vectors = BTreeSet::new();
    if dim == 0 {
        vectors.insert(StarCountVector::zero());
        return VectorFamily { delta, vectors };
    }
    let dp = Dp { g, dim };
    let mut tables: Vec<Option<Table>> = vec![None; nice.nodes.len()];
    let mut pending_reads = vec![0usize; nice.nodes.len()];
    for n in &nice.nodes {
        for &c in &n.children {
            pending_reads[c] += 1;
        }
    }
    for (i, node) in nice.nodes.iter().enumerate() {
        let mut take = |c: usize| -> Table {
            pending_reads[c] -= 1;
            if pending_reads[c] == 0 {
                tables[c].take().unwrap()
            } else {
                tables[c].clone().unwrap()
            }
        };
        let table = match node.kind {
            NodeKind::Leaf => {
                let mut t = Table::new();
                t.insert(Vec::new(), BTreeSet::from([vec![0; dim]]));
                t
            }
            NodeKind::Introduce(v) => {
                let child = take(node.children[0]);
                dp.introduce(&child, &node.bag, v)
            }
            NodeKind::Forget(v) => {
                let cbag = nice.nodes[node.children[0]].bag.clone();
                let child = take(node.children[0]);
                dp.forget(child, &cbag, v)
            }
            NodeKind::Join => {
                let a = take(node.children[0]);
                let b = take(node.children[1]);
                dp.join(&a, &b, &node.bag)
            }
        };
        tables[i] = Some(table);
    }
    let root = tables[nice.root()].take().unwrap();
    for v in root.get(&Vec::new()).into_iter().flatten() {
        vectors.insert(StarCountVector::from_dense(v.clone()));
    }
    VectorFamily { delta, vectors }
}

struct Dp<'a> {
    g: &'a Graph,
    dim: usize,
}

fn shifted<'a>(set: &'a Vectors, adjust: &[i64]) -> impl Iterator<Item = Vec<usize>> + 'a {
    let adjust = adjust.to_vec();
    set.iter().map(move |v| {
        v.iter()
            .zip(&adjust)
            .map(|(&x, &a)| {
                let y = x as i64 + a;
                debug_assert!(y >= 0);
                y as usize
            })
            .collect()
    })
}

impl Dp<'_> {
    fn add(&self, out: &mut Table, mask: Vec<Role>, set: &Vectors, adjust: &[i64]) {
        out.entry(mask).or_default().extend(shifted(set, adjust));
    }

    fn introduce(&self, child: &Table, bag: &[usize], v: usize) -> Table {
        let p = bag.binary_search(&v).unwrap();
        let max_size = self.dim + 1;
        let mut out = Table::new();
        for (mask, set) in child {
            let mut base = mask.clone();
            base.insert(p, Role::Uncovered);
            let zero = vec![0i64; self.dim];
            self.add(&mut out, base.clone(), set, &zero);
            let nbrs: Vec<usize> = (0..bag.len())
                .filter(|&i| i != p && self.g.has_edge(v, bag[i]))
                .collect();
            // v joins the star of a bag neighbour
            for &i in &nbrs {
                let mut adjust = vec![0i64; self.dim];
                let role = match base[i] {
                    Role::Uncovered => {
                        adjust[0] += 1;
                        Role::Centre(2)
                    }
                    Role::Centre(d) if d < max_size => {
                        adjust[d - 2] -= 1;
                        adjust[d - 1] += 1;
                        Role::Centre(d + 1)
                    }
                    _ => continue,
                };
                let mut m = base.clone();
                m[i] = role;
                m[p] = Role::Leaf(bag[i]);
                self.add(&mut out, m, set, &adjust);
            }
            // v becomes a centre over uncovered bag neighbours
            let free: Vec<usize> = nbrs
                .iter()
                .copied()
                .filter(|&i| base[i] == Role::Uncovered)
                .collect();
            for sub in 1u64..(1 << free.len()) {
                let k = sub.count_ones() as usize;
                if k > self.dim {
                    continue;
                }
                let mut m = base.clone();
                m[p] = Role::Centre(k + 1);
                for (j, &i) in free.iter().enumerate() {
                    if sub >> j & 1 == 1 {
                        m[i] = Role::Leaf(v);
                    }
                }
                let mut adjust = vec![0i64; self.dim];
                adjust[k - 1] += 1;
                self.add(&mut out, m, set, &adjust);
            }
        }
        out
    }

    fn forget(&self, child: Table, cbag: &[usize], v: usize) -> Table {
        let p = cbag.binary_search(&v).unwrap();
        let mut out = Table::new();
        for (mut mask, set) in child {
            let was_centre = matches!(mask[p], Role::Centre(_));
            mask.remove(p);
            if was_centre {
                for r in mask.iter_mut() {
                    if *r == Role::Leaf(v) {
                        *r = Role::LeafOutside;
                    }
                }
            }
            out.entry(mask).or_default().extend(set);
        }
        out
    }

    /// Merged mask and count correction for two child masks, or `None` if
    /// they describe incompatible partial forests.
    fn merge(&self, bag: &[usize], m1: &[Role], m2: &[Role]) -> Option<(Vec<Role>, Vec<i64>)> {
        use Role::*;
        let mut mask = Vec::with_capacity(bag.len());
        let mut adjust = vec![0i64; self.dim];
        for i in 0..bag.len() {
            let r = match (m1[i], m2[i]) {
                (Uncovered, x) | (x, Uncovered) => x,
                (Leaf(a), Leaf(b)) if a == b => Leaf(a),
                (Centre(d1), Centre(d2)) => {
                    let u = bag[i];
                    let mut q = 0;
                    for j in 0..bag.len() {
                        let l1 = m1[j] == Leaf(u);
                        let l2 = m2[j] == Leaf(u);
                        if l1 != l2 {
                            return None;
                        }
                        q += l1 as usize;
                    }
                    let d = d1 + d2 - q - 1;
                    if d > self.dim + 1 {
                        return None;
                    }
                    adjust[d1 - 2] -= 1;
                    adjust[d2 - 2] -= 1;
                    adjust[d - 2] += 1;
                    Centre(d)
                }
                _ => return None,
            };
            mask.push(r);
        }
        Some((mask, adjust))
    }

    /// Pairs masks by hash join: within each pair of uncovered-position
    /// groups, only masks agreeing on the positions covered on both sides
    /// can merge.
    fn join(&self, a: &Table, b: &Table, bag: &[usize]) -> Table {
        let ga = self.grouped(a);
        let gb = self.grouped(b);
        let full = if bag.len() >= 64 {
            u64::MAX
        } else {
            (1u64 << bag.len()) - 1
        };
        let mut out = Table::new();
        for (u1, g1) in &ga {
            for (u2, g2) in &gb {
                let both = full & !u1 & !u2;
                let mut index: HashMap<Vec<u8>, Vec<usize>> = HashMap::new();
                for (j, (m2, _)) in g2.iter().enumerate() {
                    if let Some(key) = coarse(bag, m2, both) {
                        index.entry(key).or_default().push(j);
                    }
                }
                for (m1, s1) in g1 {
                    let Some(js) = coarse(bag, m1, both).and_then(|k| index.get(&k)) else {
                        continue;
                    };
                    for &j in js {
                        let (m2, s2) = &g2[j];
                        let Some((mask, adjust)) = self.merge(bag, m1, m2) else {
                            continue;
                        };
                        let sums = sumset(s1, s2).expect("dimensions agree");
                        out.entry(mask)
                            .or_default()
                            .extend(shifted(&sums.members, &adjust));
                    }
                }
            }
        }
        out
    }

    /// Table entries grouped by the bitmask of uncovered bag positions.
    fn grouped<'t>(&self, t: &'t Table) -> HashMap<u64, Vec<(&'t [Role], IntVectorSet)>> {
        let mut out: HashMap<u64, Vec<_>> = HashMap::new();
        for (mask, set) in t {
            let unc = mask
                .iter()
                .enumerate()
                .filter(|(_, r)| **r == Role::Uncovered)
                .fold(0u64, |acc, (i, _)| acc | 1 << i);
            out.entry(unc)
                .or_default()
                .push((mask.as_slice(), as_set(self.dim, set)));
        }
        out
    }
}

/// Roles on the positions in `on`, with centre sizes erased; `None` if a
/// position holds a leaf of a forgotten centre, which cannot be shared.
fn coarse(bag: &[usize], mask: &[Role], on: u64) -> Option<Vec<u8>> {
    let mut key = Vec::new();
    for (i, r) in mask.iter().enumerate() {
        if on >> i & 1 == 0 {
            continue;
        }
        key.push(match r {
            Role::Centre(_) => 0,
            Role::Leaf(c) => 1 + bag.binary_search(c).expect("leaf centre in bag") as u8,
            Role::LeafOutside | Role::Uncovered => return None,
        });
    }
    Some(key)
}

fn as_set(dim: usize, s: &Vectors) -> IntVectorSet {
    IntVectorSet {
        dim,
        bound: s.iter().flatten().copied().max().unwrap_or(0),
        members: s.clone(),
    }
}

/// Best common star forest of two graphs by intersecting their DP families
/// with star sizes capped by the smaller maximum degree plus one.
pub fn solve_tw(g1: &Graph, g2: &Graph) -> (usize, StarCountVector) {
    let delta = g1.max_degree().min(g2.max_degree());
    let f1 = enum_star_vectors_dp(g1, delta);
    let f2 = enum_star_vectors_dp(g2, delta);
    f1.best_common(&f2)
}
