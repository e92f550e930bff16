//! Exact solver for graphs whose connected components are small.
//!
//! Components are grouped by isomorphism type. For each type we list the
//! star signatures (stars per leaf count) it can host; an integer program
//! then decides how many copies of each type use each signature so that
//! both graphs end up with the same stars.

use std::collections::{BTreeMap, BTreeSet};

use crate::bip::{self, BipModel, BipSolution, Relation};
use crate::error::{Error, Result};
use crate::forest::StarForest;
use crate::graph::Graph;

/// Largest component size the canonicaliser accepts.
pub const MAX_COMPONENT: usize = 8;

/// Canonical key of a connected shape: vertex count and the smallest
/// upper-triangle adjacency bit string over all vertex orders.
pub type ShapeKey = (usize, u64);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentCatalog {
    pub shapes: Vec<Graph>,
    pub keys: Vec<ShapeKey>,
    pub counts1: Vec<usize>,
    pub counts2: Vec<usize>,
    pub k: usize,
}

fn pair_bit(n: usize, u: usize, v: usize) -> usize {
    let (u, v) = if u < v { (u, v) } else { (v, u) };
    // row-major index into the strict upper triangle
    u * n - u * (u + 1) / 2 + (v - u - 1)
}

fn bits_under(g: &Graph, order: &[usize]) -> u64 {
    // order[i] = original vertex placed at position i
    let n = order.len();
    let total = n * n.saturating_sub(1) / 2;
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut bits = 0u64;
    for (u, v) in g.edges() {
        bits |= 1 << (total - 1 - pair_bit(n, pos[u], pos[v]));
    }
    bits
}

/// Canonical form of a graph on at most [`MAX_COMPONENT`] vertices.
pub fn canonical_form(g: &Graph) -> Result<(ShapeKey, Graph)> {
    let n = g.vertex_count();
    if n > MAX_COMPONENT {
        return Err(Error::resource(format!(
            "canonical form refused for {n} vertices (limit {MAX_COMPONENT})"
        )));
    }
    let mut order: Vec<usize> = (0..n).collect();
    let mut best = (bits_under(g, &order), order.clone());
    // Heap's algorithm
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                order.swap(0, i);
            } else {
                order.swap(c[i], i);
            }
            let b = bits_under(g, &order);
            if b < best.0 {
                best = (b, order.clone());
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    let mut pos = vec![0; n];
    for (i, &v) in best.1.iter().enumerate() {
        pos[v] = i;
    }
    let edges: Vec<_> = g.edges().map(|(u, v)| (pos[u], pos[v])).collect();
    Ok(((n, best.0), Graph::from_edges(n, &edges)))
}

pub fn catalog_components(g1: &Graph, g2: &Graph, k: usize) -> Result<ComponentCatalog> {
    if k > MAX_COMPONENT {
        return Err(Error::resource(format!(
            "component bound {k} exceeds the supported {MAX_COMPONENT}"
        )));
    }
    let mut index: BTreeMap<ShapeKey, usize> = BTreeMap::new();
    let mut cat = ComponentCatalog {
        shapes: Vec::new(),
        keys: Vec::new(),
        counts1: Vec::new(),
        counts2: Vec::new(),
        k,
    };
    for (side, g) in [(0, g1), (1, g2)] {
        for comp in g.components() {
            if comp.len() > k {
                return Err(Error::precondition(format!(
                    "G{} has a component of {} vertices containing vertex {}, above the bound {k}",
                    side + 1,
                    comp.len(),
                    comp[0]
                )));
            }
            let (key, shape) = canonical_form(&g.induced_subgraph(&comp))?;
            let i = *index.entry(key).or_insert_with(|| {
                cat.shapes.push(shape);
                cat.keys.push(key);
                cat.counts1.push(0);
                cat.counts2.push(0);
                cat.shapes.len() - 1
            });
            if side == 0 {
                cat.counts1[i] += 1;
            } else {
                cat.counts2[i] += 1;
            }
        }
    }
    Ok(cat)
}

/// Stars per leaf count: entry `j - 1` counts stars with `j` leaves.
pub type Signature = Vec<usize>;

/// Realisable signatures per catalogued shape, each of length `k - 1`
/// (empty when `k <= 1`).
pub type RealisationTable = Vec<BTreeSet<Signature>>;

pub fn realisation_table(cat: &ComponentCatalog) -> RealisationTable {
    let dim = cat.k.saturating_sub(1);
    cat.shapes.iter().map(|s| signatures(s, dim)).collect()
}

/// All signatures of star forests inside `g`. The lowest undecided vertex
/// is either left out, made a centre over undecided neighbours, or made a
/// leaf of an undecided neighbour's new star.
pub fn signatures(g: &Graph, dim: usize) -> BTreeSet<Signature> {
    let mut out = BTreeSet::new();
    let mut decided = vec![false; g.vertex_count()];
    let mut sig = vec![0; dim];
    grow(g, &mut decided, &mut sig, &mut out);
    out
}

fn grow(g: &Graph, decided: &mut [bool], sig: &mut Signature, out: &mut BTreeSet<Signature>) {
    let Some(v) = decided.iter().position(|d| !d) else {
        out.insert(sig.clone());
        return;
    };
    decided[v] = true;
    grow(g, decided, sig, out);
    let free = |c: usize, decided: &[bool]| -> Vec<usize> {
        g.neighbors(c)
            .iter()
            .copied()
            .filter(|&w| !decided[w])
            .collect()
    };
    // v as centre
    let nv = free(v, decided);
    for_subsets(&nv, |leaves| {
        if leaves.is_empty() {
            return;
        }
        for &w in leaves {
            decided[w] = true;
        }
        sig[leaves.len() - 1] += 1;
        grow(g, decided, sig, out);
        sig[leaves.len() - 1] -= 1;
        for &w in leaves {
            decided[w] = false;
        }
    });
    // v as leaf of c; other leaves of c are drawn from its free neighbours
    for c in nv {
        decided[c] = true;
        let others = free(c, decided);
        for_subsets(&others, |leaves| {
            for &w in leaves {
                decided[w] = true;
            }
            sig[leaves.len()] += 1;
            grow(g, decided, sig, out);
            sig[leaves.len()] -= 1;
            for &w in leaves {
                decided[w] = false;
            }
        });
        decided[c] = false;
    }
    decided[v] = false;
}

fn for_subsets(items: &[usize], mut f: impl FnMut(&[usize])) {
    let mut pick = Vec::with_capacity(items.len());
    for mask in 0u32..(1 << items.len()) {
        pick.clear();
        pick.extend(
            (0..items.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| items[i]),
        );
        f(&pick);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CcSolution {
    pub size: usize,
    pub forest: StarForest,
}

/// The integer program over a catalog: `x[i][l]` copies of shape `i` in G1
/// use signature `l`, likewise `y` for G2; copies are fully assigned and
/// star totals per leaf count agree.
pub fn build_cc_model(
    cat: &ComponentCatalog,
    table: &RealisationTable,
) -> (BipModel, Vec<Vec<(usize, Signature)>>) {
    let dim = cat.k.saturating_sub(1);
    let mut m = BipModel::new();
    let mut x_vars = Vec::new();
    let mut balance: Vec<Vec<(usize, i64)>> = vec![Vec::new(); dim];
    let mut objective = Vec::new();
    for (side, counts) in [(0, &cat.counts1), (1, &cat.counts2)] {
        for (i, sigs) in table.iter().enumerate() {
            let mut row = Vec::new();
            let mut vars = Vec::new();
            for (l, sig) in sigs.iter().enumerate() {
                let name = format!("{}_{i}_{l}", if side == 0 { "x" } else { "y" });
                let var = m.add_var(name, 0, counts[i] as i64);
                row.push((var, 1));
                let sign = if side == 0 { 1 } else { -1 };
                for (j, &s) in sig.iter().enumerate() {
                    if s > 0 {
                        balance[j].push((var, sign * s as i64));
                        if side == 0 {
                            objective.push((var, ((j + 2) * s) as i64));
                        }
                    }
                }
                if side == 0 {
                    vars.push((var, sig.clone()));
                }
            }
            m.add_constraint(row, Relation::Eq, counts[i] as i64);
            if side == 0 {
                x_vars.push(vars);
            }
        }
    }
    for row in balance.into_iter().filter(|r| !r.is_empty()) {
        m.add_constraint(row, Relation::Eq, 0);
    }
    m.set_objective(objective, 0);
    (m, x_vars)
}

/// Optimum common star forest when every component has at most `k`
/// vertices.
pub fn solve_cc(g1: &Graph, g2: &Graph, k: usize) -> Result<CcSolution> {
    let cat = catalog_components(g1, g2, k)?;
    let table = realisation_table(&cat);
    let (model, x_vars) = build_cc_model(&cat, &table);
    match bip::solve(&model)? {
        BipSolution::Optimal {
            assignment,
            objective,
        } => {
            let mut sizes = Vec::new();
            for (var, sig) in x_vars.iter().flatten() {
                for (j, &s) in sig.iter().enumerate() {
                    for _ in 0..s * assignment[*var] as usize {
                        sizes.push(j + 2);
                    }
                }
            }
            Ok(CcSolution {
                size: objective as usize,
                forest: StarForest::new(sizes),
            })
        }
        // the all-zero signature is always available
        BipSolution::Infeasible => unreachable!("component program is always feasible"),
    }
}

/// Largest component size over both graphs.
pub fn max_component_size(g1: &Graph, g2: &Graph) -> usize {
    [g1, g2]
        .iter()
        .flat_map(|g| g.components())
        .map(|c| c.len())
        .max()
        .unwrap_or(0)
}

/// Bounded treedepth and degree bound component sizes; this measures the
/// actual maximum and hands it to [`solve_cc`].
pub fn solve_td_deg(g1: &Graph, g2: &Graph) -> Result<CcSolution> {
    solve_cc(g1, g2, max_component_size(g1, g2))
}
