//! Trees of pathwidth at most 4 and bounded degree against a star forest.
//!
//! Each spoke `s^(0)_{i,j}` of tree `T_i` starts a chain
//! `s^(0) - y^(1) - z^(1) - s^(1) - ... - s^(a-2)` with `a` pendant paths
//! `t - u` hung along it. The first `a_i` of the `u` vertices get `2j + 4`
//! leaves and the rest `E` leaves, so every tree has the same skeleton and
//! only the leaf counts depend on the item.

use std::collections::BTreeMap;

use super::{other_rank, star_of, Builder, Construction, KwayInstance, LabeledInstance, Partition};
use crate::error::{Error, Result};
use crate::forest::Embedding;
use crate::instance::Instance;
use crate::treewidth::TreeDecomposition;

/// Vertex count of both graphs: `n(2ak² + 11ak − 3k + 8) − (k² + k)M`.
pub fn pw4_count(kw: &KwayInstance) -> usize {
    let (n, k, m) = (kw.items.len(), kw.k, kw.total());
    let a = kw.items.iter().copied().max().unwrap_or(0);
    n * (2 * a * k * k + 11 * a * k + 8 - 3 * k) - (k * k + k) * m
}

/// Index of the chain vertex `s^(x)` that `t^(l)` hangs from.
fn t_anchor(l: usize, a: usize) -> usize {
    (l - 1).min(a - 2)
}

pub fn gen_kway_pw4(kw: &KwayInstance) -> Result<LabeledInstance> {
    kw.require_balanced()?;
    let k = kw.k;
    let (n, m, c) = (kw.items.len(), kw.total(), kw.capacity);
    let a = kw.items.iter().copied().max().unwrap_or(0);
    if a < 2 {
        return Err(Error::precondition(
            "the largest item must be at least 2 for the chain construction",
        ));
    }
    let (d, e) = (2 * k + 8, 2 * k + 6);

    let mut b1 = Builder::default();
    for i in 1..=n {
        let ai = kw.items[i - 1];
        let r = b1.vertex(format!("r_{i}"));
        for x in 1..d {
            let h = b1.vertex(format!("h_{i}_{x}"));
            b1.edge(r, h);
        }
        for j in 1..=k {
            let mut s = vec![b1.vertex(format!("s_{i}_{j}_0"))];
            b1.edge(r, s[0]);
            for l in 1..=a - 2 {
                let y = b1.vertex(format!("y_{i}_{j}_{l}"));
                let z = b1.vertex(format!("z_{i}_{j}_{l}"));
                let sl = b1.vertex(format!("s_{i}_{j}_{l}"));
                b1.edge(s[l - 1], y);
                b1.edge(y, z);
                b1.edge(z, sl);
                s.push(sl);
            }
            for l in 1..=a {
                let t = b1.vertex(format!("t_{i}_{j}_{l}"));
                let u = b1.vertex(format!("u_{i}_{j}_{l}"));
                b1.edge(s[t_anchor(l, a)], t);
                b1.edge(t, u);
                let leaves = if l <= ai { 2 * j + 4 } else { e };
                for x in 1..=leaves {
                    let v = b1.vertex(format!("v_{i}_{j}_{l}_{x}"));
                    b1.edge(u, v);
                }
            }
        }
    }
    let (g1, labels1) = b1.finish();

    let mut b2 = Builder::default();
    for i in 1..=n {
        b2.star(&format!("alpha_{i}"), d);
    }
    for j in 1..=k {
        for l in 1..=c {
            b2.star(&format!("beta_{j}_{l}"), 2 * j + 5);
        }
        for l in 1..=m - c {
            b2.star(&format!("gamma_{j}_{l}"), 2 * j + 4);
        }
    }
    for i in 1..=n {
        for j in 1..=a + k - 3 {
            b2.star(&format!("delta_{i}_{j}"), 2);
        }
        for j in 1..k {
            for l in 1..=a - 2 {
                b2.star(&format!("eps_{i}_{j}_{l}"), 3);
            }
        }
    }
    for l in 1..=n * a - m {
        b2.star(&format!("zeta_{l}"), e + 1);
    }
    for l in 1..=(k - 1) * (n * a - m) {
        b2.star(&format!("eta_{l}"), e);
    }
    let (g2, labels2) = b2.finish();
    let total = g1.vertex_count();
    debug_assert_eq!(total, g2.vertex_count());
    Ok(LabeledInstance {
        instance: Instance::new(g1, g2, total),
        labels1,
        labels2,
        params: BTreeMap::from([
            ("D".into(), d),
            ("E".into(), e),
            ("a".into(), a),
            ("M".into(), m),
            ("k".into(), k),
            ("C".into(), c),
            ("n".into(), n),
        ]),
        construction: Construction::KwayPw4(kw.clone()),
    })
}

/// The explicit width-4 path decomposition of the first graph: per tree,
/// pendant bags `{r, h}`, then for every spoke the bags
/// `{s^(anchor), t^(l), u^(l), v}` for each leaf `v` of `u^(l)` followed by
/// the chain bag `{s^(l-1), y^(l), z^(l), s^(l)}`, all with `r` added.
pub fn pw4_path_decomposition(inst: &LabeledInstance) -> Result<TreeDecomposition> {
    let Construction::KwayPw4(kw) = &inst.construction else {
        return Err(Error::precondition("not a pathwidth-4 construction"));
    };
    let p = &inst.params;
    let (d, e, a, k) = (p["D"], p["E"], p["a"], p["k"]);
    let l1 = |s: String| inst.labels1[&s];
    let mut bags = Vec::new();
    for i in 1..=kw.items.len() {
        let ai = kw.items[i - 1];
        let r = l1(format!("r_{i}"));
        for x in 1..d {
            bags.push(vec![r, l1(format!("h_{i}_{x}"))]);
        }
        for j in 1..=k {
            for l in 1..=a {
                let s = l1(format!("s_{i}_{j}_{}", t_anchor(l, a)));
                let t = l1(format!("t_{i}_{j}_{l}"));
                let u = l1(format!("u_{i}_{j}_{l}"));
                let leaves = if l <= ai { 2 * j + 4 } else { e };
                for x in 1..=leaves {
                    bags.push(vec![r, s, t, u, l1(format!("v_{i}_{j}_{l}_{x}"))]);
                }
                if l <= a - 2 {
                    bags.push(vec![
                        r,
                        l1(format!("s_{i}_{j}_{}", l - 1)),
                        l1(format!("y_{i}_{j}_{l}")),
                        l1(format!("z_{i}_{j}_{l}")),
                        l1(format!("s_{i}_{j}_{l}")),
                    ]);
                }
            }
        }
    }
    Ok(TreeDecomposition::path(bags))
}

pub(super) fn embed(
    inst: &LabeledInstance,
    kw: &KwayInstance,
    part: &Partition,
) -> Result<(Embedding, Embedding)> {
    let off = super::embed_offsets(kw, part)?;
    let p = &inst.params;
    let (d, e, a, k) = (p["D"], p["E"], p["a"], p["k"]);
    let l1 = |s: String| inst.labels1[&s];
    let l2 = &inst.labels2;
    let mut e1 = Vec::new();
    let mut e2 = Vec::new();
    for i in 1..=kw.items.len() {
        let ai = kw.items[i - 1];
        let bi = off.b[i - 1] + 1;
        let mut pi = vec![l1(format!("r_{i}"))];
        pi.extend((1..d).map(|x| l1(format!("h_{i}_{x}"))));
        pi.push(l1(format!("s_{i}_{bi}_0")));
        e1.push(pi);
        e2.push(star_of(l2, &format!("alpha_{i}"), d));
        // the chosen spoke's chain splits into paths z - y, z - s
        for l in 1..=a - 2 {
            e1.push(vec![
                l1(format!("z_{i}_{bi}_{l}")),
                l1(format!("y_{i}_{bi}_{l}")),
                l1(format!("s_{i}_{bi}_{l}")),
            ]);
            e2.push(star_of(l2, &format!("delta_{i}_{l}"), 2));
        }
        for j in (1..=k).filter(|&j| j != bi) {
            let jr = other_rank(j - 1, bi - 1) + 1;
            let first = if a >= 3 {
                format!("y_{i}_{j}_1")
            } else {
                format!("t_{i}_{j}_2")
            };
            e1.push(vec![
                l1(format!("s_{i}_{j}_0")),
                l1(format!("t_{i}_{j}_1")),
                l1(first),
            ]);
            e2.push(star_of(l2, &format!("delta_{i}_{}", a - 2 + jr), 2));
            for l in 1..=a - 2 {
                let tail = if l + 2 <= a - 1 {
                    [
                        format!("t_{i}_{j}_{}", l + 1),
                        format!("y_{i}_{j}_{}", l + 1),
                    ]
                } else {
                    [format!("t_{i}_{j}_{}", a - 1), format!("t_{i}_{j}_{a}")]
                };
                e1.push(vec![
                    l1(format!("s_{i}_{j}_{l}")),
                    l1(format!("z_{i}_{j}_{l}")),
                    l1(tail[0].clone()),
                    l1(tail[1].clone()),
                ]);
                e2.push(star_of(l2, &format!("eps_{i}_{jr}_{l}"), 3));
            }
        }
        for l in 1..=a {
            let on_item = l <= ai;
            for j in 1..=k {
                let leaves = if on_item { 2 * j + 4 } else { e };
                let mut star = vec![l1(format!("u_{i}_{j}_{l}"))];
                star.extend((1..=leaves).map(|x| l1(format!("v_{i}_{j}_{l}_{x}"))));
                let target = match (on_item, j == bi) {
                    (true, true) => format!("beta_{bi}_{}", l + off.p[i - 1]),
                    (true, false) => format!("gamma_{j}_{}", l + off.q[i - 1][j - 1]),
                    (false, true) => format!("zeta_{}", l - ai + off.e[i - 1]),
                    (false, false) => format!("eta_{}", l - ai + off.f[i - 1][j - 1]),
                };
                if j == bi {
                    star.push(l1(format!("t_{i}_{j}_{l}")));
                }
                e2.push(star_of(l2, &target, star.len() - 1));
                e1.push(star);
            }
        }
    }
    Ok((Embedding::new(e1), Embedding::new(e2)))
}
