//! Trees of treedepth at most 5 against a star forest.
//!
//! Tree `T_i` has a root `r_i` with `D - 1` pendant vertices and `k` spokes
//! `s_{i,j}`; each spoke carries `a_i` paths `t - u` and `u` gets `2j + 4`
//! pendant leaves. The second graph holds big stars `P_i`, stars `Q_{i,j}`
//! with `a_i` leaves and per-bin stars `R_{j,l}`, `S_{j,l}` whose leaf counts
//! encode the bin.

use std::collections::BTreeMap;

use super::{other_rank, star_of, Builder, Construction, KwayInstance, LabeledInstance, Partition};
use crate::error::{Error, Result};
use crate::forest::Embedding;
use crate::instance::Instance;

/// Vertex count of both graphs: `n(D + k) + M(k² + 7k)` with `D = M + 20`.
pub fn td5_count(kw: &KwayInstance) -> usize {
    let (n, k, m) = (kw.items.len(), kw.k, kw.total());
    n * (m + 20 + k) + m * (k * k + 7 * k)
}

pub fn gen_kway_td5(kw: &KwayInstance) -> Result<LabeledInstance> {
    let k = kw.k;
    if let Some(a) = kw.items.iter().find(|&&a| a % 2 == 1 || a < 2 * k + 10) {
        return Err(Error::precondition(format!(
            "item {a} must be even and at least 2k + 10 = {}; rescale the instance first",
            2 * k + 10
        )));
    }
    kw.require_balanced()?;
    let (n, m, c) = (kw.items.len(), kw.total(), kw.capacity);
    let d = m + 20;

    let mut b1 = Builder::default();
    for i in 1..=n {
        let ai = kw.items[i - 1];
        let r = b1.vertex(format!("r_{i}"));
        for x in 1..d {
            let h = b1.vertex(format!("h_{i}_{x}"));
            b1.edge(r, h);
        }
        for j in 1..=k {
            let s = b1.vertex(format!("s_{i}_{j}"));
            b1.edge(r, s);
            for l in 1..=ai {
                let t = b1.vertex(format!("t_{i}_{j}_{l}"));
                let u = b1.vertex(format!("u_{i}_{j}_{l}"));
                b1.edge(s, t);
                b1.edge(t, u);
                for x in 1..=2 * j + 4 {
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
    for i in 1..=n {
        for j in 1..k {
            b2.star(&format!("beta_{i}_{j}"), kw.items[i - 1]);
        }
    }
    for j in 1..=k {
        for l in 1..=c {
            b2.star(&format!("gamma_{j}_{l}"), 2 * j + 5);
        }
        for l in 1..=m - c {
            b2.star(&format!("delta_{j}_{l}"), 2 * j + 4);
        }
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
            ("M".into(), m),
            ("k".into(), k),
            ("C".into(), c),
            ("n".into(), n),
        ]),
        construction: Construction::KwayTd5(kw.clone()),
    })
}

pub(super) fn embed(
    inst: &LabeledInstance,
    kw: &KwayInstance,
    part: &Partition,
) -> Result<(Embedding, Embedding)> {
    let off = super::embed_offsets(kw, part)?;
    let k = kw.k;
    let d = inst.params["D"];
    let l1 = |s: String| inst.labels1[&s];
    let mut e1 = Vec::new();
    let mut e2 = Vec::new();
    for i in 1..=kw.items.len() {
        let ai = kw.items[i - 1];
        let bi = off.b[i - 1] + 1;
        let mut p = vec![l1(format!("r_{i}"))];
        p.extend((1..d).map(|x| l1(format!("h_{i}_{x}"))));
        p.push(l1(format!("s_{i}_{bi}")));
        e1.push(p);
        e2.push(star_of(&inst.labels2, &format!("alpha_{i}"), d));
        for j in (1..=k).filter(|&j| j != bi) {
            let jr = other_rank(j - 1, bi - 1) + 1;
            let mut q = vec![l1(format!("s_{i}_{j}"))];
            q.extend((1..=ai).map(|l| l1(format!("t_{i}_{j}_{l}"))));
            e1.push(q);
            e2.push(star_of(&inst.labels2, &format!("beta_{i}_{jr}"), ai));
        }
        for l in 1..=ai {
            let mut r = vec![l1(format!("u_{i}_{bi}_{l}"))];
            r.extend((1..=2 * bi + 4).map(|x| l1(format!("v_{i}_{bi}_{l}_{x}"))));
            r.push(l1(format!("t_{i}_{bi}_{l}")));
            e1.push(r);
            let idx = l + off.p[i - 1];
            e2.push(star_of(
                &inst.labels2,
                &format!("gamma_{bi}_{idx}"),
                2 * bi + 5,
            ));
        }
        for j in (1..=k).filter(|&j| j != bi) {
            for l in 1..=ai {
                let mut s = vec![l1(format!("u_{i}_{j}_{l}"))];
                s.extend((1..=2 * j + 4).map(|x| l1(format!("v_{i}_{j}_{l}_{x}"))));
                e1.push(s);
                let idx = l + off.q[i - 1][j - 1];
                e2.push(star_of(
                    &inst.labels2,
                    &format!("delta_{j}_{idx}"),
                    2 * j + 4,
                ));
            }
        }
    }
    Ok((Embedding::new(e1), Embedding::new(e2)))
}

#[cfg(test)]
mod tests {
    use super::super::*;
    use super::*;
    use crate::forest::verify_embedding;

    fn example() -> (KwayInstance, LabeledInstance) {
        let kw = KwayInstance::new(vec![14, 14], 2, 14).unwrap();
        let li = gen_kway_td5(&kw).unwrap();
        (kw, li)
    }

    #[test]
    fn counts_and_degrees() {
        let (kw, li) = example();
        assert_eq!(td5_count(&kw), 604);
        assert_eq!(li.instance.g1.vertex_count(), 604);
        assert_eq!(li.instance.g2.vertex_count(), 604);
        assert_eq!(li.instance.h, 604);
        let d = li.params["D"];
        for i in 1..=2 {
            assert_eq!(
                li.instance.g1.degree(li.label1(&format!("r_{i}"))),
                d - 1 + 2
            );
        }
        assert_eq!(li.instance.g1.components().len(), 2);
        assert!(treedepth_at_most(&li.instance.g1, 5));
    }

    #[test]
    fn yes_embedding() {
        let (kw, li) = example();
        let part = kway_brute(&kw).unwrap().unwrap();
        assert_eq!(part, vec![vec![0], vec![1]]);
        let cert = certificate_from_partition(&li, &part).unwrap();
        assert_eq!(cert.verify(&li.instance.g1, &li.instance.g2), Ok(()));
        assert_eq!(cert.emb1.covered(), 604);
        let (e1, e2) = embed_from_partition(&li, &part).unwrap();
        for (a, b) in e1.stars.iter().zip(&e2.stars) {
            assert_eq!(a.len(), b.len());
        }
        let f = e1.shape();
        assert!(verify_embedding(&li.instance.g2, &f, &e2).is_ok());
        assert!(embed_from_partition(&li, &vec![vec![0, 1], vec![]]).is_err());
    }

    #[test]
    fn preconditions() {
        let kw = KwayInstance::new(vec![14, 14], 2, 13).unwrap();
        assert!(gen_kway_td5(&kw).is_err());
        let kw = KwayInstance::new(vec![3, 3], 2, 3).unwrap();
        let err = gen_kway_td5(&kw).unwrap_err().to_string();
        assert!(err.contains("even"), "{err}");
        assert!(gen_kway_td5(&rescale(&kw)).is_ok());
    }
}
