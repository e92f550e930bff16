use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// A set of `dim`-dimensional integer vectors with coordinates in `[0, bound]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntVectorSet {
    pub dim: usize,
    pub bound: usize,
    pub members: BTreeSet<Vec<usize>>,
}

impl IntVectorSet {
    pub fn new(dim: usize, bound: usize) -> Self {
        IntVectorSet {
            dim,
            bound,
            members: BTreeSet::new(),
        }
    }

    /// Builds a set, taking the bound from the largest coordinate.
    pub fn from_members<I: IntoIterator<Item = Vec<usize>>>(
        dim: usize,
        members: I,
    ) -> Result<Self> {
        let members: BTreeSet<Vec<usize>> = members.into_iter().collect();
        if let Some(v) = members.iter().find(|v| v.len() != dim) {
            return Err(Error::precondition(format!(
                "vector {v:?} has dimension {}, expected {dim}",
                v.len()
            )));
        }
        let bound = members.iter().flatten().copied().max().unwrap_or(0);
        Ok(IntVectorSet {
            dim,
            bound,
            members,
        })
    }

    pub fn insert(&mut self, v: Vec<usize>) {
        assert_eq!(v.len(), self.dim);
        assert!(v.iter().all(|&x| x <= self.bound));
        self.members.insert(v);
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Largest transform length tried before falling back to the naive loop.
const MAX_TRANSFORM: usize = 1 << 22;

/// `{a + b : a ∈ A, b ∈ B}`.
///
/// Uses the polynomial product of [`sumset_transform`] unless the sets are
/// so small that summing all pairs is cheaper than a transform over the
/// encoded range, or the encoding does not fit in a machine word.
pub fn sumset(a: &IntVectorSet, b: &IntVectorSet) -> Result<IntVectorSet> {
    check_dims(a, b)?;
    match encoded_span(a, b) {
        Some(span) if (a.len() as u64) * (b.len() as u64) > span as u64 => sumset_transform(a, b),
        Some(_) => sumset_naive(a, b),
        None => {
            log::info!(
                "sumset: base-{} encoding of dimension {} exceeds the transform budget; summing pairs",
                2 * a.bound.max(b.bound) + 1,
                a.dim
            );
            sumset_naive(a, b)
        }
    }
}

fn encoded_span(a: &IntVectorSet, b: &IntVectorSet) -> Option<usize> {
    let base = 2 * a.bound.max(b.bound) as u64 + 1;
    match base.checked_pow(a.dim as u32) {
        Some(s) if s <= (MAX_TRANSFORM / 2) as u64 => Some(s as usize),
        _ => None,
    }
}

/// Sumset by multiplying indicator polynomials.
///
/// A vector `s` with coordinates in `[0, n]` is encoded as the exponent
/// `Σ s_i (2n+1)^i`; every coordinate of a sum is at most `2n`, so no
/// carries occur and the product's support decodes to the sumset exactly.
/// The product is a number-theoretic transform modulo a prime larger than
/// any coefficient. Encodings that do not fit fall back to pair sums.
pub fn sumset_transform(a: &IntVectorSet, b: &IntVectorSet) -> Result<IntVectorSet> {
    check_dims(a, b)?;
    let n = a.bound.max(b.bound);
    if a.is_empty() || b.is_empty() {
        return Ok(IntVectorSet::new(a.dim, 2 * n));
    }
    let Some(span) = encoded_span(a, b) else {
        log::info!("sumset: encoding exceeds the transform budget; summing pairs");
        return sumset_naive(a, b);
    };
    let base = 2 * n + 1;
    let mut pa = vec![0u64; span];
    let mut pb = vec![0u64; span];
    for v in &a.members {
        pa[encode(v, base)] = 1;
    }
    for v in &b.members {
        pb[encode(v, base)] = 1;
    }
    let prod = ntt::multiply(&pa, &pb);
    let mut out = IntVectorSet::new(a.dim, 2 * n);
    for (e, &c) in prod.iter().enumerate() {
        if c != 0 {
            out.members.insert(decode(e, base, a.dim));
        }
    }
    Ok(out)
}

/// Reference implementation: every pair summed directly.
pub fn sumset_naive(a: &IntVectorSet, b: &IntVectorSet) -> Result<IntVectorSet> {
    check_dims(a, b)?;
    let n = a.bound.max(b.bound);
    let mut out = IntVectorSet::new(a.dim, 2 * n);
    for x in &a.members {
        for y in &b.members {
            out.members
                .insert(x.iter().zip(y).map(|(p, q)| p + q).collect());
        }
    }
    Ok(out)
}

fn check_dims(a: &IntVectorSet, b: &IntVectorSet) -> Result<()> {
    if a.dim != b.dim {
        return Err(Error::precondition(format!(
            "sumset dimension mismatch: {} vs {}",
            a.dim, b.dim
        )));
    }
    Ok(())
}

fn encode(v: &[usize], base: usize) -> usize {
    v.iter().rev().fold(0, |acc, &x| acc * base + x)
}

fn decode(mut e: usize, base: usize, dim: usize) -> Vec<usize> {
    let mut v = Vec::with_capacity(dim);
    for _ in 0..dim {
        v.push(e % base);
        e /= base;
    }
    v
}

mod ntt {
    const P: u64 = 998_244_353;
    const G: u64 = 3;

    fn pow(mut b: u64, mut e: u64) -> u64 {
        let mut r = 1;
        b %= P;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % P;
            }
            b = b * b % P;
            e >>= 1;
        }
        r
    }

    fn transform(a: &mut [u64], invert: bool) {
        let n = a.len();
        let mut j = 0;
        for i in 1..n {
            let mut bit = n >> 1;
            while j & bit != 0 {
                j ^= bit;
                bit >>= 1;
            }
            j ^= bit;
            if i < j {
                a.swap(i, j);
            }
        }
        let mut len = 2;
        while len <= n {
            let mut w = pow(G, (P - 1) / len as u64);
            if invert {
                w = pow(w, P - 2);
            }
            for start in (0..n).step_by(len) {
                let mut wn = 1;
                for k in 0..len / 2 {
                    let u = a[start + k];
                    let v = a[start + k + len / 2] * wn % P;
                    a[start + k] = (u + v) % P;
                    a[start + k + len / 2] = (u + P - v) % P;
                    wn = wn * w % P;
                }
            }
            len <<= 1;
        }
        if invert {
            let inv = pow(n as u64, P - 2);
            for x in a.iter_mut() {
                *x = *x * inv % P;
            }
        }
    }

    /// Product of two polynomials with coefficients below `P`; exact as long
    /// as every product coefficient is below `P` too.
    pub fn multiply(a: &[u64], b: &[u64]) -> Vec<u64> {
        let need = a.len() + b.len() - 1;
        let n = need.next_power_of_two();
        let mut fa = a.to_vec();
        let mut fb = b.to_vec();
        fa.resize(n, 0);
        fb.resize(n, 0);
        transform(&mut fa, false);
        transform(&mut fb, false);
        for (x, y) in fa.iter_mut().zip(&fb) {
            *x = *x * y % P;
        }
        transform(&mut fa, true);
        fa.truncate(need);
        fa
    }

    #[cfg(test)]
    mod tests {
        #[test]
        fn small_product() {
            assert_eq!(super::multiply(&[1, 2], &[3, 4]), vec![3, 10, 8]);
        }
    }
}
