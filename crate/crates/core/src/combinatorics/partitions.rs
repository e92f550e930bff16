use crate::forest::StarForest;

/// All partitions of `h`, each with parts in non-increasing order.
///
/// Parts are grown non-decreasingly by recursion; at each level the current
/// prefix is closed off with the remainder as the final part.
pub fn enum_partitions(h: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if h == 0 {
        out.push(Vec::new());
        return out;
    }
    let mut prefix = Vec::new();
    grow(h, 0, &mut prefix, &mut out);
    out
}

fn grow(h: usize, sum: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let rest = h - sum;
    let mut closed = prefix.clone();
    closed.push(rest);
    closed.reverse();
    out.push(closed);
    let lo = prefix.last().copied().unwrap_or(1).max(1);
    for i in lo..=rest / 2 {
        prefix.push(i);
        grow(h, sum + i, prefix, out);
        prefix.pop();
    }
}

/// Partitions of `h` with every part at least 2, as star forests, in
/// lexicographically decreasing order of their part lists.
pub fn enum_star_partitions(h: usize) -> Vec<StarForest> {
    let mut parts: Vec<_> = enum_partitions(h)
        .into_iter()
        .filter(|p| p.iter().all(|&x| x >= 2))
        .collect();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts.into_iter().map(StarForest::new).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    // p(n, k): partitions of n into parts of size at most k
    fn count(n: usize, k: usize) -> u64 {
        let mut t = vec![vec![0u64; k + 1]; n + 1];
        for row in t.iter_mut() {
            row[0] = 0;
        }
        for j in 0..=k {
            t[0][j] = 1;
        }
        for i in 1..=n {
            for j in 1..=k {
                t[i][j] = t[i][j - 1] + if i >= j { t[i - j][j] } else { 0 };
            }
        }
        t[n][k]
    }

    #[test]
    fn counts() {
        assert_eq!(enum_partitions(0), vec![Vec::<usize>::new()]);
        assert_eq!(enum_partitions(4).len(), 5);
        assert_eq!(enum_partitions(10).len(), 42);
        for h in 0..=25 {
            assert_eq!(enum_partitions(h).len() as u64, count(h, h.max(1)), "h={h}");
        }
    }

    #[test]
    fn parts_are_non_increasing_and_distinct() {
        let ps = enum_partitions(12);
        let mut seen = std::collections::HashSet::new();
        for p in &ps {
            assert!(p.windows(2).all(|w| w[0] >= w[1]));
            assert_eq!(p.iter().sum::<usize>(), 12);
            assert!(seen.insert(p.clone()));
        }
    }

    #[test]
    fn star_partitions() {
        let f: Vec<_> = enum_star_partitions(5)
            .iter()
            .map(|s| s.sizes().to_vec())
            .collect();
        assert_eq!(f, vec![vec![5], vec![3, 2]]);
        assert!(enum_star_partitions(1).is_empty());
        assert_eq!(enum_star_partitions(0), vec![StarForest::empty()]);
        let f: Vec<_> = enum_star_partitions(4)
            .iter()
            .map(|s| s.sizes().to_vec())
            .collect();
        assert_eq!(f, vec![vec![4], vec![2, 2]]);
    }
}
