//! Exact solver for graphs with small vertex covers.
//!
//! Every star of a solution contains a cover vertex. Stars centred in the
//! cover (type I) have their cover part guessed and their independent-set
//! leaves counted per twin class by integer variables; stars centred in the
//! independent set (type II) have only cover leaves and are guessed
//! completely. A bijection between the stars of the two sides ties sizes
//! together, and each combination of guesses becomes one integer program.

use std::collections::BTreeMap;

use crate::bip::{self, BipModel, BipSolution, Relation};
use crate::error::{Error, Result};
use crate::forest::StarForest;
use crate::graph::Graph;
use crate::matching::{max_matching, min_vertex_cover};

/// Independent-set vertices grouped by their exact neighbourhood in the
/// cover. Keys are sorted cover subsets; vertices without neighbours sit in
/// the class with the empty key.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwinClasses {
    pub cover: Vec<usize>,
    pub classes: BTreeMap<Vec<usize>, Vec<usize>>,
}

impl TwinClasses {
    pub fn class_size(&self, key: &[usize]) -> usize {
        self.classes.get(key).map_or(0, Vec::len)
    }
}

pub fn twin_classes(g: &Graph, cover: &[usize]) -> Result<TwinClasses> {
    let mut in_cover = vec![false; g.vertex_count()];
    let mut cover = cover.to_vec();
    cover.sort_unstable();
    cover.dedup();
    for &c in &cover {
        in_cover[c] = true;
    }
    if let Some((u, v)) = g.edges().find(|&(u, v)| !in_cover[u] && !in_cover[v]) {
        return Err(Error::precondition(format!(
            "not a vertex cover: edge ({u}, {v}) is uncovered"
        )));
    }
    let mut classes: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for v in (0..g.vertex_count()).filter(|&v| !in_cover[v]) {
        classes.entry(g.neighbors(v).to_vec()).or_default().push(v);
    }
    Ok(TwinClasses { cover, classes })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoverRole {
    CentreOf(usize),
    LeafOfType1(usize),
    LeafOfType2(usize),
    Unused,
}

/// The guessed cover-side structure of one graph's star forest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SideGuess {
    /// Centres of the type-I stars, increasing.
    pub type1_centres: Vec<usize>,
    /// Type-II stars as (twin-class key of the centre, cover leaves).
    pub type2_stars: Vec<(Vec<usize>, Vec<usize>)>,
    /// Role of each cover vertex, aligned with `TwinClasses::cover`.
    pub cover_roles: Vec<CoverRole>,
    /// Cover vertices in each type-I star, centre included.
    pub beta: Vec<usize>,
}

impl SideGuess {
    pub fn p(&self) -> usize {
        self.type1_centres.len()
    }

    pub fn q(&self) -> usize {
        self.type2_stars.len()
    }

    pub fn star_count(&self) -> usize {
        self.p() + self.q()
    }

    /// Fixed sizes of the type-II stars.
    pub fn type2_sizes(&self) -> Vec<usize> {
        self.type2_stars.iter().map(|(_, l)| l.len() + 1).collect()
    }

    /// Class members still free to be type-I leaves.
    pub fn available(&self, tc: &TwinClasses, key: &[usize]) -> usize {
        let used = self.type2_stars.iter().filter(|(x, _)| x == key).count();
        tc.class_size(key) - used
    }

    /// Largest total size any completion of this guess can reach.
    pub fn upper_bound(&self, tc: &TwinClasses) -> usize {
        let consts: usize = self.type2_sizes().iter().sum();
        let free: usize = tc.classes.keys().map(|x| self.available(tc, x)).sum();
        let per_star: usize = self
            .type1_centres
            .iter()
            .zip(&self.beta)
            .map(|(c, b)| {
                b + tc
                    .classes
                    .keys()
                    .filter(|x| x.binary_search(c).is_ok())
                    .map(|x| self.available(tc, x))
                    .sum::<usize>()
            })
            .sum();
        consts + per_star.min(self.beta.iter().sum::<usize>() + free)
    }

    /// Re-checks the consistency rules against the graph; the error names
    /// the broken rule.
    pub fn check(&self, g: &Graph, tc: &TwinClasses) -> std::result::Result<(), String> {
        if self.cover_roles.len() != tc.cover.len() {
            return Err("role list does not match the cover".into());
        }
        for (idx, &role) in self.cover_roles.iter().enumerate() {
            let v = tc.cover[idx];
            match role {
                CoverRole::CentreOf(i) if self.type1_centres.get(i) != Some(&v) => {
                    return Err(format!("cover vertex {v} claims to centre star {i}"));
                }
                CoverRole::LeafOfType1(i) => {
                    let c = *self.type1_centres.get(i).ok_or("unknown type-I star")?;
                    if !g.has_edge(c, v) {
                        return Err(format!("leaf {v} not adjacent to centre {c}"));
                    }
                }
                CoverRole::LeafOfType2(j) => {
                    let (x, l) = self.type2_stars.get(j).ok_or("unknown type-II star")?;
                    if !l.contains(&v) || x.binary_search(&v).is_err() {
                        return Err(format!("leaf {v} outside the class key of star {j}"));
                    }
                }
                _ => {}
            }
        }
        for (j, (x, l)) in self.type2_stars.iter().enumerate() {
            if l.is_empty() {
                return Err(format!("type-II star {j} has no leaves"));
            }
            if tc.class_size(x) == 0 {
                return Err(format!("type-II star {j} anchored in an empty class"));
            }
            for v in l {
                let idx = tc
                    .cover
                    .binary_search(v)
                    .map_err(|_| "leaf outside cover")?;
                if self.cover_roles[idx] != CoverRole::LeafOfType2(j) {
                    return Err(format!("leaf {v} of star {j} has a different role"));
                }
            }
        }
        for x in tc.classes.keys() {
            if self.type2_stars.iter().filter(|(y, _)| y == x).count() > tc.class_size(x) {
                return Err(format!("class {x:?} hosts too many type-II centres"));
            }
        }
        Ok(())
    }
}

/// Every consistent guess for one side.
pub fn side_guesses(g: &Graph, tc: &TwinClasses) -> Vec<SideGuess> {
    let a = tc.cover.len();
    let mut out = Vec::new();
    for centre_mask in 0u32..(1 << a) {
        let centres: Vec<usize> = (0..a).filter(|&i| centre_mask >> i & 1 == 1).collect();
        let mut roles = vec![CoverRole::Unused; a];
        for (i, &ci) in centres.iter().enumerate() {
            roles[ci] = CoverRole::CentreOf(i);
        }
        let rest: Vec<usize> = (0..a).filter(|&i| centre_mask >> i & 1 == 0).collect();
        assign_rest(
            g,
            tc,
            &centres,
            &rest,
            0,
            &mut roles,
            &mut Vec::new(),
            &mut out,
        );
    }
    out
}

/// Gives each non-centre cover vertex a role: unused, leaf of an adjacent
/// type-I centre, or marked for some type-II star (grouped afterwards).
#[allow(clippy::too_many_arguments)]
fn assign_rest(
    g: &Graph,
    tc: &TwinClasses,
    centres: &[usize],
    rest: &[usize],
    pos: usize,
    roles: &mut Vec<CoverRole>,
    type2_pool: &mut Vec<usize>,
    out: &mut Vec<SideGuess>,
) {
    if pos == rest.len() {
        group_type2(tc, centres, roles, type2_pool, out);
        return;
    }
    let idx = rest[pos];
    let v = tc.cover[idx];
    roles[idx] = CoverRole::Unused;
    assign_rest(g, tc, centres, rest, pos + 1, roles, type2_pool, out);
    for (i, &ci) in centres.iter().enumerate() {
        if g.has_edge(tc.cover[ci], v) {
            roles[idx] = CoverRole::LeafOfType1(i);
            assign_rest(g, tc, centres, rest, pos + 1, roles, type2_pool, out);
        }
    }
    type2_pool.push(idx);
    roles[idx] = CoverRole::LeafOfType2(usize::MAX);
    assign_rest(g, tc, centres, rest, pos + 1, roles, type2_pool, out);
    type2_pool.pop();
    roles[idx] = CoverRole::Unused;
}

/// Splits the type-II pool into leaf sets and picks a twin class for each.
fn group_type2(
    tc: &TwinClasses,
    centres: &[usize],
    roles: &[CoverRole],
    pool: &[usize],
    out: &mut Vec<SideGuess>,
) {
    let mut beta = vec![1usize; centres.len()];
    for r in roles {
        if let CoverRole::LeafOfType1(i) = r {
            beta[*i] += 1;
        }
    }
    for blocks in set_partitions(pool) {
        let leaf_sets: Vec<Vec<usize>> = blocks
            .iter()
            .map(|b| b.iter().map(|&i| tc.cover[i]).collect())
            .collect();
        let options: Vec<Vec<&Vec<usize>>> = leaf_sets
            .iter()
            .map(|l| {
                tc.classes
                    .keys()
                    .filter(|x| l.iter().all(|v| x.binary_search(v).is_ok()))
                    .collect()
            })
            .collect();
        let mut choice = Vec::new();
        pick_classes(tc, &options, &mut choice, &mut |keys: &[&Vec<usize>]| {
            let mut r = roles.to_vec();
            for (j, b) in blocks.iter().enumerate() {
                for &i in b {
                    r[i] = CoverRole::LeafOfType2(j);
                }
            }
            out.push(SideGuess {
                type1_centres: centres.iter().map(|&i| tc.cover[i]).collect(),
                type2_stars: keys
                    .iter()
                    .zip(&leaf_sets)
                    .map(|(x, l)| ((*x).clone(), l.clone()))
                    .collect(),
                cover_roles: r,
                beta: beta.clone(),
            });
        });
    }
}

fn pick_classes<'a>(
    tc: &TwinClasses,
    options: &[Vec<&'a Vec<usize>>],
    choice: &mut Vec<&'a Vec<usize>>,
    f: &mut impl FnMut(&[&'a Vec<usize>]),
) {
    if choice.len() == options.len() {
        f(choice);
        return;
    }
    for &x in &options[choice.len()] {
        let used = choice.iter().filter(|&&y| y == x).count();
        if used < tc.class_size(x) {
            choice.push(x);
            pick_classes(tc, options, choice, f);
            choice.pop();
        }
    }
}

/// All partitions of `items` into non-empty blocks, each block in input
/// order and blocks ordered by first element.
fn set_partitions(items: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    fn rec(
        items: &[usize],
        pos: usize,
        blocks: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if pos == items.len() {
            out.push(blocks.clone());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(items[pos]);
            rec(items, pos + 1, blocks, out);
            blocks[b].pop();
        }
        blocks.push(vec![items[pos]]);
        rec(items, pos + 1, blocks, out);
        blocks.pop();
    }
    rec(items, 0, &mut blocks, &mut out);
    out
}

/// Two side guesses with a bijection between their stars: star `i` of side
/// 1 (type I first, then type II) is matched with star `pi[i]` of side 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GuessPair {
    pub side1: SideGuess,
    pub side2: SideGuess,
    pub pi: Vec<usize>,
}

/// Streams every consistent guess pair.
pub fn enumerate_guesses<'a>(
    g1: &'a Graph,
    g2: &'a Graph,
    tc1: &'a TwinClasses,
    tc2: &'a TwinClasses,
) -> impl Iterator<Item = GuessPair> + 'a {
    let s1 = side_guesses(g1, tc1);
    let s2 = side_guesses(g2, tc2);
    s1.into_iter().flat_map(move |a| {
        let mut pairs = Vec::new();
        for b in s2.iter().filter(|b| b.star_count() == a.star_count()) {
            for pi in permutations(a.star_count()) {
                if pi_consistent(&a, b, &pi) {
                    pairs.push(GuessPair {
                        side1: a.clone(),
                        side2: b.clone(),
                        pi,
                    });
                }
            }
        }
        pairs
    })
}

fn pi_consistent(a: &SideGuess, b: &SideGuess, pi: &[usize]) -> bool {
    let (sa, sb) = (a.type2_sizes(), b.type2_sizes());
    pi.iter().enumerate().all(|(i, &j)| {
        if i >= a.p() && j >= b.p() {
            sa[i - a.p()] == sb[j - b.p()]
        } else {
            true
        }
    })
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..m).collect();
    fn rec(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for i in k..cur.len() {
            cur.swap(k, i);
            rec(k + 1, cur, out);
            cur.swap(k, i);
        }
    }
    rec(0, &mut cur, &mut out);
    out
}

/// Variable indices of a built model.
#[derive(Clone, Debug)]
pub struct VcModel {
    pub model: BipModel,
    pub alpha: Vec<usize>,
    pub gamma: Vec<usize>,
    pub x: Vec<BTreeMap<Vec<usize>, usize>>,
    pub y: Vec<BTreeMap<Vec<usize>, usize>>,
}

/// The integer program of one guess pair.
///
/// Constraints: per class the type-I leaves taken stay within the class's
/// non-centre vertices; a type-I star takes no leaves from classes not
/// adjacent to its centre; each type-I size is its cover count plus its
/// class leaves and is at least 2; matched stars have equal sizes.
pub fn build_vc_model(pair: &GuessPair, tc1: &TwinClasses, tc2: &TwinClasses) -> VcModel {
    let mut m = BipModel::new();
    let (s1, s2) = (&pair.side1, &pair.side2);
    let n1 = tc1.cover.len() + tc1.classes.values().map(Vec::len).sum::<usize>();
    let n2 = tc2.cover.len() + tc2.classes.values().map(Vec::len).sum::<usize>();
    let side = |m: &mut BipModel, s: &SideGuess, tc: &TwinClasses, n: usize, tag: &str| {
        let size_vars: Vec<usize> = (0..s.p())
            .map(|i| {
                m.add_var(
                    format!("{}{}", if tag == "x" { "alpha" } else { "gamma" }, i),
                    0,
                    n as i64,
                )
            })
            .collect();
        let mut leaf_vars = Vec::new();
        for i in 0..s.p() {
            let mut row = BTreeMap::new();
            for (x, members) in &tc.classes {
                let v = m.add_var(format!("{tag}{i}{x:?}"), 0, members.len() as i64);
                row.insert(x.clone(), v);
            }
            leaf_vars.push(row);
        }
        for x in tc.classes.keys() {
            let coefs: Vec<_> = leaf_vars.iter().map(|row| (row[x], 1)).collect();
            if !coefs.is_empty() {
                m.add_constraint(coefs, Relation::Le, s.available(tc, x) as i64);
            }
        }
        for (i, row) in leaf_vars.iter().enumerate() {
            let c = s.type1_centres[i];
            for (x, &v) in row {
                if x.binary_search(&c).is_err() {
                    m.add_constraint(vec![(v, 1)], Relation::Eq, 0);
                }
            }
            let mut coefs = vec![(size_vars[i], 1)];
            coefs.extend(row.values().map(|&v| (v, -1)));
            m.add_constraint(coefs, Relation::Eq, s.beta[i] as i64);
            m.add_constraint(vec![(size_vars[i], 1)], Relation::Ge, 2);
        }
        (size_vars, leaf_vars)
    };
    let (alpha, x) = side(&mut m, s1, tc1, n1, "x");
    let (gamma, y) = side(&mut m, s2, tc2, n2, "y");
    let (c1, c2) = (s1.type2_sizes(), s2.type2_sizes());
    for (i, &j) in pair.pi.iter().enumerate() {
        match (i < s1.p(), j < s2.p()) {
            (true, true) => m.add_constraint(vec![(alpha[i], 1), (gamma[j], -1)], Relation::Eq, 0),
            (true, false) => {
                m.add_constraint(vec![(alpha[i], 1)], Relation::Eq, c2[j - s2.p()] as i64)
            }
            (false, true) => {
                m.add_constraint(vec![(gamma[j], 1)], Relation::Eq, c1[i - s1.p()] as i64)
            }
            (false, false) => debug_assert_eq!(c1[i - s1.p()], c2[j - s2.p()]),
        }
    }
    let constant: usize = c1.iter().sum();
    m.set_objective(alpha.iter().map(|&a| (a, 1)).collect(), constant as i64);
    VcModel {
        model: m,
        alpha,
        gamma,
        x,
        y,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VcSolution {
    pub size: usize,
    pub forest: StarForest,
}

fn cover_within(g: &Graph, k: usize, which: &str) -> Result<Vec<usize>> {
    if let Some(c) = min_vertex_cover(g, k) {
        return Ok(c);
    }
    let actual = min_vertex_cover(g, g.vertex_count()).map_or(0, |c| c.len());
    Err(Error::precondition(format!(
        "{which} has minimum vertex cover {actual}, above the bound {k}"
    )))
}

/// Optimum common star forest size when both graphs have a vertex cover of
/// at most `k` vertices.
pub fn solve_vc(g1: &Graph, g2: &Graph, k: usize) -> Result<VcSolution> {
    let c1 = cover_within(g1, k, "G1")?;
    let c2 = cover_within(g2, k, "G2")?;
    let tc1 = twin_classes(g1, &c1)?;
    let tc2 = twin_classes(g2, &c2)?;
    // a common matching is always feasible
    let m = max_matching(g1).len().min(max_matching(g2).len());
    let mut best = VcSolution {
        size: 2 * m,
        forest: StarForest::matching(m),
    };
    let s1 = side_guesses(g1, &tc1);
    let s2 = side_guesses(g2, &tc2);
    let ub2: Vec<usize> = s2.iter().map(|b| b.upper_bound(&tc2)).collect();
    for a in &s1 {
        let ub1 = a.upper_bound(&tc1);
        if ub1 <= best.size {
            continue;
        }
        for (b, &ub) in s2.iter().zip(&ub2) {
            if b.star_count() != a.star_count() || ub.min(ub1) <= best.size {
                continue;
            }
            for pi in permutations(a.star_count()) {
                if !pi_consistent(a, b, &pi) {
                    continue;
                }
                let pair = GuessPair {
                    side1: a.clone(),
                    side2: b.clone(),
                    pi,
                };
                let vm = build_vc_model(&pair, &tc1, &tc2);
                if let BipSolution::Optimal {
                    assignment,
                    objective,
                } = bip::solve(&vm.model)?
                {
                    if objective as usize > best.size {
                        let mut sizes: Vec<usize> =
                            vm.alpha.iter().map(|&v| assignment[v] as usize).collect();
                        sizes.extend(a.type2_sizes());
                        best = VcSolution {
                            size: objective as usize,
                            forest: StarForest::new(sizes),
                        };
                    }
                }
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    #[test]
    fn classes() {
        let tc = twin_classes(&star(3), &[0]).unwrap();
        assert_eq!(tc.classes.len(), 1);
        assert_eq!(tc.class_size(&[0]), 3);
        let tc = twin_classes(&path(4), &[1, 2]).unwrap();
        assert_eq!(tc.classes[&vec![1]], vec![0]);
        assert_eq!(tc.classes[&vec![2]], vec![3]);
        let tc = twin_classes(&cycle(4), &[0, 2]).unwrap();
        assert_eq!(tc.classes[&vec![0, 2]], vec![1, 3]);
        assert!(twin_classes(&path(4), &[1]).is_err());
    }

    #[test]
    fn guesses_are_consistent_and_distinct() {
        for g in [petersen(), cycle(6), star(4), Graph::new(3)] {
            let cover = min_vertex_cover(&g, g.vertex_count()).unwrap();
            let tc = twin_classes(&g, &cover).unwrap();
            let gs = side_guesses(&g, &tc);
            for s in &gs {
                assert_eq!(s.check(&g, &tc), Ok(()));
            }
            for (i, a) in gs.iter().enumerate() {
                assert!(gs[i + 1..].iter().all(|b| b != a));
            }
        }
        let e = Graph::new(3);
        let tc = twin_classes(&e, &[]).unwrap();
        let gs = side_guesses(&e, &tc);
        assert_eq!(gs.len(), 1);
        assert_eq!(gs[0].star_count(), 0);
    }

    #[test]
    fn guess_examples() {
        let k2 = path(2);
        let tc = twin_classes(&k2, &[0]).unwrap();
        let pairs: Vec<_> = enumerate_guesses(&k2, &k2, &tc, &tc).collect();
        assert!(pairs
            .iter()
            .any(|p| p.side1.p() == 1 && p.side1.q() == 0 && p.side2.p() == 1 && p.pi == vec![0]));
        let p3 = path(3);
        let tc = twin_classes(&p3, &[1]).unwrap();
        assert!(enumerate_guesses(&p3, &p3, &tc, &tc)
            .any(|p| p.side1.type1_centres == vec![1] && p.side2.type1_centres == vec![1]));
    }

    fn type1_pair(
        g1: &Graph,
        c1: usize,
        g2: &Graph,
        c2: usize,
    ) -> (GuessPair, TwinClasses, TwinClasses) {
        let tc1 = twin_classes(g1, &[c1]).unwrap();
        let tc2 = twin_classes(g2, &[c2]).unwrap();
        let side = |_: &TwinClasses, c| SideGuess {
            type1_centres: vec![c],
            type2_stars: vec![],
            cover_roles: vec![CoverRole::CentreOf(0)],
            beta: vec![1],
        };
        let pair = GuessPair {
            side1: side(&tc1, c1),
            side2: side(&tc2, c2),
            pi: vec![0],
        };
        (pair, tc1, tc2)
    }

    #[test]
    fn model_examples() {
        let (pair, tc1, tc2) = type1_pair(&path(2), 0, &path(2), 0);
        let vm = build_vc_model(&pair, &tc1, &tc2);
        assert_eq!(bip::solve(&vm.model).unwrap().objective(), Some(2));
        let (pair, tc1, tc2) = type1_pair(&star(3), 0, &star(2), 0);
        let vm = build_vc_model(&pair, &tc1, &tc2);
        assert_eq!(bip::solve(&vm.model).unwrap().objective(), Some(3));
        // a centre whose classes are all elsewhere cannot reach size 2
        let g = path(2);
        let (mut pair, tc1, tc2) = type1_pair(&g, 0, &g, 0);
        pair.side1.type2_stars.push((vec![0], vec![]));
        let tc_far = TwinClasses {
            cover: vec![0],
            classes: BTreeMap::from([(vec![], vec![1])]),
        };
        let _ = tc1;
        let vm = build_vc_model(&pair, &tc_far, &tc2);
        assert_eq!(bip::solve(&vm.model).unwrap(), BipSolution::Infeasible);
    }

    #[test]
    fn solve_examples() {
        assert_eq!(solve_vc(&complete(3), &complete(3), 2).unwrap().size, 3);
        assert_eq!(solve_vc(&path(4), &star(3), 2).unwrap().size, 3);
        assert_eq!(solve_vc(&Graph::new(3), &Graph::new(2), 0).unwrap().size, 0);
        let e = solve_vc(&complete(4), &path(2), 2).unwrap_err();
        assert!(e.to_string().contains("minimum vertex cover 3"));
    }
}
