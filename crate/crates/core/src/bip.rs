//! Bounded integer linear programs and an exact branch-and-bound solver.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub lower: i64,
    pub upper: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coefs: Vec<(usize, i64)>,
    pub relation: Relation,
    pub rhs: i64,
}

/// Maximise a linear objective over integer variables with finite bounds.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BipModel {
    pub variables: Vec<Variable>,
    pub constraints: Vec<Constraint>,
    pub objective: Vec<(usize, i64)>,
    pub objective_constant: i64,
}

impl BipModel {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declares an integer variable in `[lower, upper]` and returns its index.
    pub fn add_var(&mut self, name: impl Into<String>, lower: i64, upper: i64) -> usize {
        assert!(lower <= upper, "empty domain for variable");
        self.variables.push(Variable {
            name: name.into(),
            lower,
            upper,
        });
        self.variables.len() - 1
    }

    pub fn add_constraint(&mut self, coefs: Vec<(usize, i64)>, relation: Relation, rhs: i64) {
        assert!(coefs.iter().all(|&(v, _)| v < self.variables.len()));
        self.constraints.push(Constraint {
            coefs: merge(coefs),
            relation,
            rhs,
        });
    }

    pub fn set_objective(&mut self, coefs: Vec<(usize, i64)>, constant: i64) {
        assert!(coefs.iter().all(|&(v, _)| v < self.variables.len()));
        self.objective = merge(coefs);
        self.objective_constant = constant;
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v.name == name)
    }

    /// Human-readable listing of the model, one item per line.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let term = |(v, c): &(usize, i64)| format!("{c:+} {}", self.variables[*v].name);
        let obj: Vec<_> = self.objective.iter().map(term).collect();
        let _ = writeln!(
            out,
            "maximize {} {:+}",
            obj.join(" "),
            self.objective_constant
        );
        for v in &self.variables {
            let _ = writeln!(out, "var {} in [{}, {}]", v.name, v.lower, v.upper);
        }
        for c in &self.constraints {
            let lhs: Vec<_> = c.coefs.iter().map(term).collect();
            let rel = match c.relation {
                Relation::Le => "<=",
                Relation::Eq => "=",
                Relation::Ge => ">=",
            };
            let _ = writeln!(out, "st {} {rel} {}", lhs.join(" "), c.rhs);
        }
        out
    }

    /// True if `x` respects every bound and constraint.
    pub fn is_feasible(&self, x: &[i64]) -> bool {
        x.len() == self.variables.len()
            && self
                .variables
                .iter()
                .zip(x)
                .all(|(v, &xv)| v.lower <= xv && xv <= v.upper)
            && self.constraints.iter().all(|c| {
                let lhs: i64 = c.coefs.iter().map(|&(v, a)| a * x[v]).sum();
                match c.relation {
                    Relation::Le => lhs <= c.rhs,
                    Relation::Eq => lhs == c.rhs,
                    Relation::Ge => lhs >= c.rhs,
                }
            })
    }

    pub fn objective_value(&self, x: &[i64]) -> i64 {
        self.objective_constant + self.objective.iter().map(|&(v, c)| c * x[v]).sum::<i64>()
    }
}

fn merge(coefs: Vec<(usize, i64)>) -> Vec<(usize, i64)> {
    let mut m = BTreeMap::new();
    for (v, c) in coefs {
        *m.entry(v).or_insert(0) += c;
    }
    m.into_iter().filter(|&(_, c)| c != 0).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BipSolution {
    Optimal {
        assignment: Vec<i64>,
        objective: i64,
    },
    Infeasible,
}

impl BipSolution {
    pub fn objective(&self) -> Option<i64> {
        match self {
            BipSolution::Optimal { objective, .. } => Some(*objective),
            BipSolution::Infeasible => None,
        }
    }
}

/// Anything that can solve a [`BipModel`] exactly.
pub trait BipSolver {
    fn solve(&self, model: &BipModel) -> Result<BipSolution>;
}

/// Depth-first branch and bound with interval propagation.
#[derive(Clone, Debug)]
pub struct BranchAndBound {
    pub node_budget: u64,
}

impl Default for BranchAndBound {
    fn default() -> Self {
        BranchAndBound {
            node_budget: 50_000_000,
        }
    }
}

/// Solves with the default engine.
pub fn solve(model: &BipModel) -> Result<BipSolution> {
    BranchAndBound::default().solve(model)
}

impl BipSolver for BranchAndBound {
    fn solve(&self, model: &BipModel) -> Result<BipSolution> {
        // rows in `<=` form; equalities become two rows
        let mut rows: Vec<(Vec<(usize, i64)>, i64)> = Vec::new();
        for c in &model.constraints {
            let neg: Vec<_> = c.coefs.iter().map(|&(v, a)| (v, -a)).collect();
            match c.relation {
                Relation::Le => rows.push((c.coefs.clone(), c.rhs)),
                Relation::Ge => rows.push((neg, -c.rhs)),
                Relation::Eq => {
                    rows.push((c.coefs.clone(), c.rhs));
                    rows.push((neg, -c.rhs));
                }
            }
        }
        // last row is the incumbent cut: -obj <= -(best + 1)
        let cut: Vec<_> = model.objective.iter().map(|&(v, c)| (v, -c)).collect();
        rows.push((cut, i64::MAX / 4));
        let mut watch = vec![Vec::new(); model.variables.len()];
        for (r, (coefs, _)) in rows.iter().enumerate() {
            for &(v, _) in coefs {
                watch[v].push(r);
            }
        }
        let mut obj_coef = vec![0i64; model.variables.len()];
        for &(v, c) in &model.objective {
            obj_coef[v] = c;
        }
        let mut search = Search {
            rows,
            watch,
            obj_coef,
            nodes: 0,
            budget: self.node_budget,
            best: None,
        };
        let lo: Vec<i64> = model.variables.iter().map(|v| v.lower).collect();
        let hi: Vec<i64> = model.variables.iter().map(|v| v.upper).collect();
        search.dfs(lo, hi)?;
        Ok(match search.best {
            Some((obj, x)) => BipSolution::Optimal {
                objective: obj + model.objective_constant,
                assignment: x,
            },
            None => BipSolution::Infeasible,
        })
    }
}

struct Search {
    rows: Vec<(Vec<(usize, i64)>, i64)>,
    watch: Vec<Vec<usize>>,
    obj_coef: Vec<i64>,
    nodes: u64,
    budget: u64,
    best: Option<(i64, Vec<i64>)>,
}

fn div_floor(a: i64, b: i64) -> i64 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn div_ceil(a: i64, b: i64) -> i64 {
    -div_floor(-a, b)
}

impl Search {
    /// Tightens bounds to a fixpoint; false if some row cannot be satisfied.
    fn propagate(&self, lo: &mut [i64], hi: &mut [i64]) -> bool {
        let mut pending: Vec<usize> = (0..self.rows.len()).collect();
        let mut queued = vec![true; self.rows.len()];
        while let Some(r) = pending.pop() {
            queued[r] = false;
            let (coefs, rhs) = &self.rows[r];
            let min_act: i64 = coefs
                .iter()
                .map(|&(v, a)| if a > 0 { a * lo[v] } else { a * hi[v] })
                .sum();
            if min_act > *rhs {
                return false;
            }
            for &(v, a) in coefs {
                let own = if a > 0 { a * lo[v] } else { a * hi[v] };
                let slack = rhs - (min_act - own);
                let changed = if a > 0 {
                    let nb = div_floor(slack, a);
                    if nb < hi[v] {
                        hi[v] = nb;
                        true
                    } else {
                        false
                    }
                } else {
                    let nb = div_ceil(slack, a);
                    if nb > lo[v] {
                        lo[v] = nb;
                        true
                    } else {
                        false
                    }
                };
                if changed {
                    if lo[v] > hi[v] {
                        return false;
                    }
                    for &r2 in &self.watch[v] {
                        if !queued[r2] {
                            queued[r2] = true;
                            pending.push(r2);
                        }
                    }
                }
            }
        }
        true
    }

    fn dfs(&mut self, mut lo: Vec<i64>, mut hi: Vec<i64>) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::resource(format!(
                "integer program exceeded {} search nodes",
                self.budget
            )));
        }
        if let Some((b, _)) = &self.best {
            let last = self.rows.len() - 1;
            self.rows[last].1 = -(b + 1);
        }
        if !self.propagate(&mut lo, &mut hi) {
            return Ok(());
        }
        let pick = (0..lo.len())
            .filter(|&v| lo[v] < hi[v])
            .min_by_key(|&v| (hi[v] - lo[v], v));
        let Some(v) = pick else {
            let obj: i64 = self.obj_coef.iter().zip(&lo).map(|(c, x)| c * x).sum();
            if self.best.as_ref().map_or(true, |(b, _)| obj > *b) {
                self.best = Some((obj, lo));
            }
            return Ok(());
        };
        let values: Vec<i64> = if self.obj_coef[v] > 0 {
            (lo[v]..=hi[v]).rev().collect()
        } else {
            (lo[v]..=hi[v]).collect()
        };
        for x in values {
            let mut l2 = lo.clone();
            let mut h2 = hi.clone();
            l2[v] = x;
            h2[v] = x;
            self.dfs(l2, h2)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let mut m = BipModel::new();
        let x = m.add_var("x", 0, 10);
        m.add_constraint(vec![(x, 1)], Relation::Le, 3);
        m.set_objective(vec![(x, 1)], 0);
        assert_eq!(
            solve(&m).unwrap(),
            BipSolution::Optimal {
                assignment: vec![3],
                objective: 3
            }
        );

        let mut m = BipModel::new();
        let x = m.add_var("x", 0, 2);
        let y = m.add_var("y", 0, 2);
        m.add_constraint(vec![(x, 1), (y, 1)], Relation::Eq, 5);
        m.set_objective(vec![(x, 1), (y, 1)], 0);
        assert_eq!(solve(&m).unwrap(), BipSolution::Infeasible);

        let mut m = BipModel::new();
        let a = m.add_var("a", 0, 3);
        let b = m.add_var("b", 0, 3);
        m.add_constraint(vec![(a, 1), (b, 1)], Relation::Le, 4);
        m.set_objective(vec![(a, 2), (b, 1)], 0);
        assert_eq!(
            solve(&m).unwrap(),
            BipSolution::Optimal {
                assignment: vec![3, 1],
                objective: 7
            }
        );
    }

    #[test]
    fn budget_is_a_refusal() {
        let mut m = BipModel::new();
        let vs: Vec<_> = (0..12).map(|i| m.add_var(format!("x{i}"), 0, 1)).collect();
        // parity constraint with no feasible point forces full enumeration
        m.add_constraint(vs.iter().map(|&v| (v, 2)).collect(), Relation::Eq, 7);
        m.set_objective(vs.iter().map(|&v| (v, 1)).collect(), 0);
        let e = BranchAndBound { node_budget: 10 }.solve(&m).unwrap_err();
        assert!(matches!(e, Error::Resource(_)));
    }

    #[test]
    fn dump_lists_everything() {
        let mut m = BipModel::new();
        let x = m.add_var("x", 0, 2);
        m.add_constraint(vec![(x, 1)], Relation::Ge, 1);
        m.set_objective(vec![(x, 3)], 4);
        let d = m.dump();
        assert!(d.contains("maximize +3 x +4"));
        assert!(d.contains("var x in [0, 2]"));
        assert!(d.contains("st +1 x >= 1"));
    }

    fn grid_optimum(m: &BipModel) -> Option<i64> {
        let n = m.variables.len();
        let mut x: Vec<i64> = m.variables.iter().map(|v| v.lower).collect();
        let mut best = None;
        loop {
            if m.is_feasible(&x) {
                let o = m.objective_value(&x);
                best = Some(best.map_or(o, |b: i64| b.max(o)));
            }
            let mut i = 0;
            loop {
                if i == n {
                    return best;
                }
                if x[i] < m.variables[i].upper {
                    x[i] += 1;
                    break;
                }
                x[i] = m.variables[i].lower;
                i += 1;
            }
        }
    }

    fn arb_model() -> impl Strategy<Value = BipModel> {
        (1usize..=6).prop_flat_map(|n| {
            (
                proptest::collection::vec((0i64..=3, 0i64..=5), n),
                proptest::collection::vec(
                    (
                        proptest::collection::vec(-3i64..=3, n),
                        0usize..3,
                        -5i64..=15,
                    ),
                    0..4,
                ),
                proptest::collection::vec(-3i64..=3, n),
            )
                .prop_map(|(bounds, cons, obj)| {
                    let mut m = BipModel::new();
                    for (i, (lo, w)) in bounds.into_iter().enumerate() {
                        m.add_var(format!("x{i}"), lo, lo + w);
                    }
                    for (coefs, rel, rhs) in cons {
                        let rel = [Relation::Le, Relation::Eq, Relation::Ge][rel];
                        m.add_constraint(coefs.into_iter().enumerate().collect(), rel, rhs);
                    }
                    m.set_objective(obj.into_iter().enumerate().collect(), 0);
                    m
                })
        })
    }

    proptest! {
        #[test]
        fn matches_grid_enumeration(m in arb_model()) {
            let got = solve(&m).unwrap();
            prop_assert_eq!(got.objective(), grid_optimum(&m));
            if let BipSolution::Optimal { assignment, .. } = &got {
                prop_assert!(m.is_feasible(assignment));
            }
        }

        #[test]
        fn scaling_keeps_optimum(m in arb_model(), s in 1i64..=4) {
            let mut scaled = m.clone();
            for c in &mut scaled.constraints {
                c.coefs.iter_mut().for_each(|t| t.1 *= s);
                c.rhs *= s;
            }
            scaled.objective.iter_mut().for_each(|t| t.1 *= s);
            let a = solve(&m).unwrap().objective();
            let b = solve(&scaled).unwrap().objective();
            prop_assert_eq!(a.map(|x| x * s), b);
        }
    }
}
