use super::decomposition::TreeDecomposition;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Leaf,
    Introduce(usize),
    Forget(usize),
    Join,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceNode {
    pub kind: NodeKind,
    pub bag: Vec<usize>,
    pub children: Vec<usize>,
}

/// A nice tree decomposition. Children always precede their parent in
/// `nodes`, so index order is a bottom-up order; the root is the last node
/// and has an empty bag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceTreeDecomposition {
    pub nodes: Vec<NiceNode>,
}

impl NiceTreeDecomposition {
    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn width(&self) -> usize {
        self.nodes
            .iter()
            .map(|n| n.bag.len())
            .max()
            .unwrap_or(1)
            .saturating_sub(1)
    }

    /// The underlying plain decomposition, for re-verification.
    pub fn as_decomposition(&self) -> TreeDecomposition {
        let mut parent = vec![None; self.nodes.len()];
        for (i, n) in self.nodes.iter().enumerate() {
            for &c in &n.children {
                parent[c] = Some(i);
            }
        }
        TreeDecomposition::new(self.nodes.iter().map(|n| n.bag.clone()).collect(), parent)
    }

    /// Checks the node-kind rules; the error names the offending node.
    pub fn check_kinds(&self) -> Result<(), String> {
        let root = self.root();
        if !self.nodes[root].bag.is_empty() {
            return Err("root bag is not empty".into());
        }
        for (i, n) in self.nodes.iter().enumerate() {
            if n.children.iter().any(|&c| c >= i) {
                return Err(format!("node {i} has a child that does not precede it"));
            }
            let child = |k: usize| &self.nodes[n.children[k]].bag;
            let ok = match n.kind {
                NodeKind::Leaf => n.children.is_empty() && n.bag.is_empty(),
                NodeKind::Introduce(v) => {
                    n.children.len() == 1 && with(child(0), v) == n.bag && !child(0).contains(&v)
                }
                NodeKind::Forget(v) => {
                    n.children.len() == 1 && child(0).contains(&v) && with(&n.bag, v) == *child(0)
                }
                NodeKind::Join => n.children.len() == 2 && *child(0) == n.bag && *child(1) == n.bag,
            };
            if !ok {
                return Err(format!("node {i} violates the rule for {:?}", n.kind));
            }
        }
        Ok(())
    }
}

fn with(bag: &[usize], v: usize) -> Vec<usize> {
    let mut b = bag.to_vec();
    if let Err(p) = b.binary_search(&v) {
        b.insert(p, v);
    }
    b
}

fn without(bag: &[usize], v: usize) -> Vec<usize> {
    bag.iter().copied().filter(|&w| w != v).collect()
}

/// Converts a valid decomposition into a nice one of the same width.
pub fn to_nice(td: &TreeDecomposition) -> NiceTreeDecomposition {
    let mut nodes: Vec<NiceNode> = Vec::new();
    let children = td.children();
    let root = td.root().expect("decomposition has a root");
    // iterative post-order
    let mut order = Vec::with_capacity(td.node_count());
    let mut stack = vec![root];
    while let Some(t) = stack.pop() {
        order.push(t);
        stack.extend(children[t].iter().copied());
    }
    order.reverse();
    // built[t] = index of the nice node whose bag equals td.bags[t]
    let mut built = vec![usize::MAX; td.node_count()];
    for &t in &order {
        let bag = &td.bags[t];
        let mut tops: Vec<usize> = Vec::new();
        for &c in &children[t] {
            let mut cur = built[c];
            let cbag = td.bags[c].clone();
            for &v in cbag.iter().filter(|v| !bag.contains(v)) {
                cur = {
                    let b = without(&nodes[cur].bag, v);
                    push(&mut nodes, NodeKind::Forget(v), b, vec![cur])
                };
            }
            for &v in bag.iter().filter(|v| !cbag.contains(v)) {
                cur = {
                    let b = with(&nodes[cur].bag, v);
                    push(&mut nodes, NodeKind::Introduce(v), b, vec![cur])
                };
            }
            tops.push(cur);
        }
        if tops.is_empty() {
            let mut cur = push(&mut nodes, NodeKind::Leaf, Vec::new(), vec![]);
            for &v in bag {
                cur = {
                    let b = with(&nodes[cur].bag, v);
                    push(&mut nodes, NodeKind::Introduce(v), b, vec![cur])
                };
            }
            tops.push(cur);
        }
        let mut cur = tops[0];
        for &other in &tops[1..] {
            cur = push(&mut nodes, NodeKind::Join, bag.clone(), vec![cur, other]);
        }
        built[t] = cur;
    }
    let mut cur = built[root];
    for &v in &td.bags[root] {
        cur = {
            let b = without(&nodes[cur].bag, v);
            push(&mut nodes, NodeKind::Forget(v), b, vec![cur])
        };
    }
    debug_assert_eq!(cur, nodes.len() - 1);
    NiceTreeDecomposition { nodes }
}

fn push(nodes: &mut Vec<NiceNode>, kind: NodeKind, bag: Vec<usize>, children: Vec<usize>) -> usize {
    nodes.push(NiceNode {
        kind,
        bag,
        children,
    });
    nodes.len() - 1
}

#[cfg(test)]
mod tests {
    use super::super::decomposition::{heuristic_decomposition, verify_decomposition};
    use super::*;
    use crate::graph::named::*;
    use crate::graph::Graph;

    #[test]
    fn single_bag_edge() {
        let td = TreeDecomposition::new(vec![vec![0, 1]], vec![None]);
        let nice = to_nice(&td);
        let kinds: Vec<_> = nice.nodes.iter().map(|n| n.kind).collect();
        assert_eq!(
            kinds,
            vec![
                NodeKind::Leaf,
                NodeKind::Introduce(0),
                NodeKind::Introduce(1),
                NodeKind::Forget(0),
                NodeKind::Forget(1)
            ]
        );
        assert!(nice.check_kinds().is_ok());
    }

    #[test]
    fn empty_graph() {
        let nice = to_nice(&heuristic_decomposition(&Graph::new(0)));
        assert_eq!(nice.nodes.len(), 1);
        assert_eq!(nice.nodes[0].kind, NodeKind::Leaf);
    }

    #[test]
    fn preserves_width_and_validity() {
        for g in [
            petersen(),
            grid(3, 4),
            complete(5),
            Graph::from_edges(6, &[(0, 1), (3, 4)]),
        ] {
            let td = heuristic_decomposition(&g);
            let nice = to_nice(&td);
            assert_eq!(nice.width(), td.width());
            assert!(nice.check_kinds().is_ok());
            assert!(verify_decomposition(&g, &nice.as_decomposition()).is_ok());
        }
    }
}
