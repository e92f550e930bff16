//! Problem instances `(G1, G2, h)` and their text format.

use crate::error::ParseError;
use crate::graph::{parse_graph_lines, Graph};

/// Decide whether a star forest on at least `h` vertices is a subgraph of
/// both graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub g1: Graph,
    pub g2: Graph,
    pub h: usize,
}

impl Instance {
    pub fn new(g1: Graph, g2: Graph, h: usize) -> Self {
        Instance { g1, g2, h }
    }

    /// An `h` above either vertex count makes the instance trivially no.
    pub fn trivially_no(&self) -> bool {
        self.h > self.g1.vertex_count().min(self.g2.vertex_count())
    }

    pub fn to_text(&self) -> String {
        format!(
            "{}\n{}---\n{}",
            self.h,
            self.g1.to_edge_list(),
            self.g2.to_edge_list()
        )
    }
}

/// Parses `h`, a graph block, a `---` line, and a second graph block.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (lno, hline) = lines
        .next()
        .ok_or(ParseError::new(0, "empty instance file"))?;
    let h = hline
        .parse::<usize>()
        .map_err(|_| ParseError::new(lno, format!("expected target h, found `{hline}`")))?;
    let g1 = parse_graph_lines(&mut lines)?;
    match lines.next() {
        Some((_, "---")) => {}
        Some((lno, other)) => {
            return Err(ParseError::new(
                lno,
                format!("expected `---` separator, found `{other}`"),
            ))
        }
        None => {
            return Err(ParseError::new(
                lno,
                "missing `---` separator and second graph",
            ))
        }
    }
    let g2 = parse_graph_lines(&mut lines)?;
    if let Some((lno, extra)) = lines.next() {
        return Err(ParseError::new(
            lno,
            format!("unexpected trailing line `{extra}`"),
        ));
    }
    Ok(Instance { g1, g2, h })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    #[test]
    fn roundtrip() {
        let inst = Instance::new(path(4), star(3), 3);
        let text = inst.to_text();
        assert_eq!(parse_instance(&text).unwrap(), inst);
    }

    #[test]
    fn errors_carry_lines() {
        assert_eq!(parse_instance("x").unwrap_err().line, 1);
        let e = parse_instance("2\n2 1\n0 1\n--\n2 0").unwrap_err();
        assert_eq!(e.line, 4);
        let e = parse_instance("2\n2 1\n0 1\n---\n2 1\n0 5").unwrap_err();
        assert_eq!(e.line, 6);
    }

    #[test]
    fn trivially_no() {
        assert!(Instance::new(path(2), path(3), 3).trivially_no());
        assert!(!Instance::new(path(3), path(3), 3).trivially_no());
    }
}
