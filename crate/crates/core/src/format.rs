//! Plain-text edge lists.
//!
//! ```text
//! # comment lines start with '#'; blank lines are ignored
//! g <n>            general graph on vertices 0..n
//! <u> <v>          one edge per line, 0-based
//!
//! bip <a> <b>      bipartite graph with sides A = 0..a and B = 0..b
//! <i> <j>          one edge per line: A-index i, B-index j
//! ```
//!
//! Tokens are separated by ASCII whitespace. Writers emit exactly one space
//! between tokens, `\n` line endings and edges in lexicographic order.

use std::fmt::Write as _;

use crate::error::{input, Result};
use crate::graph::{BipartiteGraph, Graph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EdgeList {
    General(Graph),
    Bipartite(BipartiteGraph),
}

impl EdgeList {
    /// View as a general graph (bipartite B-vertices are shifted past A).
    pub fn to_graph(&self) -> Graph {
        match self {
            EdgeList::General(g) => g.clone(),
            EdgeList::Bipartite(b) => b.to_graph(),
        }
    }

    /// View as a bipartite graph. General graphs must be 2-colourable; the
    /// colour class of vertex 0's component becomes A.
    pub fn to_bipartite(&self) -> Result<BipartiteGraph> {
        match self {
            EdgeList::Bipartite(b) => Ok(b.clone()),
            EdgeList::General(g) => match g.bipartition() {
                Some(colour) => {
                    let in_a: Vec<bool> = colour.iter().map(|c| !c).collect();
                    Ok(BipartiteGraph::from_partition(g, &in_a).0)
                }
                None => input("graph is not bipartite"),
            },
        }
    }
}

fn parse_usize(tok: &str, line: usize) -> Result<usize> {
    tok.parse()
        .or_else(|_| input(format!("line {line}: expected a nonnegative integer, got `{tok}`")))
}

pub fn parse(text: &str) -> Result<EdgeList> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let Some((hline, header)) = lines.next() else {
        return input("empty edge list: missing `g <n>` or `bip <a> <b>` header");
    };
    let head: Vec<&str> = header.split_ascii_whitespace().collect();
    let mut pairs = Vec::new();
    for (ln, l) in lines {
        let toks: Vec<&str> = l.split_ascii_whitespace().collect();
        if toks.len() != 2 {
            return input(format!("line {ln}: expected two indices, got `{l}`"));
        }
        pairs.push((parse_usize(toks[0], ln)?, parse_usize(toks[1], ln)?));
    }
    match head.as_slice() {
        ["g", n] => Ok(EdgeList::General(Graph::new(parse_usize(n, hline)?, &pairs)?)),
        ["bip", a, b] => Ok(EdgeList::Bipartite(BipartiteGraph::new(
            parse_usize(a, hline)?,
            parse_usize(b, hline)?,
            &pairs,
        )?)),
        _ => input(format!(
            "line {hline}: expected `g <n>` or `bip <a> <b>`, got `{header}`"
        )),
    }
}

pub fn write_graph(g: &Graph) -> String {
    let mut s = format!("g {}\n", g.vertex_count());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

pub fn write_bipartite(g: &BipartiteGraph) -> String {
    let mut s = format!("bip {} {}\n", g.a_count(), g.b_count());
    for (a, b) in g.edges() {
        let _ = writeln!(s, "{a} {b}");
    }
    s
}

pub fn write(list: &EdgeList) -> String {
    match list {
        EdgeList::General(g) => write_graph(g),
        EdgeList::Bipartite(b) => write_bipartite(b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_both_headers() {
        let text = "# K22\nbip 2 2\n0 0\n0 1\n\n1 0\n1 1\n";
        let EdgeList::Bipartite(b) = parse(text).unwrap() else {
            panic!("expected bipartite")
        };
        assert_eq!(b.edge_count(), 4);
        let EdgeList::General(g) = parse("g 3\n0 1\n1 2\n").unwrap() else {
            panic!("expected general")
        };
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn reports_line_numbers() {
        let e = parse("g 3\n0 1\n1 x\n").unwrap_err().to_string();
        assert!(e.contains("line 3"), "{e}");
        assert!(parse("# only comments\n").is_err());
        assert!(parse("graph 3\n").is_err());
        assert!(parse("g 3\n0 1 2\n").is_err());
        assert!(parse("bip 1 1\n0 1\n").is_err());
    }

    #[test]
    fn writer_is_canonical() {
        let g = Graph::new(3, &[(2, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(write_graph(&g), "g 3\n0 1\n1 2\n");
    }

    proptest! {
        #[test]
        fn general_round_trip(n in 1usize..20, raw in prop::collection::vec((0usize..20, 0usize..20), 0..60)) {
            let edges: Vec<_> = raw.into_iter()
                .map(|(u, v)| (u % n, v % n))
                .filter(|(u, v)| u != v)
                .collect();
            let g = Graph::new(n, &edges).unwrap();
            prop_assert_eq!(parse(&write_graph(&g)).unwrap(), EdgeList::General(g));
        }

        #[test]
        fn bipartite_round_trip(a in 0usize..12, b in 1usize..12, raw in prop::collection::vec((0usize..12, 0usize..12), 0..60)) {
            let edges: Vec<_> = if a == 0 { vec![] } else {
                raw.into_iter().map(|(i, j)| (i % a, j % b)).collect()
            };
            let g = BipartiteGraph::new(a, b, &edges).unwrap();
            prop_assert_eq!(parse(&write_bipartite(&g)).unwrap(), EdgeList::Bipartite(g));
        }
    }
}
