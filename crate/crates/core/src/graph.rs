//! Immutable simple graphs and two-sided bipartite graphs.
//!
//! Vertex indices are dense and 0-based. Adjacency is kept as sorted index
//! lists; when the relevant side has at most [`BITSET_LIMIT`] vertices every
//! vertex also gets a bit row so that codegrees reduce to popcounts.

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::{input, Result};
use crate::weighted::WeightedGraph;

/// Largest side size for which bit rows are materialized.
pub const BITSET_LIMIT: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    rows: Option<Vec<BitSet>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a simple graph. Duplicate edges (in either orientation) are
    /// merged; self-loops and out-of-range endpoints are rejected.
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); vertex_count];
        for &(u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return input(format!(
                    "edge ({u}, {v}) out of range for {vertex_count} vertices"
                ));
            }
            if u == v {
                return input(format!("edge ({u}, {v}) is a self-loop"));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        Ok(Self::from_adjacency(adj))
    }

    pub fn empty(vertex_count: usize) -> Self {
        Self::from_adjacency(vec![Vec::new(); vertex_count])
    }

    pub fn complete(vertex_count: usize) -> Self {
        let adj = (0..vertex_count)
            .map(|u| (0..vertex_count).filter(|&v| v != u).collect())
            .collect();
        Self::from_adjacency(adj)
    }

    /// Caller guarantees symmetry and no loops; lists are sorted and deduplicated here.
    pub(crate) fn from_adjacency(mut adj: Vec<Vec<usize>>) -> Self {
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        let edge_count = adj.iter().map(Vec::len).sum::<usize>() / 2;
        let n = adj.len();
        let rows = (n <= BITSET_LIMIT).then(|| {
            adj.iter()
                .map(|l| BitSet::from_indices(n, l.iter().copied()))
                .collect()
        });
        Graph {
            adj,
            rows,
            edge_count,
        }
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn row(&self, v: usize) -> Option<&BitSet> {
        self.rows.as_ref().map(|r| &r[v])
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        match &self.rows {
            Some(rows) => rows[u].contains(v),
            None => self.adj[u].binary_search(&v).is_ok(),
        }
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        self.edges().collect()
    }

    pub fn common_neighbour_count(&self, u: usize, v: usize) -> usize {
        match &self.rows {
            Some(rows) => rows[u].intersection_count(&rows[v]),
            None => sorted_intersection_count(&self.adj[u], &self.adj[v]),
        }
    }

    /// Subgraph induced on `vertices` (in the given order). The returned map
    /// sends each new index to its parent index.
    pub fn induced(&self, vertices: &[usize]) -> (Graph, Vec<usize>) {
        let mut position = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            position[v] = i;
        }
        let adj = vertices
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter_map(|&w| (position[w] != usize::MAX).then_some(position[w]))
                    .collect()
            })
            .collect();
        (Graph::from_adjacency(adj), vertices.to_vec())
    }

    /// Spanning subgraph keeping only the listed edges (which must exist).
    pub fn spanning_subgraph(&self, edges: &[(usize, usize)]) -> Result<Graph> {
        for &(u, v) in edges {
            if u >= self.vertex_count() || v >= self.vertex_count() || !self.has_edge(u, v) {
                return input(format!("({u}, {v}) is not an edge of the parent graph"));
            }
        }
        Graph::new(self.vertex_count(), edges)
    }

    /// Removes the listed edges; absent edges are ignored.
    pub fn without_edges(&self, removed: &[(usize, usize)]) -> Graph {
        let mut adj = self.adj.clone();
        for &(u, v) in removed {
            adj[u].retain(|&w| w != v);
            adj[v].retain(|&w| w != u);
        }
        Graph::from_adjacency(adj)
    }

    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.vertex_count();
        let mut adj = self.adj.clone();
        adj.extend(
            other
                .adj
                .iter()
                .map(|l| l.iter().map(|&v| v + off).collect()),
        );
        Graph::from_adjacency(adj)
    }

    /// Proper 2-colouring (BFS, smallest index first), or `None` if an odd
    /// cycle exists. `false` marks the side of each component's first vertex.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let n = self.vertex_count();
        let mut colour: Vec<Option<bool>> = vec![None; n];
        let mut queue = std::collections::VecDeque::new();
        for s in 0..n {
            if colour[s].is_some() {
                continue;
            }
            colour[s] = Some(false);
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                let cu = colour[u].unwrap();
                for &v in &self.adj[u] {
                    match colour[v] {
                        None => {
                            colour[v] = Some(!cu);
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(colour.into_iter().map(Option::unwrap).collect())
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        d.sort_unstable();
        d
    }
}

pub(crate) fn sorted_intersection_count(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

pub(crate) fn sorted_intersection(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// One of the two colour classes of a [`BipartiteGraph`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

/// A bipartite graph on `A ∪ B`. Indices on each side are independent and
/// 0-based; every edge joins an A-vertex to a B-vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    adj_a: Vec<Vec<usize>>,
    adj_b: Vec<Vec<usize>>,
    rows_a: Option<Vec<BitSet>>,
    rows_b: Option<Vec<BitSet>>,
    edge_count: usize,
}

/// Index maps from a derived bipartite graph back to its parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteMap {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

impl BipartiteGraph {
    /// Builds from `(a_index, b_index)` pairs; duplicates are merged.
    pub fn new(a_count: usize, b_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj_a = vec![Vec::new(); a_count];
        let mut adj_b = vec![Vec::new(); b_count];
        for &(a, b) in edges {
            if a >= a_count || b >= b_count {
                return input(format!(
                    "edge ({a}, {b}) out of range for sides {a_count} and {b_count}"
                ));
            }
            adj_a[a].push(b);
            adj_b[b].push(a);
        }
        Ok(Self::from_lists(adj_a, adj_b))
    }

    pub fn complete(a_count: usize, b_count: usize) -> Self {
        let adj_a = vec![(0..b_count).collect(); a_count];
        let adj_b = vec![(0..a_count).collect(); b_count];
        Self::from_lists(adj_a, adj_b)
    }

    fn from_lists(mut adj_a: Vec<Vec<usize>>, mut adj_b: Vec<Vec<usize>>) -> Self {
        for l in adj_a.iter_mut().chain(adj_b.iter_mut()) {
            l.sort_unstable();
            l.dedup();
        }
        let edge_count = adj_a.iter().map(Vec::len).sum();
        let (na, nb) = (adj_a.len(), adj_b.len());
        let rows_a = (nb <= BITSET_LIMIT).then(|| {
            adj_a
                .iter()
                .map(|l| BitSet::from_indices(nb, l.iter().copied()))
                .collect()
        });
        let rows_b = (na <= BITSET_LIMIT).then(|| {
            adj_b
                .iter()
                .map(|l| BitSet::from_indices(na, l.iter().copied()))
                .collect()
        });
        BipartiteGraph {
            adj_a,
            adj_b,
            rows_a,
            rows_b,
            edge_count,
        }
    }

    /// Splits a graph along a 2-colouring; `in_a[v]` selects the side. Edges
    /// inside a side are dropped. Returns the bipartite graph and the parent
    /// index of every A- and B-vertex.
    pub fn from_partition(g: &Graph, in_a: &[bool]) -> (BipartiteGraph, BipartiteMap) {
        let mut pos = vec![0; g.vertex_count()];
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for v in 0..g.vertex_count() {
            if in_a[v] {
                pos[v] = a.len();
                a.push(v);
            } else {
                pos[v] = b.len();
                b.push(v);
            }
        }
        let edges: Vec<_> = g
            .edges()
            .filter(|&(u, v)| in_a[u] != in_a[v])
            .map(|(u, v)| if in_a[u] { (pos[u], pos[v]) } else { (pos[v], pos[u]) })
            .collect();
        let bg = BipartiteGraph::new(a.len(), b.len(), &edges).expect("indices in range");
        (bg, BipartiteMap { a, b })
    }

    #[inline]
    pub fn a_count(&self) -> usize {
        self.adj_a.len()
    }

    #[inline]
    pub fn b_count(&self) -> usize {
        self.adj_b.len()
    }

    #[inline]
    pub fn side_len(&self, side: Side) -> usize {
        match side {
            Side::A => self.a_count(),
            Side::B => self.b_count(),
        }
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// `e(G) / (|A||B|)`, zero when a side is empty.
    pub fn density(&self) -> f64 {
        let cells = self.a_count() * self.b_count();
        if cells == 0 {
            0.0
        } else {
            self.edge_count as f64 / cells as f64
        }
    }

    #[inline]
    pub fn neighbours(&self, side: Side, v: usize) -> &[usize] {
        match side {
            Side::A => &self.adj_a[v],
            Side::B => &self.adj_b[v],
        }
    }

    #[inline]
    pub fn degree(&self, side: Side, v: usize) -> usize {
        self.neighbours(side, v).len()
    }

    /// Bit row of `v` over the opposite side, when materialized.
    #[inline]
    pub fn row(&self, side: Side, v: usize) -> Option<&BitSet> {
        match side {
            Side::A => self.rows_a.as_ref().map(|r| &r[v]),
            Side::B => self.rows_b.as_ref().map(|r| &r[v]),
        }
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        match &self.rows_a {
            Some(rows) => rows[a].contains(b),
            None => self.adj_a[a].binary_search(&b).is_ok(),
        }
    }

    /// Codegree `|N(u) ∩ N(v)|` of two distinct vertices on `side`.
    pub fn codegree(&self, side: Side, u: usize, v: usize) -> Result<usize> {
        let n = self.side_len(side);
        if u >= n || v >= n {
            return input(format!("vertex out of range on side {side:?}"));
        }
        if u == v {
            return input(format!(
                "codegree of {u} with itself is undefined; ask for its degree instead"
            ));
        }
        Ok(self.pair_codegree(side, u, v))
    }

    /// `|N(u) ∩ N(v)|`, which is `deg(u)` on the diagonal. This is the `d*`
    /// convention used by every ordered (homomorphism) sum.
    #[inline]
    pub fn pair_codegree(&self, side: Side, u: usize, v: usize) -> usize {
        match (self.row(side, u), self.row(side, v)) {
            (Some(ru), Some(rv)) => ru.intersection_count(rv),
            _ => sorted_intersection_count(self.neighbours(side, u), self.neighbours(side, v)),
        }
    }

    /// Common neighbourhood (on the opposite side) of a set of vertices on `side`.
    /// The empty set has the whole opposite side as common neighbourhood.
    pub fn common_neighbours(&self, side: Side, vertices: &[usize]) -> Vec<usize> {
        match vertices.split_first() {
            None => (0..self.side_len(side.other())).collect(),
            Some((&first, rest)) => {
                let mut acc = self.neighbours(side, first).to_vec();
                for &v in rest {
                    acc = sorted_intersection(&acc, self.neighbours(side, v));
                }
                acc
            }
        }
    }

    /// `N(X)`: every vertex on the opposite side adjacent to some member of `vertices`.
    pub fn neighbourhood_union(&self, side: Side, vertices: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.side_len(side.other())];
        for &v in vertices {
            for &w in self.neighbours(side, v) {
                seen[w] = true;
            }
        }
        seen.iter()
            .enumerate()
            .filter_map(|(i, &s)| s.then_some(i))
            .collect()
    }

    /// The same graph with the roles of A and B exchanged.
    pub fn swap_sides(&self) -> BipartiteGraph {
        BipartiteGraph::from_lists(self.adj_b.clone(), self.adj_a.clone())
    }

    /// Edges as `(a, b)` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj_a
            .iter()
            .enumerate()
            .flat_map(|(a, l)| l.iter().map(move |&b| (a, b)))
    }

    /// As a plain graph: A-vertex `i` becomes `i`, B-vertex `j` becomes `|A| + j`.
    pub fn to_graph(&self) -> Graph {
        let na = self.a_count();
        let mut adj: Vec<Vec<usize>> = self
            .adj_a
            .iter()
            .map(|l| l.iter().map(|&b| b + na).collect())
            .collect();
        adj.extend(self.adj_b.iter().cloned());
        Graph::from_adjacency(adj)
    }

    /// Index of a side-local vertex in [`BipartiteGraph::to_graph`].
    #[inline]
    pub fn global_index(&self, side: Side, v: usize) -> usize {
        match side {
            Side::A => v,
            Side::B => self.a_count() + v,
        }
    }

    /// Subgraph induced on `a_subset ∪ b_subset` (each listed in the desired order).
    pub fn induced(&self, a_subset: &[usize], b_subset: &[usize]) -> (BipartiteGraph, BipartiteMap) {
        let mut bpos = vec![usize::MAX; self.b_count()];
        for (i, &b) in b_subset.iter().enumerate() {
            bpos[b] = i;
        }
        let mut edges = Vec::new();
        for (i, &a) in a_subset.iter().enumerate() {
            for &b in &self.adj_a[a] {
                if bpos[b] != usize::MAX {
                    edges.push((i, bpos[b]));
                }
            }
        }
        let g = BipartiteGraph::new(a_subset.len(), b_subset.len(), &edges)
            .expect("induced indices in range");
        (
            g,
            BipartiteMap {
                a: a_subset.to_vec(),
                b: b_subset.to_vec(),
            },
        )
    }

    /// `G[A', B]`: keep the listed A-vertices and all of B.
    pub fn restrict_a(&self, a_subset: &[usize]) -> BipartiteGraph {
        let all_b: Vec<usize> = (0..self.b_count()).collect();
        self.induced(a_subset, &all_b).0
    }

    /// The weighted graph on `side` with `W(u, v)` equal to the codegree.
    pub fn neighbourhood_graph(&self, side: Side) -> WeightedGraph {
        self.neighbourhood_graph_on(side, &(0..self.side_len(side)).collect::<Vec<_>>())
    }

    /// Neighbourhood graph restricted to `vertices` (re-indexed in the given order).
    pub fn neighbourhood_graph_on(&self, side: Side, vertices: &[usize]) -> WeightedGraph {
        let mut triples = Vec::new();
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                let w = self.pair_codegree(side, u, v) as u64;
                if w > 0 {
                    triples.push((i, j, w));
                }
            }
        }
        WeightedGraph::new(vertices.len(), &triples).expect("distinct pairs")
    }

    pub fn min_degree(&self, side: Side) -> usize {
        (0..self.side_len(side))
            .map(|v| self.degree(side, v))
            .min()
            .unwrap_or(0)
    }

    pub fn max_degree(&self, side: Side) -> usize {
        (0..self.side_len(side))
            .map(|v| self.degree(side, v))
            .max()
            .unwrap_or(0)
    }
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Graph", 2)?;
        st.serialize_field("vertex_count", &self.vertex_count())?;
        st.serialize_field("edges", &self.edge_list())?;
        st.end()
    }
}

impl Serialize for BipartiteGraph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("BipartiteGraph", 3)?;
        st.serialize_field("a_count", &self.a_count())?;
        st.serialize_field("b_count", &self.b_count())?;
        st.serialize_field("edges", &self.edges().collect::<Vec<_>>())?;
        st.end()
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn c6() -> BipartiteGraph {
        BipartiteGraph::new(3, 3, &[(0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn build_examples() {
        let k22 = BipartiteGraph::new(2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1), (1, 1)]).unwrap();
        assert_eq!(k22.edge_count(), 4);
        for v in 0..2 {
            assert_eq!(k22.degree(Side::A, v), 2);
            assert_eq!(k22.degree(Side::B, v), 2);
        }
        let c6 = c6();
        assert!((0..3).all(|v| c6.degree(Side::A, v) == 2 && c6.degree(Side::B, v) == 2));
        let single = BipartiteGraph::new(1, 0, &[]).unwrap();
        assert_eq!((single.a_count(), single.b_count(), single.edge_count()), (1, 0, 0));
    }

    #[test]
    fn out_of_range_edge_is_named() {
        let err = BipartiteGraph::new(2, 2, &[(0, 0), (2, 1)]).unwrap_err();
        assert!(err.to_string().contains("(2, 1)"));
        assert!(Graph::new(3, &[(0, 3)]).is_err());
        assert!(Graph::new(3, &[(1, 1)]).is_err());
    }

    #[test]
    fn codegree_examples() {
        let k22 = BipartiteGraph::complete(2, 2);
        assert_eq!(k22.codegree(Side::A, 0, 1).unwrap(), 2);
        assert_eq!(c6().codegree(Side::A, 0, 1).unwrap(), 1);
        let iso = BipartiteGraph::new(2, 3, &[]).unwrap();
        assert_eq!(iso.codegree(Side::A, 0, 1).unwrap(), 0);
        assert!(k22.codegree(Side::A, 1, 1).is_err());
    }

    #[test]
    fn neighbourhood_graph_examples() {
        let w = BipartiteGraph::complete(3, 3).neighbourhood_graph(Side::A);
        assert_eq!(w.pairs().collect::<Vec<_>>(), vec![(0, 1, 3), (0, 2, 3), (1, 2, 3)]);
        let w = c6().neighbourhood_graph(Side::A);
        assert_eq!(w.pairs().collect::<Vec<_>>(), vec![(0, 1, 1), (0, 2, 1), (1, 2, 1)]);
        let w = BipartiteGraph::new(4, 4, &[]).unwrap().neighbourhood_graph(Side::B);
        assert_eq!(w.total_weight(), 0);
    }

    #[test]
    fn to_graph_and_back() {
        let g = c6().to_graph();
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 6);
        assert!(g.has_edge(0, 3) && g.has_edge(0, 4));
        let colouring = g.bipartition().unwrap();
        let in_a: Vec<bool> = colouring.iter().map(|c| !c).collect();
        let (bg, map) = BipartiteGraph::from_partition(&g, &in_a);
        assert_eq!(bg.edge_count(), 6);
        assert_eq!(map.a, vec![0, 1, 2]);
    }

    #[test]
    fn induced_keeps_parent_map() {
        let g = Graph::complete(5);
        let (h, map) = g.induced(&[4, 1, 2]);
        assert_eq!(h.edge_count(), 3);
        assert_eq!(map, vec![4, 1, 2]);
        let t = Graph::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(t.bipartition().is_none());
    }
}
