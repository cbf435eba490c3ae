//! Pattern constructors: k-subdivisions of multigraphs, incidence
//! subdivisions of hypergraphs, and the named families.

use crate::error::{input, Result};
use crate::graph::{BipartiteGraph, Graph, Side};
use crate::hom::Pattern;

/// A loopless multigraph; parallel edges are kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl Multigraph {
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        for &(u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return input(format!("edge ({u}, {v}) out of range for {vertex_count} vertices"));
            }
            if u == v {
                return input(format!("loop at vertex {u}"));
            }
        }
        Ok(Multigraph {
            vertex_count,
            edges: edges.to_vec(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    fn has_parallel_edges(&self) -> bool {
        let mut seen: Vec<_> = self.edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        seen.sort_unstable();
        seen.windows(2).any(|w| w[0] == w[1])
    }
}

impl From<&Graph> for Multigraph {
    fn from(g: &Graph) -> Self {
        Multigraph {
            vertex_count: g.vertex_count(),
            edges: g.edge_list(),
        }
    }
}

/// An `r`-uniform hypergraph; edges are stored sorted and deduplicated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    vertex_count: usize,
    uniformity: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    pub fn new(vertex_count: usize, uniformity: usize, edges: &[Vec<usize>]) -> Result<Self> {
        if uniformity == 0 {
            return input("uniformity must be at least 1");
        }
        let mut out = Vec::with_capacity(edges.len());
        for e in edges {
            let mut e = e.clone();
            e.sort_unstable();
            e.dedup();
            if e.len() != uniformity {
                return input(format!(
                    "edge {e:?} does not have {uniformity} distinct vertices"
                ));
            }
            if let Some(&v) = e.iter().find(|&&v| v >= vertex_count) {
                return input(format!("vertex {v} out of range for {vertex_count} vertices"));
            }
            out.push(e);
        }
        out.sort_unstable();
        out.dedup();
        Ok(Hypergraph {
            vertex_count,
            uniformity,
            edges: out,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn uniformity(&self) -> usize {
        self.uniformity
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }
}

/// Replaces every edge of `h` by a path of length `k + 1`.
///
/// Vertex `i < v(h)` is the original vertex `i`; the `k` internal vertices of
/// edge number `e` (in the order given) are `v(h) + e·k .. v(h) + (e+1)·k`,
/// running from the first endpoint to the second.
pub fn subdivide_k(h: &Multigraph, k: usize) -> Result<Graph> {
    if k == 0 {
        if h.has_parallel_edges() {
            return input("k = 0 with parallel edges would produce a multigraph");
        }
        return Graph::new(h.vertex_count, &h.edges);
    }
    let n = h.vertex_count;
    let mut edges = Vec::with_capacity(h.edges.len() * (k + 1));
    for (e, &(u, v)) in h.edges.iter().enumerate() {
        let base = n + e * k;
        edges.push((u, base));
        for i in 1..k {
            edges.push((base + i - 1, base + i));
        }
        edges.push((base + k - 1, v));
    }
    Graph::new(n + k * h.edges.len(), &edges)
}

/// The 1-subdivision of a simple graph as a pattern, branch vertices on side A
/// and subdividers on side B.
pub fn subdivision_pattern(h: &Graph) -> Result<Pattern> {
    let g = subdivide_k(&Multigraph::from(h), 1)?;
    let sides = (0..g.vertex_count())
        .map(|v| if v < h.vertex_count() { Side::A } else { Side::B })
        .collect();
    Pattern::with_sides(g, sides)
}

/// `H_t`: the 1-subdivision of `K_t`.
pub fn h_t(t: usize) -> Result<Pattern> {
    subdivision_pattern(&Graph::complete(t))
}

/// Bipartite incidence graph: A = vertices of `h`, B = edges of `h`.
pub fn incidence_subdivision(h: &Hypergraph) -> BipartiteGraph {
    let pairs: Vec<_> = h
        .edges
        .iter()
        .enumerate()
        .flat_map(|(j, e)| e.iter().map(move |&v| (v, j)))
        .collect();
    BipartiteGraph::new(h.vertex_count, h.edges.len(), &pairs).expect("incidences in range")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyName {
    Kt(usize),
    Kst(usize, usize),
    KtUniform(usize, usize),
    CompleteRPartite(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyMember {
    Graph(Graph),
    Hypergraph(Hypergraph),
}

fn k_subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if n - v < r - cur.len() {
                break;
            }
            cur.push(v);
            rec(v + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, r, &mut Vec::new(), &mut out);
    out
}

/// The named families. `Kst(s, t)` puts the `s`-side first;
/// `CompleteRPartite(t, r)` has parts `{i·t, …, i·t + t − 1}` for `i < r`.
pub fn family(name: FamilyName) -> Result<FamilyMember> {
    match name {
        FamilyName::Kt(t) => {
            if t < 1 {
                return input("K_t needs t >= 1");
            }
            Ok(FamilyMember::Graph(Graph::complete(t)))
        }
        FamilyName::Kst(s, t) => {
            if s < 1 || t < 1 {
                return input("K_{s,t} needs s, t >= 1");
            }
            Ok(FamilyMember::Graph(BipartiteGraph::complete(s, t).to_graph()))
        }
        FamilyName::KtUniform(t, r) => {
            if r < 1 || t < r {
                return input(format!("K_t^(r) needs 1 <= r <= t, got t={t}, r={r}"));
            }
            Ok(FamilyMember::Hypergraph(Hypergraph::new(t, r, &k_subsets(t, r))?))
        }
        FamilyName::CompleteRPartite(t, r) => {
            if t < 1 || r < 1 {
                return input("K_{t,...,t} needs t, r >= 1");
            }
            let mut edges = vec![Vec::new()];
            for part in 0..r {
                edges = edges
                    .into_iter()
                    .flat_map(|e: Vec<usize>| {
                        (0..t).map(move |i| {
                            let mut e = e.clone();
                            e.push(part * t + i);
                            e
                        })
                    })
                    .collect();
            }
            Ok(FamilyMember::Hypergraph(Hypergraph::new(t * r, r, &edges)?))
        }
    }
}

/// The 3-cube `Q_3`: vertices are 3-bit strings, edges join strings at
/// Hamming distance 1.
pub fn cube() -> Graph {
    let edges: Vec<_> = (0..8usize)
        .flat_map(|u| (0..3).map(move |b| (u, u ^ (1 << b))))
        .filter(|&(u, v)| u < v)
        .collect();
    Graph::new(8, &edges).expect("cube")
}

/// The Fano plane on points `0..7`.
pub fn fano_plane() -> Hypergraph {
    let lines = [
        [0, 1, 2],
        [0, 3, 4],
        [0, 5, 6],
        [1, 3, 5],
        [1, 4, 6],
        [2, 3, 6],
        [2, 4, 5],
    ];
    Hypergraph::new(7, 3, &lines.map(|l| l.to_vec())).expect("fano")
}

/// `K_{m,m}` minus the perfect matching `{(i, i)}`.
pub fn crown(m: usize) -> BipartiteGraph {
    let edges: Vec<_> = (0..m)
        .flat_map(|i| (0..m).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    BipartiteGraph::new(m, m, &edges).expect("crown")
}

/// Cycle `C_{2m}` as a bipartite graph `m + m`: `a_i ~ b_i, b_{i+1}`.
pub fn even_cycle(m: usize) -> Result<BipartiteGraph> {
    if m < 2 {
        return input("even cycles need at least 4 vertices");
    }
    let edges: Vec<_> = (0..m).flat_map(|i| [(i, i), (i, (i + 1) % m)]).collect();
    BipartiteGraph::new(m, m, &edges)
}

/// Smallest cycle length of `g` (`None` for forests), by BFS from every vertex.
pub fn girth(g: &Graph) -> Option<usize> {
    let n = g.vertex_count();
    let mut best = usize::MAX;
    for s in 0..n {
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = std::collections::VecDeque::from([s]);
        dist[s] = 0;
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbours(u) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                } else if parent[u] != v {
                    best = best.min(dist[u] + dist[v] + 1);
                }
            }
        }
    }
    (best != usize::MAX).then_some(best)
}
