//! Exact isomorphism via canonical forms (colour refinement plus
//! individualization search, provided by the `canonical-form` crate).

use canonical_form::Canonize;

use crate::error::{resource, Result};
use crate::graph::Graph;

/// Graphs handled by the canonical-form routines have at most this many vertices.
pub const ISO_VERTEX_LIMIT: usize = 64;

/// Adjacency bit rows; row `u` has bit `v` set iff `uv` is an edge.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalGraph(Vec<u64>);

impl CanonicalGraph {
    pub fn vertex_count(&self) -> usize {
        self.0.len()
    }

    pub fn edge_count(&self) -> usize {
        self.0.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn rows(&self) -> &[u64] {
        &self.0
    }

    pub fn to_graph(&self) -> Graph {
        let adj = self
            .0
            .iter()
            .map(|&r| (0..self.0.len()).filter(|&v| r >> v & 1 == 1).collect())
            .collect();
        Graph::from_adjacency(adj)
    }
}

impl Canonize for CanonicalGraph {
    fn size(&self) -> usize {
        self.0.len()
    }

    fn apply_morphism(&self, p: &[usize]) -> Self {
        let mut rows = vec![0u64; self.0.len()];
        for (u, &r) in self.0.iter().enumerate() {
            let mut bits = r;
            let mut out = 0u64;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                out |= 1 << p[v];
            }
            rows[p[u]] = out;
        }
        CanonicalGraph(rows)
    }

    fn invariant_color(&self, u: usize) -> u64 {
        self.0[u].count_ones() as u64
    }

    fn invariant_neighborhood(&self, u: usize) -> impl Iterator<Item = (usize, u64)> {
        let mut bits = self.0[u];
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some((v, 0))
        })
    }
}

fn rows_of(g: &Graph) -> Result<CanonicalGraph> {
    if g.vertex_count() > ISO_VERTEX_LIMIT {
        return resource(format!(
            "isomorphism routines accept at most {ISO_VERTEX_LIMIT} vertices, got {}",
            g.vertex_count()
        ));
    }
    Ok(CanonicalGraph(
        (0..g.vertex_count())
            .map(|u| g.neighbours(u).iter().fold(0u64, |acc, &v| acc | 1 << v))
            .collect(),
    ))
}

/// Canonical representative of the isomorphism class of `g`.
pub fn canonical_form(g: &Graph) -> Result<CanonicalGraph> {
    Ok(rows_of(g)?.canonical())
}

/// Whether `g1` and `g2` are isomorphic.
pub fn iso_check(g1: &Graph, g2: &Graph) -> Result<bool> {
    let (c1, c2) = (rows_of(g1)?, rows_of(g2)?);
    if g1.vertex_count() != g2.vertex_count()
        || g1.edge_count() != g2.edge_count()
        || g1.degree_sequence() != g2.degree_sequence()
    {
        return Ok(false);
    }
    Ok(c1.canonical() == c2.canonical())
}

/// `|Aut(g)|`, by enumerating the automorphism group.
pub fn automorphism_count(g: &Graph) -> Result<u64> {
    Ok(rows_of(g)?.canonical().automorphisms().count() as u64)
}

/// One representative per vertex orbit of `Aut(g)` (the smallest index in each orbit).
pub fn orbit_representatives(g: &Graph) -> Result<Vec<usize>> {
    let rows = rows_of(g)?;
    let to_canon = rows.morphism_to_canonical();
    let canon = rows.apply_morphism(&to_canon);
    let n = g.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for perm in canon.automorphisms() {
        for (u, &v) in perm.iter().enumerate() {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    // Orbits live on canonical labels; keep the smallest original vertex of each.
    let mut best = vec![usize::MAX; n];
    for (v, &c) in to_canon.iter().enumerate().take(n) {
        let root = find(&mut parent, c);
        best[root] = best[root].min(v);
    }
    let mut reps: Vec<usize> = best.into_iter().filter(|&v| v != usize::MAX).collect();
    reps.sort_unstable();
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::BipartiteGraph;

    fn cycle(k: usize) -> Graph {
        Graph::new(k, &(0..k).map(|i| (i, (i + 1) % k)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn relabelled_cycles_are_isomorphic() {
        let other = Graph::new(6, &[(0, 2), (2, 4), (4, 1), (1, 3), (3, 5), (5, 0)]).unwrap();
        assert!(iso_check(&cycle(6), &other).unwrap());
        assert!(!iso_check(&cycle(6), &BipartiteGraph::complete(3, 3).to_graph()).unwrap());
        let two_triangles = Graph::new(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(!iso_check(&cycle(6), &two_triangles).unwrap());
    }

    #[test]
    fn automorphisms_and_orbits() {
        assert_eq!(automorphism_count(&cycle(6)).unwrap(), 12);
        assert_eq!(automorphism_count(&Graph::complete(4)).unwrap(), 24);
        assert_eq!(orbit_representatives(&cycle(5)).unwrap(), vec![0]);
        let path = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(orbit_representatives(&path).unwrap(), vec![0, 1]);
    }

    #[test]
    fn canonical_form_round_trips() {
        let g = Graph::new(5, &[(0, 1), (1, 2), (3, 4)]).unwrap();
        let c = canonical_form(&g).unwrap();
        assert!(iso_check(&c.to_graph(), &g).unwrap());
        assert_eq!(c.edge_count(), 3);
    }

    #[test]
    fn size_limit() {
        assert!(matches!(
            iso_check(&Graph::empty(65), &Graph::empty(65)),
            Err(crate::Error::Resource(_))
        ));
    }
}
