use crate::error::{input, Result};

/// Symmetric nonnegative integer weights on unordered pairs of distinct
/// vertices. Absent pairs have weight zero and are not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGraph {
    adj: Vec<Vec<(usize, u64)>>,
}

impl WeightedGraph {
    /// `pairs` lists `(u, v, w)`; zero weights are dropped. A pair listed
    /// twice (in either orientation) or a diagonal pair is an input error.
    pub fn new(vertex_count: usize, pairs: &[(usize, usize, u64)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); vertex_count];
        for &(u, v, w) in pairs {
            if u >= vertex_count || v >= vertex_count {
                return input(format!("pair ({u}, {v}) out of range"));
            }
            if u == v {
                return input(format!("weight on diagonal pair ({u}, {u})"));
            }
            if w > 0 {
                adj[u].push((v, w));
                adj[v].push((u, w));
            }
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|p| p[0].0 == p[1].0) {
                return input(format!("pair at vertex {u} listed twice"));
            }
        }
        Ok(WeightedGraph { adj })
    }

    /// Every pair of distinct vertices gets weight `w`.
    pub fn uniform(vertex_count: usize, w: u64) -> Self {
        let mut triples = Vec::new();
        for u in 0..vertex_count {
            for v in u + 1..vertex_count {
                triples.push((u, v, w));
            }
        }
        WeightedGraph::new(vertex_count, &triples).expect("valid pairs")
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn weight(&self, u: usize, v: usize) -> u64 {
        match self.adj[u].binary_search_by_key(&v, |&(x, _)| x) {
            Ok(i) => self.adj[u][i].1,
            Err(_) => 0,
        }
    }

    /// Nonzero neighbours of `u` with their weights, sorted by index.
    pub fn neighbours(&self, u: usize) -> &[(usize, u64)] {
        &self.adj[u]
    }

    /// Pairs `(u, v, w)` with `u < v` and `w > 0`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, l)| {
            l.iter()
                .filter(move |&&(v, _)| v > u)
                .map(move |&(v, w)| (u, v, w))
        })
    }

    /// `Σ_{uv} W(u, v)` over unordered pairs.
    pub fn total_weight(&self) -> u64 {
        self.pairs().map(|(_, _, w)| w).sum()
    }

    /// `Σ_{uv} W(u, v)²` over unordered pairs.
    pub fn square_sum(&self) -> u128 {
        self.pairs().map(|(_, _, w)| (w as u128) * (w as u128)).sum()
    }

    pub fn weighted_degree(&self, u: usize) -> u64 {
        self.adj[u].iter().map(|&(_, w)| w).sum()
    }

    /// Restriction to `vertices`, re-indexed in the given order.
    pub fn restrict(&self, vertices: &[usize]) -> WeightedGraph {
        let mut pos = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        let mut triples = Vec::new();
        for (i, &u) in vertices.iter().enumerate() {
            for &(v, w) in &self.adj[u] {
                let j = pos[v];
                if j != usize::MAX && j > i {
                    triples.push((i, j, w));
                }
            }
        }
        WeightedGraph::new(vertices.len(), &triples).expect("distinct pairs")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_are_symmetric() {
        let w = WeightedGraph::new(3, &[(0, 1, 3), (2, 1, 1), (0, 2, 0)]).unwrap();
        assert_eq!(w.weight(1, 0), 3);
        assert_eq!(w.weight(1, 2), 1);
        assert_eq!(w.weight(0, 2), 0);
        assert_eq!(w.total_weight(), 4);
        assert_eq!(w.square_sum(), 10);
        assert_eq!(w.weighted_degree(1), 4);
    }

    #[test]
    fn rejects_diagonal_and_duplicates() {
        assert!(WeightedGraph::new(2, &[(1, 1, 2)]).is_err());
        assert!(WeightedGraph::new(2, &[(0, 1, 2), (1, 0, 2)]).is_err());
    }

    #[test]
    fn restriction_reindexes() {
        let w = WeightedGraph::uniform(5, 2).restrict(&[4, 0]);
        assert_eq!(w.vertex_count(), 2);
        assert_eq!(w.weight(0, 1), 2);
    }
}
