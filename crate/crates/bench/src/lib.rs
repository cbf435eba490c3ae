//! Fixed benchmark inputs shared by the bench targets.

use subdiv_core::random::{bipartite_gnp, gnp, stream_rng};
use subdiv_core::{BipartiteGraph, Graph};

/// Random bipartite host with `n + n` vertices and density `p`, seed 1.
pub fn bipartite_host(n: usize, p: f64) -> BipartiteGraph {
    bipartite_gnp(n, n, p, &mut stream_rng(1, 0))
}

/// `G(n, p)` with seed 1.
pub fn host(n: usize, p: f64) -> Graph {
    gnp(n, p, &mut stream_rng(1, 0))
}
