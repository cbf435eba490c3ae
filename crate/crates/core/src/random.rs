//! Seeded randomness.
//!
//! Every randomized routine takes an explicit 64-bit seed. A seed expands to
//! independent streams with [`stream_rng`]: the ChaCha8 key is derived from the
//! seed with `SeedableRng::seed_from_u64` and the stream id selects ChaCha's
//! 64-bit stream counter. Work split across threads draws from distinct,
//! fixed stream ids, so serial and parallel runs consume identical bits.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{BipartiteGraph, Graph};

pub use rand_chacha::ChaCha8Rng as Rng;

pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Erdős–Rényi `G(n, p)`; pairs are visited in lexicographic order.
pub fn gnp(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let p = p.clamp(0.0, 1.0);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).expect("pairs in range")
}

/// Random bipartite graph with each of the `a·b` cross pairs present with probability `p`.
pub fn bipartite_gnp(a: usize, b: usize, p: f64, rng: &mut ChaCha8Rng) -> BipartiteGraph {
    let p = p.clamp(0.0, 1.0);
    let mut edges = Vec::new();
    for i in 0..a {
        for j in 0..b {
            if rng.random_bool(p) {
                edges.push((i, j));
            }
        }
    }
    BipartiteGraph::new(a, b, &edges).expect("pairs in range")
}
