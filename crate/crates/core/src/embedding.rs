use serde::Serialize;

use crate::error::StageEntry;
use crate::graph::Graph;

/// A map from pattern vertices into a host graph.
///
/// `map[v]` is the host vertex of pattern vertex `v`. For bipartite hosts the
/// host indices are those of `BipartiteGraph::to_graph` (B shifted past A).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Embedding {
    pub map: Vec<usize>,
    pub injective: bool,
    pub stage_log: Vec<StageEntry>,
}

impl Embedding {
    pub fn new(map: Vec<usize>, stage_log: Vec<StageEntry>) -> Self {
        Embedding {
            injective: is_injective(&map),
            map,
            stage_log,
        }
    }
}

pub fn is_injective(map: &[usize]) -> bool {
    let mut seen: Vec<usize> = map.to_vec();
    seen.sort_unstable();
    seen.windows(2).all(|w| w[0] != w[1])
}

/// Whether `map` sends every edge of `pattern` to an edge of `host`.
pub fn is_homomorphism(pattern: &Graph, host: &Graph, map: &[usize]) -> bool {
    map.len() == pattern.vertex_count()
        && map.iter().all(|&v| v < host.vertex_count())
        && pattern.edges().all(|(u, v)| host.has_edge(map[u], map[v]))
}

/// A copy of `pattern` in `host`: injective and edge-preserving.
pub fn verify_embedding(pattern: &Graph, host: &Graph, map: &[usize]) -> bool {
    is_homomorphism(pattern, host, map) && is_injective(map)
}
