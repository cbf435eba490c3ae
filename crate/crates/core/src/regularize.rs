//! Almost-regular and balanced bipartite subgraphs.

use rand::RngExt;
use serde::Serialize;

use crate::error::{input, FailureReport, Result, StageEntry};
use crate::graph::{BipartiteGraph, Graph};
use crate::random::stream_rng;

pub const DEFAULT_MAX_RETRIES: u32 = 64;

/// `max deg ≤ K · min deg`, minimum taken over every vertex (so an isolated
/// vertex fails for any `K`). The empty graph is not almost-regular.
pub fn verify_almost_regular(g: &Graph, k: f64) -> bool {
    if g.vertex_count() == 0 {
        return false;
    }
    let (lo, hi) = (g.min_degree(), g.max_degree());
    // As a ratio, so that K = max/min of the same graph always passes.
    lo >= 1 && hi as f64 / lo as f64 <= k
}

/// `20 · 2^{1 + 1/α²}`.
pub fn lemma_k_bound(alpha: f64) -> f64 {
    20.0 * 2f64.powf(1.0 + 1.0 / (alpha * alpha))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Subgraph {
    General(Graph),
    Bipartite(BipartiteGraph),
}

impl Subgraph {
    pub fn to_graph(&self) -> Graph {
        match self {
            Subgraph::General(g) => g.clone(),
            Subgraph::Bipartite(b) => b.to_graph(),
        }
    }
}

/// Size and edge targets of the almost-regular lemma. They are guaranteed
/// only for large `n`, so they are reported rather than enforced.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LemmaTargets {
    pub alpha: f64,
    /// `C = e(G) / n^{1+α}`.
    pub c_input: f64,
    pub k_bound: f64,
    /// `n^{α(1−α)/(2(1+α))}`.
    pub size_target: f64,
    pub size_met: bool,
    /// `(2C/5)·m^{1+α}`.
    pub edge_bound_target: f64,
    pub edge_met: bool,
}

/// Outcome of the random split: side sizes and the attempt that passed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BalanceInfo {
    pub k_in: f64,
    pub a_size: usize,
    pub b_size: usize,
    pub seed: u64,
    pub attempt: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegularizationCert {
    pub subgraph: Subgraph,
    /// Vertex `i` of `subgraph.to_graph()` is vertex `parent_map[i]` of the input.
    pub parent_map: Vec<usize>,
    pub m: usize,
    pub edge_count: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    pub k_achieved: f64,
    pub targets: Option<LemmaTargets>,
    pub balance: Option<BalanceInfo>,
}

impl RegularizationCert {
    fn new(subgraph: Subgraph, parent_map: Vec<usize>) -> Self {
        let g = subgraph.to_graph();
        let (lo, hi) = (g.min_degree(), g.max_degree());
        RegularizationCert {
            m: g.vertex_count(),
            edge_count: g.edge_count(),
            min_degree: lo,
            max_degree: hi,
            k_achieved: hi as f64 / lo as f64,
            subgraph,
            parent_map,
            targets: None,
            balance: None,
        }
    }
}

fn first_edge(g: &Graph, map: &[usize]) -> (Graph, Vec<usize>) {
    let (u, v) = g.edges().next().expect("graph has an edge");
    (Graph::new(2, &[(0, 1)]).unwrap(), vec![map[u], map[v]])
}

/// Repeatedly deletes vertices of degree below half the average degree.
fn prune(g: &Graph, map: Vec<usize>) -> (Graph, Vec<usize>) {
    let (mut g, mut map) = (g.clone(), map);
    loop {
        let n = g.vertex_count();
        if n == 0 || g.edge_count() == 0 {
            return (g, map);
        }
        // deg < avg/2  ⇔  n·deg < e
        let e = g.edge_count();
        let keep: Vec<usize> = (0..n).filter(|&v| n * g.degree(v) >= e && g.degree(v) > 0).collect();
        if keep.len() == n {
            return (g, map);
        }
        let (h, sub) = g.induced(&keep);
        map = sub.iter().map(|&i| map[i]).collect();
        g = h;
    }
}

/// A `K`-almost-regular subgraph with at least one edge.
///
/// Dyadic degree bucketing: keep the bucket `[2^i, 2^{i+1})` spanning the
/// most edges, prune low-degree vertices, and repeat until the degree ratio
/// is at most `K`. Falls back to a single edge when a round makes no progress.
pub fn extract_almost_regular(g: &Graph, k: f64) -> Result<(Graph, Vec<usize>)> {
    if g.edge_count() == 0 {
        return input("graph has no edges");
    }
    if k.is_nan() || k < 1.0 {
        return input(format!("K must be at least 1, got {k}"));
    }
    let nonisolated: Vec<usize> = (0..g.vertex_count()).filter(|&v| g.degree(v) > 0).collect();
    let (mut cur, mut map) = g.induced(&nonisolated);
    loop {
        if verify_almost_regular(&cur, k) {
            return Ok((cur, map));
        }
        let top = usize::BITS - cur.max_degree().leading_zeros();
        let mut best: Option<(usize, Vec<usize>)> = None;
        for i in 0..top {
            let bucket: Vec<usize> = (0..cur.vertex_count())
                .filter(|&v| (usize::BITS - 1 - cur.degree(v).leading_zeros()) == i)
                .collect();
            let edges = cur.induced(&bucket).0.edge_count();
            if best.as_ref().is_none_or(|(e, _)| edges >= *e) {
                best = Some((edges, bucket));
            }
        }
        let (edges, bucket) = best.expect("at least one bucket");
        if edges == 0 {
            return Ok(first_edge(&cur, &map));
        }
        let (h, sub) = cur.induced(&bucket);
        let (h, sub_map) = prune(&h, sub.iter().map(|&i| map[i]).collect());
        if h.edge_count() == 0 || h.vertex_count() == cur.vertex_count() {
            return Ok(first_edge(&cur, &map));
        }
        cur = h;
        map = sub_map;
    }
}

/// Almost-regular subgraph with `K ≤ 20·2^{1+1/α²}`, requiring
/// `e(G) ≥ n^{1+α}`. The certificate reports the lemma's size and edge targets.
pub fn almost_regular_subgraph(g: &Graph, alpha: f64) -> Result<RegularizationCert> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return input(format!("alpha must lie in (0, 1), got {alpha}"));
    }
    let n = g.vertex_count() as f64;
    let c = g.edge_count() as f64 / n.powf(1.0 + alpha);
    if c.is_nan() || c < 1.0 {
        return input(format!(
            "C = e(G)/n^(1+alpha) = {c:.6} < 1: need at least {:.1} edges, got {}",
            n.powf(1.0 + alpha),
            g.edge_count()
        ));
    }
    let k_bound = lemma_k_bound(alpha);
    let (sub, map) = extract_almost_regular(g, k_bound)?;
    let mut cert = RegularizationCert::new(Subgraph::General(sub), map);
    assert!(cert.k_achieved <= k_bound, "extraction exceeded the K bound");
    let size_target = n.powf(alpha * (1.0 - alpha) / (2.0 * (1.0 + alpha)));
    let edge_bound_target = 2.0 * c / 5.0 * (cert.m as f64).powf(1.0 + alpha);
    cert.targets = Some(LemmaTargets {
        alpha,
        c_input: c,
        k_bound,
        size_target,
        size_met: cert.m as f64 >= size_target,
        edge_bound_target,
        edge_met: cert.edge_count as f64 >= edge_bound_target,
    });
    Ok(cert)
}

/// Which of the four split checks an attempt violates.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SplitChecks {
    /// `m/3 ≤ |A| ≤ 2m/3`.
    pub balanced: bool,
    /// Every vertex keeps between a quarter and three quarters of its degree.
    pub retention: bool,
    /// `e(out) ≥ e(in)/4`.
    pub edges: bool,
    /// Output is `3K_in`-almost-regular.
    pub almost_regular: bool,
}

impl SplitChecks {
    pub fn all(&self) -> bool {
        self.balanced && self.retention && self.edges && self.almost_regular
    }

    fn passed(&self) -> usize {
        [self.balanced, self.retention, self.edges, self.almost_regular]
            .iter()
            .filter(|&&b| b)
            .count()
    }

    fn first_violation(&self) -> &'static str {
        if !self.balanced {
            "balance window m/3 <= |A| <= 2m/3"
        } else if !self.retention {
            "degree retention between 1/4 and 3/4"
        } else if !self.edges {
            "edge count at least e/4"
        } else {
            "3K-almost-regularity"
        }
    }
}

/// Evaluates a split deterministically. `in_a[v]` puts `v` on side A.
pub fn evaluate_split(g: &Graph, k_in: f64, in_a: &[bool]) -> (SplitChecks, BipartiteGraph, Vec<usize>) {
    let m = g.vertex_count();
    let a_size = in_a.iter().filter(|&&b| b).count();
    let (bg, bmap) = BipartiteGraph::from_partition(g, in_a);
    let mut parent = bmap.a.clone();
    parent.extend(&bmap.b);
    let retention = (0..m).all(|v| {
        let kept = g.neighbours(v).iter().filter(|&&w| in_a[w] != in_a[v]).count();
        let d = g.degree(v);
        4 * kept >= d && 4 * kept <= 3 * d
    });
    let checks = SplitChecks {
        balanced: 3 * a_size >= m && 3 * a_size <= 2 * m,
        retention,
        edges: 4 * bg.edge_count() >= g.edge_count(),
        almost_regular: verify_almost_regular(&bg.to_graph(), 3.0 * k_in),
    };
    (checks, bg, parent)
}

/// Random bipartition keeping only crossing edges. Each attempt `i` draws
/// from stream `i` of `seed`; the first attempt passing all four checks wins.
pub fn balanced_bipartition(g: &Graph, k_in: f64, seed: u64, max_retries: u32) -> Result<RegularizationCert> {
    if max_retries == 0 {
        return input("max_retries must be at least 1");
    }
    if g.vertex_count() == 0 || g.min_degree() == 0 {
        return input("input must have minimum degree at least 1");
    }
    if !verify_almost_regular(g, k_in) {
        return input(format!(
            "input is not {k_in}-almost-regular (degrees {}..{})",
            g.min_degree(),
            g.max_degree()
        ));
    }
    let m = g.vertex_count();
    let mut best: Option<(u32, SplitChecks, usize)> = None;
    for attempt in 0..max_retries {
        let mut rng = stream_rng(seed, attempt as u64);
        let in_a: Vec<bool> = (0..m).map(|_| rng.random_bool(0.5)).collect();
        let (checks, bg, parent) = evaluate_split(g, k_in, &in_a);
        if checks.all() {
            let a_size = bg.a_count();
            let mut cert = RegularizationCert::new(Subgraph::Bipartite(bg), parent);
            cert.balance = Some(BalanceInfo {
                k_in,
                a_size,
                b_size: m - a_size,
                seed,
                attempt,
            });
            return Ok(cert);
        }
        let a_size = bg.a_count();
        if best.as_ref().is_none_or(|(_, c, _)| checks.passed() > c.passed()) {
            best = Some((attempt, checks, a_size));
        }
    }
    let (attempt, checks, a_size) = best.expect("at least one attempt");
    let entry = StageEntry::new("best_attempt")
        .with("attempt", attempt)
        .with("a_size", a_size)
        .with("m", m)
        .with("balanced", checks.balanced)
        .with("retention", checks.retention)
        .with("edges", checks.edges)
        .with("almost_regular", checks.almost_regular);
    Err(FailureReport::new(
        "balanced_bipartition",
        format!(
            "{max_retries} attempts exhausted; best attempt {attempt} violates {}",
            checks.first_violation()
        ),
    )
    .with_log(vec![entry])
    .into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::gnp;

    fn cycle(k: usize) -> Graph {
        Graph::new(k, &(0..k).map(|i| (i, (i + 1) % k)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn verify_examples() {
        assert!(verify_almost_regular(&Graph::complete(5), 1.0));
        let star = Graph::new(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert!(!verify_almost_regular(&star, 3.0));
        let chord = Graph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)]).unwrap();
        assert!(verify_almost_regular(&chord, 2.0));
        assert!(!verify_almost_regular(&Graph::new(3, &[(0, 1)]).unwrap(), 100.0));
    }

    #[test]
    fn complete_graph_is_returned_whole() {
        let cert = almost_regular_subgraph(&Graph::complete(12), 0.5).unwrap();
        assert_eq!((cert.m, cert.k_achieved), (12, 1.0));
        let t = cert.targets.unwrap();
        assert!(t.size_met && t.edge_met);
    }

    #[test]
    fn dense_block_among_isolated_vertices() {
        let g = Graph::complete(50).disjoint_union(&Graph::empty(1000));
        // 1225 edges is below 1050^1.5, so the lemma's precondition rejects it.
        assert!(matches!(almost_regular_subgraph(&g, 0.5), Err(crate::Error::Input(_))));
        let (sub, map) = extract_almost_regular(&g, lemma_k_bound(0.5)).unwrap();
        assert_eq!(sub.vertex_count(), 50);
        assert!(map.iter().all(|&v| v < 50));
        let cert = almost_regular_subgraph(&g, 0.02).unwrap();
        assert_eq!((cert.m, cert.k_achieved), (50, 1.0));
    }

    #[test]
    fn seeded_random_graph() {
        let n = 512;
        let g = gnp(n, (n as f64).powf(-0.25), &mut stream_rng(2024, 0));
        let cert = almost_regular_subgraph(&g, 0.5).unwrap();
        assert!(cert.k_achieved <= 160.0);
        // Already within the bound, so the whole sample is kept.
        assert_eq!((cert.m, cert.edge_count, cert.min_degree, cert.max_degree), (512, 27475, 78, 138));
        let sub = cert.subgraph.to_graph();
        for (u, v) in sub.edges() {
            assert!(g.has_edge(cert.parent_map[u], cert.parent_map[v]));
        }
        let t = cert.targets.unwrap();
        assert!(t.size_met);
        assert!(t.edge_met);
    }

    #[test]
    fn four_cycle_splits() {
        let cert = balanced_bipartition(&cycle(4), 1.0, 0, DEFAULT_MAX_RETRIES).unwrap();
        let Subgraph::Bipartite(b) = &cert.subgraph else { panic!() };
        assert_eq!(cert.parent_map, vec![0, 3, 1, 2]);
        assert_eq!((b.a_count(), b.b_count(), b.edge_count()), (2, 2, 2));
        assert!(verify_almost_regular(&b.to_graph(), 3.0));
    }

    #[test]
    fn parity_obstructions_fail_soundly() {
        // A degree-1 vertex cannot keep between 1/4 and 3/4 of one edge. On a
        // cycle every vertex must keep exactly one edge, so the sides come in
        // runs of two, which needs a length divisible by 4.
        for g in [cycle(6), Graph::new(2, &[(0, 1)]).unwrap()] {
            match balanced_bipartition(&g, 1.0, 7, DEFAULT_MAX_RETRIES) {
                Err(crate::Error::Failure(r)) => {
                    assert_eq!(r.stage, "balanced_bipartition");
                    assert!(r.log[0].get("attempt").is_some());
                }
                other => panic!("expected failure, got {other:?}"),
            }
        }
    }

    #[test]
    fn rejects_irregular_input() {
        let star = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(balanced_bipartition(&star, 2.0, 0, 4).is_err());
        assert!(balanced_bipartition(&cycle(4), 1.0, 0, 0).is_err());
    }
}
