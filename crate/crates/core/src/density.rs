//! Weighted-graph toolkit: `(ρ, d)`-density, codegree sums over a subset,
//! heavy-pair filtering and light-support extraction.
//!
//! Unordered sums run over pairs of distinct vertices. Ordered sums run over
//! `U²` and use `d(u, u) = deg(u)` on the diagonal.

use rand::seq::index::sample;
use rand::RngExt;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{input, resource, Result};
use crate::graph::{BipartiteGraph, Side};
use crate::random::stream_rng;
use crate::weighted::WeightedGraph;

/// Subset enumeration cutoff for [`check_rho_d_dense`].
pub const EXHAUSTIVE_LIMIT: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DensityParams {
    pub rho: f64,
    pub d: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DenseMode {
    Exhaustive,
    Sampled { seed: u64, trials: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "subset", rename_all = "snake_case")]
pub enum DenseVerdict {
    Dense,
    /// Sampled mode only: a one-sided answer.
    NoCounterexampleFound,
    Counterexample(Vec<usize>),
}

fn binom2(k: usize) -> f64 {
    (k as f64) * (k as f64 - 1.0) / 2.0
}

/// Smallest subset size that counts as a `ρ`-fraction of `n` vertices.
fn min_size(rho: f64, n: usize) -> usize {
    ((rho * n as f64) - 1e-9).ceil().max(0.0) as usize
}

/// Checks `Σ_{uv ⊆ U} W(u, v) ≥ d·C(|U|, 2)` for subsets with `|U| ≥ ρ|V|`.
///
/// Exhaustive mode returns the violating subset with the smallest bitmask
/// (vertex `i` is bit `i`). Sampled mode draws subset sizes uniformly from
/// the admissible range and then a uniform subset of that size.
pub fn check_rho_d_dense(w: &WeightedGraph, p: DensityParams, mode: DenseMode) -> Result<DenseVerdict> {
    let n = w.vertex_count();
    if !(p.rho > 0.0 && p.rho <= 1.0) {
        return input(format!("rho must lie in (0, 1], got {}", p.rho));
    }
    if p.d < 0.0 || !p.d.is_finite() {
        return input(format!("d must be a nonnegative number, got {}", p.d));
    }
    if p.rho * (n as f64) < 1.0 {
        return input(format!("rho·|V| = {} is below 1", p.rho * n as f64));
    }
    let k = min_size(p.rho, n);
    let violates = |size: usize, sum: u64| (sum as f64) < p.d * binom2(size);
    match mode {
        DenseMode::Exhaustive => {
            if n > EXHAUSTIVE_LIMIT {
                return resource(format!(
                    "exhaustive density check is limited to {EXHAUSTIVE_LIMIT} vertices, got {n}; use sampled mode"
                ));
            }
            Ok(match exhaustive_first_violation(w, k, violates) {
                Some(mask) => DenseVerdict::Counterexample((0..n).filter(|&i| mask >> i & 1 == 1).collect()),
                None => DenseVerdict::Dense,
            })
        }
        DenseMode::Sampled { seed, trials } => {
            let mut rng = stream_rng(seed, 0);
            for _ in 0..trials {
                let size = rng.random_range(k..=n);
                let mut u = sample(&mut rng, n, size).into_vec();
                u.sort_unstable();
                let sum = w.restrict(&u).total_weight();
                if violates(size, sum) {
                    return Ok(DenseVerdict::Counterexample(u));
                }
            }
            Ok(DenseVerdict::NoCounterexampleFound)
        }
    }
}

/// Splits the mask into high and low halves. For a fixed high half the sums
/// over all low halves follow from one lowest-bit recurrence, so each subset
/// costs O(1).
fn exhaustive_first_violation(w: &WeightedGraph, k: usize, violates: impl Fn(usize, u64) -> bool + Sync) -> Option<u64> {
    let n = w.vertex_count();
    let lo_bits = n.min(12);
    let hi_bits = n - lo_bits;
    let lo_len = 1usize << lo_bits;
    let weight = |u: usize, v: usize| w.weight(u, v);
    // inner[lo]: weight inside the low half.
    let mut inner = vec![0u64; lo_len];
    for lo in 1..lo_len {
        let v = lo.trailing_zeros() as usize;
        let rest = lo & (lo - 1);
        inner[lo] = inner[rest] + (0..lo_bits).filter(|&u| rest >> u & 1 == 1).map(|u| weight(u, v)).sum::<u64>();
    }
    let hi_inner = |hi: usize| -> u64 {
        let mut s = 0;
        for i in 0..hi_bits {
            if hi >> i & 1 == 1 {
                for j in i + 1..hi_bits {
                    if hi >> j & 1 == 1 {
                        s += weight(lo_bits + i, lo_bits + j);
                    }
                }
            }
        }
        s
    };
    (0..1usize << hi_bits).into_par_iter().find_map_first(|hi| {
        let hi_pop = hi.count_ones() as usize;
        if hi_pop + lo_bits < k {
            return None;
        }
        let base = hi_inner(hi);
        // to_hi[u]: weight from low vertex u to the high half.
        let to_hi: Vec<u64> = (0..lo_bits)
            .map(|u| (0..hi_bits).filter(|&i| hi >> i & 1 == 1).map(|i| weight(u, lo_bits + i)).sum())
            .collect();
        let mut cross = vec![0u64; lo_len];
        for lo in 0..lo_len {
            if lo > 0 {
                let v = lo.trailing_zeros() as usize;
                cross[lo] = cross[lo & (lo - 1)] + to_hi[v];
            }
            let size = hi_pop + lo.count_ones() as usize;
            if size >= k && size > 0 && violates(size, base + inner[lo] + cross[lo]) {
                return Some(((hi as u64) << lo_bits) | lo as u64);
            }
        }
        None
    })
}

fn check_subset(g: &BipartiteGraph, u: &[usize]) -> Result<()> {
    let mut seen = vec![false; g.a_count()];
    for &x in u {
        if x >= g.a_count() {
            return input(format!("vertex {x} is not in A (|A| = {})", g.a_count()));
        }
        if std::mem::replace(&mut seen[x], true) {
            return input(format!("vertex {x} listed twice in U"));
        }
    }
    Ok(())
}

/// Degree into `U` of every B-vertex.
fn degrees_into(g: &BipartiteGraph, u: &[usize]) -> Vec<u64> {
    let mut d = vec![0u64; g.b_count()];
    for &a in u {
        for &b in g.neighbours(Side::A, a) {
            d[b] += 1;
        }
    }
    d
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CodegreeBound {
    /// `Σ_{uv ⊆ U} d(u, v)`.
    pub lhs: u64,
    /// `(δ²/2n)·C(|U|, 2)` with `δ` the minimum degree over A and `n = |B|`.
    pub rhs: f64,
    pub min_degree: usize,
    /// Whether `δ|U| ≥ 2n`.
    pub precondition: bool,
    pub holds: bool,
}

pub fn local_codegree_bound(g: &BipartiteGraph, u: &[usize]) -> Result<CodegreeBound> {
    check_subset(g, u)?;
    let lhs = degrees_into(g, u).iter().map(|&d| d * d.saturating_sub(1) / 2).sum();
    let delta = g.min_degree(Side::A);
    let n = g.b_count();
    let rhs = if n == 0 {
        0.0
    } else {
        (delta * delta) as f64 / (2 * n) as f64 * binom2(u.len())
    };
    Ok(CodegreeBound {
        lhs,
        rhs,
        min_degree: delta,
        precondition: delta * u.len() >= 2 * n,
        holds: lhs as f64 >= rhs,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairSums {
    pub unordered_sum: u64,
    /// Includes the diagonal `d(u, u) = deg(u)`.
    pub ordered_sum: u64,
    /// `e(G[U, B])`.
    pub edge_count: u64,
    pub precondition: bool,
    /// `unordered_sum ≥ ordered_sum / 4`.
    pub holds: bool,
}

pub fn pair_sum_bounds(g: &BipartiteGraph, u: &[usize]) -> Result<PairSums> {
    check_subset(g, u)?;
    let d = degrees_into(g, u);
    let unordered_sum = d.iter().map(|&x| x * x.saturating_sub(1) / 2).sum::<u64>();
    let ordered_sum = d.iter().map(|&x| x * x).sum::<u64>();
    let edge_count = d.iter().sum();
    Ok(PairSums {
        unordered_sum,
        ordered_sum,
        edge_count,
        precondition: g.min_degree(Side::A) * u.len() >= 2 * g.b_count(),
        holds: 4 * unordered_sum >= ordered_sum,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FilterResult {
    pub kept_pairs: Vec<(usize, usize)>,
    /// `F_M`: pairs with `W ≥ M`.
    pub removed_pairs: Vec<(usize, usize)>,
    pub removed_weight: u64,
    pub threshold: u64,
    /// `S = Σ W(u, v)²`.
    pub square_sum: u128,
}

impl FilterResult {
    /// The weighted graph with the removed pairs zeroed.
    pub fn kept_graph(&self, w: &WeightedGraph) -> WeightedGraph {
        let triples: Vec<_> = self.kept_pairs.iter().map(|&(u, v)| (u, v, w.weight(u, v))).collect();
        WeightedGraph::new(w.vertex_count(), &triples).expect("pairs of w")
    }
}

/// Splits the support of `w` at `M`; asserts `Σ_{F_M} W ≤ S / M`.
pub fn heavy_edge_filter(w: &WeightedGraph, m: u64) -> Result<FilterResult> {
    if m == 0 {
        return input("threshold M must be at least 1");
    }
    let (mut kept_pairs, mut removed_pairs, mut removed_weight) = (Vec::new(), Vec::new(), 0u64);
    for (u, v, x) in w.pairs() {
        if x >= m {
            removed_pairs.push((u, v));
            removed_weight += x;
        } else {
            kept_pairs.push((u, v));
        }
    }
    let square_sum = w.square_sum();
    assert!(
        removed_weight as u128 * m as u128 <= square_sum,
        "heavy pairs carry more than S/M"
    );
    Ok(FilterResult {
        kept_pairs,
        removed_pairs,
        removed_weight,
        threshold: m,
        square_sum,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LargeSupport {
    pub u: Vec<usize>,
    /// `Σ_{G_M} W / |A|²`.
    pub d: f64,
    pub light_weight: u64,
    /// `d|A|/M`: lower bound on `|U|` and on every member's light degree.
    pub guarantee: f64,
    /// Number of light neighbours of each member of `U`, in order.
    pub light_degrees: Vec<usize>,
}

/// `U = {u : Σ_v W'(u, v) ≥ d|A|}` where `W'` keeps only the light pairs
/// `0 < W < M` and `d` is their total weight over `|A|²`. Asserts
/// `|U| ≥ d|A|/M` and that every `u ∈ U` has at least `d|A|/M` light neighbours.
pub fn large_support_set(w: &WeightedGraph, m: u64) -> Result<LargeSupport> {
    if m == 0 {
        return input("threshold M must be at least 1");
    }
    let n = w.vertex_count();
    let light = |x: u64| x > 0 && x < m;
    let light_weight: u64 = w.pairs().filter(|&(_, _, x)| light(x)).map(|(_, _, x)| x).sum();
    if light_weight == 0 {
        return input("no light edges");
    }
    let mut u = Vec::new();
    let mut light_degrees = Vec::new();
    for v in 0..n {
        let (deg, cnt) = w
            .neighbours(v)
            .iter()
            .filter(|&&(_, x)| light(x))
            .fold((0u64, 0usize), |(s, c), &(_, x)| (s + x, c + 1));
        // deg ≥ d|A|  ⇔  deg·|A| ≥ light_weight
        if deg as u128 * n as u128 >= light_weight as u128 {
            u.push(v);
            light_degrees.push(cnt);
        }
    }
    let d = light_weight as f64 / (n as f64 * n as f64);
    let guarantee = d * n as f64 / m as f64;
    // Exact forms of |U| ≥ d|A|/M and cnt ≥ d|A|/M.
    let bound = |x: usize| x as u128 * n as u128 * m as u128 >= light_weight as u128;
    assert!(bound(u.len()), "light support set smaller than d|A|/M");
    assert!(light_degrees.iter().all(|&c| bound(c)), "member with too few light neighbours");
    Ok(LargeSupport {
        u,
        d,
        light_weight,
        guarantee,
        light_degrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::c6;

    fn triangle_311() -> WeightedGraph {
        WeightedGraph::new(3, &[(0, 1, 3), (0, 2, 1), (1, 2, 1)]).unwrap()
    }

    #[test]
    fn rho_d_examples() {
        let uni = WeightedGraph::uniform(7, 4);
        let p = DensityParams { rho: 0.3, d: 4.0 };
        assert_eq!(check_rho_d_dense(&uni, p, DenseMode::Exhaustive).unwrap(), DenseVerdict::Dense);
        let p = DensityParams { rho: 2.0 / 3.0, d: 2.0 };
        assert_eq!(
            check_rho_d_dense(&triangle_311(), p, DenseMode::Exhaustive).unwrap(),
            DenseVerdict::Counterexample(vec![0, 2])
        );
        let zero = WeightedGraph::new(5, &[]).unwrap();
        let p = DensityParams { rho: 0.5, d: 0.5 };
        assert!(matches!(
            check_rho_d_dense(&zero, p, DenseMode::Exhaustive).unwrap(),
            DenseVerdict::Counterexample(_)
        ));
        assert!(matches!(
            check_rho_d_dense(&WeightedGraph::uniform(25, 1), p, DenseMode::Exhaustive),
            Err(crate::Error::Resource(_))
        ));
        let sampled = DenseMode::Sampled { seed: 3, trials: 50 };
        assert_eq!(
            check_rho_d_dense(&WeightedGraph::uniform(40, 2), DensityParams { rho: 0.2, d: 2.0 }, sampled).unwrap(),
            DenseVerdict::NoCounterexampleFound
        );
        assert!(check_rho_d_dense(&zero, DensityParams { rho: 0.1, d: 1.0 }, DenseMode::Exhaustive).is_err());
    }

    #[test]
    fn exhaustive_matches_direct_scan() {
        let mut rng = stream_rng(11, 0);
        for trial in 0..20 {
            let n = 5 + trial % 10;
            let mut triples = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    triples.push((u, v, rng.random_range(0..4u64)));
                }
            }
            let w = WeightedGraph::new(n, &triples).unwrap();
            let p = DensityParams { rho: 0.4, d: 1.4 };
            let k = min_size(p.rho, n);
            let direct = (1u64..1 << n).find(|&mask| {
                let u: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                u.len() >= k && (w.restrict(&u).total_weight() as f64) < p.d * binom2(u.len())
            });
            let got = check_rho_d_dense(&w, p, DenseMode::Exhaustive).unwrap();
            let expect = match direct {
                Some(mask) => DenseVerdict::Counterexample((0..n).filter(|&i| mask >> i & 1 == 1).collect()),
                None => DenseVerdict::Dense,
            };
            assert_eq!(got, expect);
        }
    }

    #[test]
    fn codegree_bound_examples() {
        let k32 = BipartiteGraph::complete(3, 2);
        let r = local_codegree_bound(&k32, &[0, 1, 2]).unwrap();
        assert_eq!((r.lhs, r.rhs, r.holds, r.precondition), (6, 3.0, true, true));
        let k45 = BipartiteGraph::complete(4, 5);
        let r = local_codegree_bound(&k45, &[0, 1, 2, 3]).unwrap();
        assert_eq!(r.lhs, 5 * 6);
        assert_eq!(r.rhs, 2.5 * 6.0);
        let r = local_codegree_bound(&k45, &[2]).unwrap();
        assert_eq!((r.lhs, r.rhs, r.holds), (0, 0.0, true));
        assert!(local_codegree_bound(&k45, &[4]).is_err());
        assert!(local_codegree_bound(&k45, &[1, 1]).is_err());
    }

    #[test]
    fn pair_sum_examples() {
        let r = pair_sum_bounds(&BipartiteGraph::complete(3, 2), &[0, 1, 2]).unwrap();
        assert_eq!((r.unordered_sum, r.ordered_sum, r.edge_count, r.holds), (6, 18, 6, true));
        let r = pair_sum_bounds(&c6(), &[0, 1, 2]).unwrap();
        assert_eq!((r.unordered_sum, r.ordered_sum, r.holds), (3, 12, true));
        let r = pair_sum_bounds(&c6(), &[1]).unwrap();
        assert_eq!((r.unordered_sum, r.ordered_sum, r.precondition), (0, 2, false));
    }

    #[test]
    fn heavy_filter_examples() {
        let r = heavy_edge_filter(&triangle_311(), 2).unwrap();
        assert_eq!((r.removed_weight, r.square_sum), (3, 11));
        assert_eq!(r.removed_pairs, vec![(0, 1)]);
        let r = heavy_edge_filter(&triangle_311(), 4).unwrap();
        assert!(r.removed_pairs.is_empty());
        let single = WeightedGraph::new(2, &[(0, 1, 5)]).unwrap();
        assert_eq!(heavy_edge_filter(&single, 5).unwrap().removed_weight, 5);
        assert!(heavy_edge_filter(&single, 0).is_err());
    }

    #[test]
    fn large_support_examples() {
        let r = large_support_set(&WeightedGraph::uniform(4, 1), 2).unwrap();
        assert_eq!(r.d, 6.0 / 16.0);
        assert_eq!(r.u, vec![0, 1, 2, 3]);
        assert_eq!(r.light_degrees, vec![3; 4]);
        let one = WeightedGraph::new(10, &[(3, 7, 1)]).unwrap();
        let r = large_support_set(&one, 2).unwrap();
        assert_eq!((r.d, r.u.clone()), (0.01, vec![3, 7]));
        assert!(large_support_set(&WeightedGraph::uniform(4, 3), 2).is_err());
    }
}
