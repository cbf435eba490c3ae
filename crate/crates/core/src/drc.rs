//! Dependent random choice, derandomized, as a staged embedding pipeline:
//! pivot, dyadic bucket, witness, clique of non-bad pairs, subdivider
//! assignment.
//!
//! Randomness in the original argument (the choice of the pivot and of the
//! witness) is replaced by exact optimization over all candidates, so every
//! stage is deterministic.

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::BitSet;
use crate::count::{ln, Count};
use crate::embedding::{verify_embedding, Embedding};
use crate::error::{input, FailureReport, Result, StageEntry};
use crate::graph::{BipartiteGraph, Side};
use crate::hom::{hom_c4_oriented, hom_star_oriented, Pattern};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DrcParams {
    /// Surplus multiplier in the pivot score.
    pub m: u64,
    /// `|V(H)|`.
    pub h: usize,
    /// Pairs of B-vertices with codegree below this are bad.
    pub bad_threshold: usize,
}

impl DrcParams {
    /// `bad_threshold = h = |V(H)|`.
    pub fn for_pattern(pattern: &Pattern, m: u64) -> Self {
        DrcParams {
            m,
            h: pattern.vertex_count(),
            bad_threshold: pattern.vertex_count(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return input("M must be at least 1");
        }
        if self.bad_threshold == 0 {
            return input("bad_threshold must be at least 1");
        }
        Ok(())
    }
}

/// `floor(Hom(C4) / (Hom*(K_{2,1}) + Hom*(K_{1,2})))`, or 0 for an edgeless host.
pub fn auto_m(g: &BipartiteGraph) -> u64 {
    let c4 = hom_c4_oriented(g);
    let stars = hom_star_oriented(g, Side::B, 2).expect("k = 2") + hom_star_oriented(g, Side::A, 2).expect("k = 2");
    if stars == Count::from(0u8) {
        return 0;
    }
    (c4 / stars).to_u64().unwrap_or(u64::MAX)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pivot {
    pub x: usize,
    pub surplus: i128,
}

/// Score of `x ∈ A`: `Σ_{(u,v)∈N(x)²} d*(u,v) − M·(Σ_{v∈N(x)} deg v + deg(x)²)`.
///
/// The pair sum equals `Σ_{a∈A} |N(x) ∩ N(a)|²`.
pub fn pivot_score(g: &BipartiteGraph, x: usize, m: u64) -> i128 {
    let pairs: i128 = (0..g.a_count())
        .map(|a| {
            let c = g.pair_codegree(Side::A, x, a) as i128;
            c * c
        })
        .sum();
    let dx = g.degree(Side::A, x) as i128;
    let deg_sum: i128 = g.neighbours(Side::A, x).iter().map(|&v| g.degree(Side::B, v) as i128).sum();
    pairs - m as i128 * (deg_sum + dx * dx)
}

/// The `x ∈ A` of positive degree with the largest score, if that score is
/// nonnegative. Ties go to the smaller index.
pub fn select_pivot(g: &BipartiteGraph, m: u64) -> Option<Pivot> {
    (0..g.a_count())
        .into_par_iter()
        .filter(|&x| g.degree(Side::A, x) > 0)
        .map(|x| Pivot {
            x,
            surplus: pivot_score(g, x, m),
        })
        .reduce_with(|p, q| {
            if q.surplus > p.surplus || (q.surplus == p.surplus && q.x < p.x) {
                q
            } else {
                p
            }
        })
        .filter(|p| p.surplus >= 0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DyadicBuckets {
    /// `buckets[i−1] = {a ∈ A' : 2^{i−1} ≤ deg_{B'}(a) < 2^i}` for `i = 1..=L`.
    pub buckets: Vec<Vec<usize>>,
    /// 1-based index of the chosen bucket.
    pub j: usize,
    pub a_j: Vec<usize>,
    /// `Σ_{a∈A_j} deg_{B'}(a)²`.
    pub bucket_weight: u128,
    /// `Σ_{(u,v)∈B'²} d*(u,v)`.
    pub total_weight: u128,
    pub levels: usize,
}

fn degree_into(g: &BipartiteGraph, a: usize, b_set: &BitSet) -> usize {
    g.neighbours(Side::A, a).iter().filter(|&&b| b_set.contains(b)).count()
}

/// Buckets `A' = N(B')` by degree into `B'` and picks the bucket with the
/// largest squared-degree sum (smaller index on ties). Asserts that the
/// chosen bucket carries at least a `1/L` share, `L = floor(log₂|B'|) + 1`.
pub fn dyadic_select(g: &BipartiteGraph, b_prime: &[usize]) -> Result<DyadicBuckets> {
    if b_prime.is_empty() {
        return input("B' is empty");
    }
    if let Some(&b) = b_prime.iter().find(|&&b| b >= g.b_count()) {
        return input(format!("vertex {b} is not in B"));
    }
    let a_prime = g.neighbourhood_union(Side::B, b_prime);
    if a_prime.is_empty() {
        return input("A' = N(B') is empty");
    }
    let b_set = BitSet::from_indices(g.b_count(), b_prime.iter().copied());
    let levels = (usize::BITS - 1 - b_prime.len().leading_zeros()) as usize + 1;
    let mut buckets = vec![Vec::new(); levels];
    let mut weights = vec![0u128; levels];
    let mut total = 0u128;
    for &a in &a_prime {
        let d = degree_into(g, a, &b_set);
        let i = (usize::BITS - 1 - d.leading_zeros()) as usize;
        buckets[i].push(a);
        weights[i] += (d * d) as u128;
        total += (d * d) as u128;
    }
    let mut j = 0;
    for i in 1..levels {
        if weights[i] > weights[j] {
            j = i;
        }
    }
    assert!(weights[j] * levels as u128 >= total, "dyadic bucket below the 1/L share");
    Ok(DyadicBuckets {
        a_j: buckets[j].clone(),
        buckets,
        j: j + 1,
        bucket_weight: weights[j],
        total_weight: total,
        levels,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub z: usize,
    /// `|N_{B'}(z)|`.
    pub k: usize,
    /// Ordered bad pairs inside `N_{B'}(z)`.
    pub bad_pairs: u64,
    pub bad_fraction: f64,
    /// Mean bad fraction over the candidates with `k ≥ 2`.
    pub average_fraction: f64,
}

/// Bad ordered pairs inside `set` (B-vertices with codegree below `threshold`).
fn bad_pairs(g: &BipartiteGraph, set: &[usize], threshold: usize) -> u64 {
    let mut x = 0;
    for (i, &u) in set.iter().enumerate() {
        for &v in &set[i + 1..] {
            if g.pair_codegree(Side::B, u, v) < threshold {
                x += 2;
            }
        }
    }
    x
}

/// Evaluates every `z ∈ a_j` and returns the one minimizing
/// `X / (k(k−1))`, with `X` the ordered bad pairs in `N_{B'}(z)` and
/// `k = |N_{B'}(z)| ≥ 2`. Ties: larger `k`, then smaller index.
pub fn select_witness(g: &BipartiteGraph, a_j: &[usize], b_prime: &[usize], bad_threshold: usize) -> Result<Witness> {
    if a_j.is_empty() {
        return input("A_j is empty");
    }
    let b_set = BitSet::from_indices(g.b_count(), b_prime.iter().copied());
    let scored: Vec<(usize, usize, u64)> = a_j
        .par_iter()
        .filter_map(|&z| {
            let nb: Vec<usize> = g.neighbours(Side::A, z).iter().copied().filter(|&b| b_set.contains(b)).collect();
            (nb.len() >= 2).then(|| (z, nb.len(), bad_pairs(g, &nb, bad_threshold)))
        })
        .collect();
    if scored.is_empty() {
        return Err(FailureReport::new("select_witness", "witness neighbourhoods too small").into());
    }
    let key_less = |p: &(usize, usize, u64), q: &(usize, usize, u64)| {
        // p.x/(p.k(p.k−1)) < q.x/(q.k(q.k−1))
        let lhs = p.2 as u128 * (q.1 * (q.1 - 1)) as u128;
        let rhs = q.2 as u128 * (p.1 * (p.1 - 1)) as u128;
        lhs < rhs || (lhs == rhs && (p.1 > q.1 || (p.1 == q.1 && p.0 < q.0)))
    };
    let best = scored
        .iter()
        .copied()
        .reduce(|p, q| if key_less(&q, &p) { q } else { p })
        .expect("nonempty");
    let frac = |s: &(usize, usize, u64)| s.2 as f64 / (s.1 * (s.1 - 1)) as f64;
    let average_fraction = scored.iter().map(frac).sum::<f64>() / scored.len() as f64;
    let bad_fraction = frac(&best);
    assert!(bad_fraction <= average_fraction + 1e-12, "witness worse than the average");
    Ok(Witness {
        z: best.0,
        k: best.1,
        bad_pairs: best.2,
        bad_fraction,
        average_fraction,
    })
}

/// An `h`-subset of `candidates` (B-vertices) whose pairwise codegrees are
/// all at least `bad_threshold`, found by exact branch and bound. `None`
/// only when no such subset exists. The result is sorted.
pub fn clique_nonbad(g: &BipartiteGraph, candidates: &[usize], h: usize, bad_threshold: usize) -> Result<Option<Vec<usize>>> {
    if h < 2 {
        return input("clique size h must be at least 2");
    }
    let mut cands = candidates.to_vec();
    cands.sort_unstable();
    cands.dedup();
    if let Some(&b) = cands.iter().find(|&&b| b >= g.b_count()) {
        return input(format!("vertex {b} is not in B"));
    }
    let n = cands.len();
    let mut adj = vec![BitSet::new(n); n];
    for i in 0..n {
        for j in i + 1..n {
            if g.pair_codegree(Side::B, cands[i], cands[j]) >= bad_threshold {
                adj[i].insert(j);
                adj[j].insert(i);
            }
        }
    }
    // Greedy order: highest compatibility degree first; vertices that cannot
    // sit in an h-clique are dropped up front.
    let mut order: Vec<usize> = (0..n).filter(|&i| adj[i].count() + 1 >= h).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(adj[i].count()), i));
    fn grow(adj: &[BitSet], order: &[usize], pool: &BitSet, chosen: &mut Vec<usize>, h: usize) -> bool {
        if chosen.len() == h {
            return true;
        }
        if chosen.len() + pool.count() < h {
            return false;
        }
        let mut pool = pool.clone();
        for &v in order {
            if !pool.contains(v) {
                continue;
            }
            pool.remove(v);
            let mut next = pool.clone();
            next.intersect_with(&adj[v]);
            chosen.push(v);
            if grow(adj, order, &next, chosen, h) {
                return true;
            }
            chosen.pop();
            if chosen.len() + pool.count() < h {
                return false;
            }
        }
        false
    }
    let pool = BitSet::from_indices(n, order.iter().copied());
    let mut chosen = Vec::new();
    if !grow(&adj, &order, &pool, &mut chosen, h) {
        return Ok(None);
    }
    let mut out: Vec<usize> = chosen.into_iter().map(|i| cands[i]).collect();
    out.sort_unstable();
    Ok(Some(out))
}

/// Which pattern side is subdivided (all degrees ≤ 2) and which is embedded
/// into the clique. Prefers the larger low side, then the designated B side.
fn split_pattern(p: &Pattern) -> Result<(Vec<usize>, Vec<usize>)> {
    let Some(sides) = p.bipartition() else {
        return input("pattern is not bipartite");
    };
    let g = p.graph();
    let side_vertices = |s: Side| (0..g.vertex_count()).filter(|&v| sides[v] == s).collect::<Vec<_>>();
    let (va, vb) = (side_vertices(Side::A), side_vertices(Side::B));
    let low_ok = |vs: &[usize]| vs.iter().all(|&v| g.degree(v) <= 2);
    let low_is_b = match (low_ok(&va), low_ok(&vb)) {
        (false, false) => return input("pattern has a vertex of degree > 2 on each side"),
        (true, false) => false,
        (false, true) => true,
        (true, true) => vb.len() >= va.len(),
    };
    let (high, low) = if low_is_b { (va, vb) } else { (vb, va) };
    let mut pairs: Vec<(usize, usize)> = low
        .iter()
        .filter(|&&v| g.degree(v) == 2)
        .map(|&v| (g.neighbours(v)[0], g.neighbours(v)[1]))
        .collect();
    pairs.sort_unstable();
    if pairs.windows(2).any(|w| w[0] == w[1]) {
        return input("pattern contains a 4-cycle (two subdividers share both ends)");
    }
    Ok((high, low))
}

/// Assigns each low pattern vertex an unused A-vertex adjacent to the images
/// of its neighbours, backtracking over at most `cap` candidates per vertex.
fn assign_low(
    g: &BipartiteGraph,
    pat: &Pattern,
    low: &[usize],
    image: &mut [usize],
    used: &mut [bool],
    cap: usize,
    steps: &mut u64,
) -> bool {
    let Some((&v, rest)) = low.split_first() else {
        return true;
    };
    *steps += 1;
    let ends: Vec<usize> = pat.graph().neighbours(v).iter().map(|&u| image[u]).collect();
    let cands: Vec<usize> = g
        .common_neighbours(Side::B, &ends)
        .into_iter()
        .filter(|&a| !used[a])
        .take(cap)
        .collect();
    for a in cands {
        used[a] = true;
        image[v] = a;
        if assign_low(g, pat, rest, image, used, cap, steps) {
            return true;
        }
        used[a] = false;
    }
    false
}

/// The full pipeline. High-side pattern vertices land on a clique of non-bad
/// pairs in `B`; low-side vertices land in `A`. Every success is re-verified
/// as an injective, edge-preserving map into `g.to_graph()`.
pub fn embed_h(g: &BipartiteGraph, pattern: &Pattern, p: &DrcParams) -> Result<Embedding> {
    p.validate()?;
    let (high, low) = split_pattern(pattern)?;
    let mut log = Vec::new();
    let fail = |stage: &str, reason: String, log: &Vec<StageEntry>| -> crate::Error {
        FailureReport::new(stage, reason).with_log(log.clone()).into()
    };

    let Some(pivot) = select_pivot(g, p.m) else {
        return Err(fail("select_pivot", format!("no vertex has nonnegative surplus at M = {}", p.m), &log));
    };
    log.push(StageEntry::new("select_pivot").with("M", p.m).with("x", pivot.x).with("surplus", pivot.surplus));

    let b_prime = g.neighbours(Side::A, pivot.x).to_vec();
    let a_prime = g.neighbourhood_union(Side::B, &b_prime);
    log.push(
        StageEntry::new("neighbourhoods")
            .with("b_prime", format!("{b_prime:?}"))
            .with("a_prime_size", a_prime.len()),
    );

    let dy = dyadic_select(g, &b_prime)?;
    log.push(
        StageEntry::new("dyadic_select")
            .with("levels", dy.levels)
            .with("j", dy.j)
            .with("a_j_size", dy.a_j.len())
            .with("bucket_weight", dy.bucket_weight)
            .with("total_weight", dy.total_weight),
    );

    let w = match select_witness(g, &dy.a_j, &b_prime, p.bad_threshold) {
        Ok(w) => w,
        Err(crate::Error::Failure(r)) => return Err(fail(&r.stage, r.reason, &log)),
        Err(e) => return Err(e),
    };
    log.push(
        StageEntry::new("select_witness")
            .with("z", w.z)
            .with("k", w.k)
            .with("bad_pairs", w.bad_pairs)
            .with("bad_fraction", w.bad_fraction)
            .with("average_fraction", w.average_fraction),
    );

    let b_set = BitSet::from_indices(g.b_count(), b_prime.iter().copied());
    let cands: Vec<usize> = g.neighbours(Side::A, w.z).iter().copied().filter(|&b| b_set.contains(b)).collect();
    let clique = if high.len() >= 2 {
        clique_nonbad(g, &cands, high.len(), p.bad_threshold)?
    } else {
        Some(cands.iter().copied().take(high.len()).collect()).filter(|c: &Vec<usize>| c.len() == high.len())
    };
    let Some(clique) = clique else {
        return Err(fail(
            "clique_nonbad",
            format!(
                "no {} vertices of N_B'(z) with pairwise codegree >= {}",
                high.len(),
                p.bad_threshold
            ),
            &log,
        ));
    };
    log.push(StageEntry::new("clique_nonbad").with("clique", format!("{clique:?}")));

    let mut image = vec![usize::MAX; pattern.vertex_count()];
    for (&v, &b) in high.iter().zip(&clique) {
        image[v] = b;
    }
    // Degree-2 subdividers first: they are the constrained ones.
    let mut low = low;
    low.sort_by_key(|&v| (std::cmp::Reverse(pattern.graph().degree(v)), v));
    let mut used = vec![false; g.a_count()];
    let mut steps = 0;
    if !assign_low(g, pattern, &low, &mut image, &mut used, p.bad_threshold, &mut steps) {
        return Err(fail(
            "assign_subdividers",
            format!("no injective assignment of the {} subdividing vertices", low.len()),
            &log,
        ));
    }
    log.push(StageEntry::new("assign_subdividers").with("search_steps", steps));

    let map: Vec<usize> = (0..pattern.vertex_count())
        .map(|v| if high.contains(&v) { g.global_index(Side::B, image[v]) } else { image[v] })
        .collect();
    assert!(
        verify_embedding(pattern.graph(), &g.to_graph(), &map),
        "pipeline produced an invalid embedding"
    );
    Ok(Embedding::new(map, log))
}

/// `embed_h` with `M` chosen by [`auto_m`]; fails when that is 0.
pub fn embed_auto(g: &BipartiteGraph, pattern: &Pattern) -> Result<Embedding> {
    let m = auto_m(g);
    if m == 0 {
        return Err(FailureReport::new(
            "auto_m",
            "Hom(C4) does not exceed Hom*(K_{2,1}) + Hom*(K_{1,2}); M would be 0",
        )
        .into());
    }
    embed_h(g, pattern, &DrcParams::for_pattern(pattern, m))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThresholdCheck {
    #[serde(serialize_with = "crate::count::as_decimal")]
    pub lhs: Count,
    /// `n^{2−2c+ε}` with `n = |A| + |B|`.
    pub rhs: f64,
    pub exceeds: bool,
    /// Sides within a factor 2 of each other.
    pub balanced: bool,
}

pub fn drc_threshold_check(g: &BipartiteGraph, c: f64, eps: f64) -> ThresholdCheck {
    let n = (g.a_count() + g.b_count()) as f64;
    let lhs = hom_c4_oriented(g);
    let exponent = 2.0 - 2.0 * c + eps;
    let rhs = n.powf(exponent);
    let exceeds = ln(&lhs) >= exponent * n.ln();
    let (a, b) = (g.a_count(), g.b_count());
    ThresholdCheck {
        lhs,
        rhs,
        exceeds,
        balanced: a <= 2 * b && b <= 2 * a,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::c6;
    use crate::subdivision::{even_cycle, fano_plane, h_t, incidence_subdivision};

    #[test]
    fn pivot_examples() {
        let k33 = BipartiteGraph::complete(3, 3);
        assert_eq!(select_pivot(&k33, 1), Some(Pivot { x: 0, surplus: 9 }));
        let matching = BipartiteGraph::new(3, 3, &[(0, 0), (1, 1), (2, 2)]).unwrap();
        assert_eq!(select_pivot(&matching, 1), None);
        assert_eq!(select_pivot(&BipartiteGraph::new(3, 3, &[]).unwrap(), 1), None);
    }

    #[test]
    fn pivot_scores_sum_to_the_averaging_identity() {
        for g in [c6(), BipartiteGraph::complete(3, 4), even_cycle(5).unwrap()] {
            let total: i128 = (0..g.a_count()).map(|x| pivot_score(&g, x, 2)).sum();
            let c4 = hom_c4_oriented(&g).to_i128().unwrap();
            let stars = (hom_star_oriented(&g, Side::A, 2).unwrap() + hom_star_oriented(&g, Side::B, 2).unwrap())
                .to_i128()
                .unwrap();
            assert_eq!(total, c4 - 2 * stars);
        }
    }

    #[test]
    fn dyadic_examples() {
        // A-vertices with 1, 2, 3 and 5 neighbours in B' = B (|B| = 5).
        let mut edges = Vec::new();
        for (a, d) in [1usize, 2, 3, 5].iter().enumerate() {
            for b in 0..*d {
                edges.push((a, b));
            }
        }
        let g = BipartiteGraph::new(4, 5, &edges).unwrap();
        let r = dyadic_select(&g, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(r.buckets, vec![vec![0], vec![1, 2], vec![3]]);
        assert_eq!((r.j, r.bucket_weight, r.total_weight), (3, 25, 39));
        let k33 = BipartiteGraph::complete(3, 3);
        let r = dyadic_select(&k33, &[0, 1, 2]).unwrap();
        assert_eq!((r.j, r.a_j.clone()), (2, vec![0, 1, 2]));
        let r = dyadic_select(&c6(), &[1]).unwrap();
        assert_eq!(r.buckets, vec![vec![0, 1]]);
        assert!(dyadic_select(&BipartiteGraph::new(2, 2, &[]).unwrap(), &[0]).is_err());
    }

    #[test]
    fn witness_examples() {
        let h = 3;
        let k = BipartiteGraph::complete(h + 1, h + 1);
        let all: Vec<usize> = (0..=h).collect();
        let w = select_witness(&k, &all, &all, h).unwrap();
        assert_eq!((w.z, w.bad_fraction), (0, 0.0));
        let w = select_witness(&c6(), &[0, 1, 2], &[0, 1, 2], 2).unwrap();
        assert_eq!(w.bad_fraction, 1.0);
        let heawood = incidence_subdivision(&fano_plane());
        let pts: Vec<usize> = (0..7).collect();
        let w = select_witness(&heawood, &pts, &pts, 2).unwrap();
        assert_eq!(w.bad_fraction, 1.0);
        let star = BipartiteGraph::new(2, 2, &[(0, 0), (1, 1)]).unwrap();
        assert!(matches!(select_witness(&star, &[0, 1], &[0, 1], 2), Err(crate::Error::Failure(_))));
    }

    #[test]
    fn clique_examples() {
        let k44 = BipartiteGraph::complete(4, 4);
        assert_eq!(clique_nonbad(&k44, &[0, 1, 2, 3], 4, 4).unwrap(), Some(vec![0, 1, 2, 3]));
        assert_eq!(clique_nonbad(&c6(), &[0, 1, 2], 3, 2).unwrap(), None);
        let mut edges = Vec::new();
        for a in 0..3 {
            for b in 0..3 {
                if (a, b) != (0, 0) {
                    edges.push((a, b));
                }
            }
        }
        let k33e = BipartiteGraph::new(3, 3, &edges).unwrap();
        assert_eq!(clique_nonbad(&k33e, &[0, 1, 2], 3, 2).unwrap(), Some(vec![0, 1, 2]));
        assert!(clique_nonbad(&k33e, &[0, 1, 2], 1, 2).is_err());
    }

    #[test]
    fn embeds_into_complete_bipartite() {
        for t in [3, 4] {
            let pat = h_t(t).unwrap();
            let g = BipartiteGraph::complete(36, 36);
            let e = embed_auto(&g, &pat).unwrap();
            assert!(e.injective);
            assert!(verify_embedding(pat.graph(), &g.to_graph(), &e.map));
        }
    }

    #[test]
    fn c8_has_no_c6() {
        let c8 = even_cycle(4).unwrap();
        let pat = h_t(3).unwrap();
        let r = embed_h(&c8, &pat, &DrcParams::for_pattern(&pat, 1));
        assert!(matches!(r, Err(crate::Error::Failure(ref f)) if f.stage == "select_pivot"));
    }

    #[test]
    fn heawood_stalls_at_the_pivot() {
        // Every pair of points shares exactly one line: Hom(C4) = 105 against
        // 126 star homomorphisms, so no pivot clears even M = 1.
        let heawood = incidence_subdivision(&fano_plane());
        assert_eq!(auto_m(&heawood), 0);
        assert_eq!(select_pivot(&heawood, 1), None);
        assert_eq!(pivot_score(&heawood, 0, 1), -3);
        let pat = h_t(3).unwrap();
        let p = DrcParams {
            m: 1,
            h: 6,
            bad_threshold: 1,
        };
        assert!(matches!(embed_h(&heawood, &pat, &p), Err(crate::Error::Failure(_))));
    }

    #[test]
    fn threshold_examples() {
        let r = drc_threshold_check(&BipartiteGraph::new(2, 2, &[]).unwrap(), 0.3, 0.1);
        assert!(!r.exceeds);
        let r = drc_threshold_check(&BipartiteGraph::complete(16, 16), 0.25, 0.1);
        assert_eq!(r.lhs, Count::from(65536u32));
        assert!(r.exceeds);
        let r = drc_threshold_check(&c6(), 0.0, 0.0);
        assert_eq!((r.lhs.clone(), r.rhs, r.exceeds), (Count::from(18u8), 36.0, false));
    }
}
