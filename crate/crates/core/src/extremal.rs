//! Exact extremal numbers for small `n`, the deletion-method lower bound,
//! exponent fitting, and the branch/subdivider classification of `H_t` maps.

use std::collections::HashSet;
use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::BitSet;
use crate::count::{Count, Tally};
use crate::error::{input, resource, Result};
use crate::graph::{BipartiteGraph, Graph, Side};
use crate::hom::{find_injective, for_each_hom, hom_generic, HomOptions, Pattern};
use crate::iso::{automorphism_count, canonical_form, orbit_representatives, CanonicalGraph};
use crate::random::{gnp, stream_rng};

/// Largest `n` accepted by [`extremal_exact`] for patterns on six or more vertices.
pub const EXACT_GATE: usize = 10;
/// Cap on the number of isomorphism classes kept on one level of the search.
pub const CLASS_BUDGET: usize = 4_000_000;
/// Cap on the estimated search cost of copy enumeration in [`deletion_lower_bound`].
pub const COPY_BUDGET: f64 = 2e9;
/// Cap on the number of ordered branch tuples in [`classify_subdivision_homs`].
pub const BRANCH_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug, Serialize)]
pub struct ExtremalReport {
    pub n: usize,
    pub pattern: String,
    pub max_edges: usize,
    pub witness: Graph,
    pub graphs_examined: u64,
    /// Wall-clock time; left out of serialized reports so they stay reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

fn describe(p: &Pattern) -> String {
    format!("{}v{}e", p.vertex_count(), p.edge_count())
}

/// Whether some copy of `h` in `g` uses vertex `v`; `reps` are orbit
/// representatives of `Aut(h)`.
fn copy_through(h: &Pattern, reps: &[usize], g: &Graph, v: usize) -> bool {
    reps.iter().any(|&r| {
        let mut allowed = vec![BitSet::full(g.vertex_count()); h.vertex_count()];
        allowed[r] = BitSet::from_indices(g.vertex_count(), [v]);
        let opts = HomOptions {
            injective: true,
            allowed: Some(allowed),
        };
        find_injective(h, g, &opts).expect("validated pattern").is_some()
    })
}

fn add_vertex(g: &Graph, nbrs: u64) -> Graph {
    let k = g.vertex_count();
    let mut edges = g.edge_list();
    edges.extend((0..k).filter(|&u| nbrs >> u & 1 == 1).map(|u| (u, k)));
    Graph::new(k + 1, &edges).expect("in range")
}

/// `ex(n, H)` by vertex-by-vertex generation of all `H`-free graphs up to
/// isomorphism. Being `H`-free is closed under deleting a vertex, so every
/// `H`-free graph on `k + 1` vertices extends one on `k`; classes are merged
/// through canonical forms. On the last level each class only tries its
/// largest `H`-free extension, found by scanning neighbourhoods in order of
/// decreasing size. A new copy of `H` must use the added vertex, so only
/// copies through it are searched.
pub fn extremal_exact(n: usize, pattern: &Pattern) -> Result<ExtremalReport> {
    let start = Instant::now();
    let h = pattern.graph();
    if h.edge_count() == 0 {
        return input("pattern has no edges, so every graph contains it once n ≥ |V(H)|");
    }
    if h.vertex_count() >= 6 && n > EXACT_GATE {
        return resource(format!(
            "exact search is limited to n ≤ {EXACT_GATE} for this pattern; use deletion-lb for a sampled lower bound"
        ));
    }
    if n > 63 {
        return resource("exact search needs n ≤ 63");
    }
    let done = |witness: Graph, examined| ExtremalReport {
        n,
        pattern: describe(pattern),
        max_edges: witness.edge_count(),
        witness,
        graphs_examined: examined,
        elapsed: start.elapsed(),
    };
    if n < h.vertex_count() {
        return Ok(done(Graph::complete(n), 1));
    }
    let reps = orbit_representatives(h)?;
    let isolated_in_h = (0..h.vertex_count()).any(|v| h.degree(v) == 0);

    // Every graph on fewer than |V(H)| vertices is H-free.
    let mut level: Vec<CanonicalGraph> = vec![canonical_form(&Graph::empty(1))?];
    let mut examined = 1u64;
    for k in 1..n - 1 {
        let children: Vec<Vec<CanonicalGraph>> = level
            .par_iter()
            .map(|c| {
                let g = c.to_graph();
                let mut out = Vec::new();
                for nbrs in 0..1u64 << k {
                    let child = add_vertex(&g, nbrs);
                    if k + 1 >= h.vertex_count() && copy_through(pattern, &reps, &child, k) {
                        continue;
                    }
                    out.push(canonical_form(&child).expect("small graph"));
                }
                out
            })
            .collect();
        examined += children.iter().map(|c| c.len() as u64).sum::<u64>();
        let set: HashSet<CanonicalGraph> = children.into_iter().flatten().collect();
        if set.len() > CLASS_BUDGET {
            return resource(format!(
                "{} classes on {} vertices exceed the budget of {CLASS_BUDGET}; use deletion-lb",
                set.len(),
                k + 1
            ));
        }
        level = set.into_iter().collect();
        level.sort_unstable();
    }

    // An isolated new vertex keeps the graph H-free unless H has isolated vertices.
    let floor = if isolated_in_h {
        0
    } else {
        level.iter().map(CanonicalGraph::edge_count).max().unwrap_or(0)
    };
    let k = n - 1;
    let best: Vec<(usize, Option<CanonicalGraph>, u64)> = level
        .par_iter()
        .map(|c| {
            let e = c.edge_count();
            if e + k < floor {
                return (0, None, 0);
            }
            let g = c.to_graph();
            let mut tried = 0u64;
            for size in (0..=k).rev() {
                if e + size < floor {
                    break;
                }
                let mut winners = Vec::new();
                for nbrs in subsets_of_size(k, size) {
                    tried += 1;
                    let child = add_vertex(&g, nbrs);
                    if !copy_through(pattern, &reps, &child, k) {
                        winners.push(canonical_form(&child).expect("small graph"));
                    }
                }
                if let Some(w) = winners.into_iter().min() {
                    return (e + size, Some(w), tried);
                }
            }
            (0, None, tried)
        })
        .collect();
    examined += best.iter().map(|b| b.2).sum::<u64>();
    let (_, witness, _) = best
        .into_iter()
        .filter(|b| b.1.is_some())
        .max_by(|x, y| x.0.cmp(&y.0).then_with(|| y.1.cmp(&x.1)))
        .expect("the empty graph is always reachable when H has an edge");
    let witness = witness.expect("filtered").to_graph();
    assert!(
        find_injective(pattern, &witness, &HomOptions::injective())?.is_none(),
        "extremal witness contains the pattern"
    );
    Ok(done(witness, examined))
}

/// All `size`-subsets of `0..k` as bitmasks, in increasing numeric order.
fn subsets_of_size(k: usize, size: usize) -> impl Iterator<Item = u64> {
    (0..1u64 << k).filter(move |m| m.count_ones() as usize == size)
}

#[derive(Clone, Debug, Serialize)]
pub struct DeletionResult {
    pub n: usize,
    pub p: f64,
    pub gamma: f64,
    pub edges_before: usize,
    #[serde(serialize_with = "crate::count::as_decimal")]
    pub copies_found: Count,
    pub edges_after: usize,
    pub output: Graph,
    pub seed: u64,
}

/// Exponent `γ` of the deletion construction, so that `Θ(n^γ)` edges survive.
///
/// With `v = |V(H)|`, `e = |E(H)|` and `p = c·n^{γ−2}`, the sample has about
/// `c·n^γ/2` edges and `n^v·p^e/|Aut(H)| ∝ n^{v + e(γ−2)}` copies.
/// Deleting one edge per copy loses at most half the edges once the two
/// exponents agree: `v + e(γ − 2) = γ`, that is `γ = 2 − (v − 2)/(e − 1)`.
/// For `H_t` (`v = t + C(t,2)`, `e = t(t−1)`) this is
/// `3/2 − (t − 3/2)/(t² − t − 1)`, which is 1.2 at `t = 3`.
pub fn deletion_exponent(pattern: &Pattern) -> Result<f64> {
    let (v, e) = (pattern.vertex_count() as f64, pattern.edge_count() as f64);
    if pattern.edge_count() < 2 {
        return input("the deletion construction needs a pattern with at least 2 edges");
    }
    Ok(2.0 - (v - 2.0) / (e - 1.0))
}

/// Samples `G(n, p)` with `p = c·n^{γ−2}` (so about `c·n^γ/2` edges), then deletes one edge from every
/// copy of the pattern. The constant `c = (|Aut(H)|/(2e))^{1/(e−1)}`
/// maximizes `c/2 − c^e/|Aut(H)|`, the leading term of edges minus copies.
pub fn deletion_lower_bound(n: usize, pattern: &Pattern, exponent_override: Option<f64>, seed: u64) -> Result<DeletionResult> {
    let gamma = match exponent_override {
        Some(g) if g > 0.0 && g <= 2.0 => {
            deletion_exponent(pattern)?;
            g
        }
        Some(g) => return input(format!("exponent {g} must lie in (0, 2]")),
        None => deletion_exponent(pattern)?,
    };
    if n < 2 {
        return input("n must be at least 2");
    }
    let aut = automorphism_count(pattern.graph())? as f64;
    let e = pattern.edge_count() as f64;
    let c = (aut / (2.0 * e)).powf(1.0 / (e - 1.0));
    let p = (c * (n as f64).powf(gamma - 2.0)).min(1.0);
    let v = pattern.vertex_count() as f64;
    // Expected injective maps plus the partial maps the search walks through.
    let np = n as f64 * p;
    let estimate = (n as f64).powf(v) * p.powf(e) + n as f64 * np.max(1.0).powf(v - 1.0);
    if estimate > COPY_BUDGET {
        return resource(format!(
            "copy enumeration is estimated at {estimate:.3e} steps, above the budget {COPY_BUDGET:.0e}"
        ));
    }
    let sample = gnp(n, p, &mut stream_rng(seed, 0));
    let mut removed: HashSet<(usize, usize)> = HashSet::new();
    let mut maps = Tally::new();
    let h_edges = pattern.graph().edge_list();
    for_each_hom(pattern, &sample, &HomOptions::injective(), |m| {
        maps.add(1);
        let image: Vec<(usize, usize)> = h_edges
            .iter()
            .map(|&(a, b)| (m[a].min(m[b]), m[a].max(m[b])))
            .collect();
        if image.iter().all(|x| !removed.contains(x)) {
            removed.insert(*image.iter().min().expect("pattern has edges"));
        }
        ControlFlow::Continue(())
    })?;
    let copies = maps.finish() / Count::from(aut as u64);
    let mut removed: Vec<_> = removed.into_iter().collect();
    removed.sort_unstable();
    let output = sample.without_edges(&removed);
    assert!(
        find_injective(pattern, &output, &HomOptions::injective())?.is_none(),
        "deletion output still contains the pattern"
    );
    assert!(Count::from(output.edge_count()) + &copies >= Count::from(sample.edge_count()));
    Ok(DeletionResult {
        n,
        p,
        gamma,
        edges_before: sample.edge_count(),
        copies_found: copies,
        edges_after: output.edge_count(),
        output,
        seed,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScalingFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

/// Least-squares line through `(ln n, ln edges)`.
pub fn scaling_fit(points: &[(f64, f64)]) -> Result<ScalingFit> {
    if points.len() < 3 {
        return input("a fit needs at least 3 points");
    }
    if points.iter().any(|&(n, e)| !(n > 0.0 && e > 0.0 && n.is_finite() && e.is_finite())) {
        return input("degenerate regression: every n and edge count must be positive");
    }
    let mut ns: Vec<f64> = points.iter().map(|p| p.0).collect();
    ns.sort_by(f64::total_cmp);
    ns.dedup();
    if ns.len() < 2 {
        return input("degenerate regression: all points share one n");
    }
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let k = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / k, ys.iter().sum::<f64>() / k);
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = xs.iter().zip(&ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    let ss_tot: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let r_squared = if ss_tot <= f64::EPSILON * k { 1.0 } else { 1.0 - ss_res / ss_tot };
    Ok(ScalingFit {
        slope,
        intercept,
        r_squared,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomClassification {
    #[serde(serialize_with = "crate::count::as_decimal")]
    pub total: Count,
    #[serde(serialize_with = "crate::count::as_decimal")]
    pub nondegenerate: Count,
    #[serde(serialize_with = "crate::count::as_decimal")]
    pub degenerate: Count,
}

/// Maps of `H_t` with the `t` branch vertices sent to distinct vertices of A
/// and each subdivider to a common neighbour of its pair, split by whether
/// the subdividers land on distinct vertices.
pub fn classify_subdivision_homs(g: &BipartiteGraph, t: usize) -> Result<HomClassification> {
    if t < 2 {
        return input("t must be at least 2");
    }
    let a = g.a_count() as u64;
    let tuples = (0..t as u64).try_fold(1u64, |acc, i| acc.checked_mul(a.saturating_sub(i)));
    match tuples {
        Some(x) if x <= BRANCH_BUDGET => {}
        _ => return resource(format!("more than {BRANCH_BUDGET} ordered branch tuples")),
    }
    let pairs: Vec<(usize, usize)> = (0..t).flat_map(|i| (i + 1..t).map(move |k| (i, k))).collect();
    let roots: Vec<usize> = (0..g.a_count()).collect();
    let (total, nondeg) = roots
        .par_iter()
        .map(|&r| {
            let mut total = Tally::new();
            let mut nondeg = Tally::new();
            let mut tuple = vec![r];
            branch_tuples(g, t, &mut tuple, &mut |tuple| {
                let cands: Vec<Vec<usize>> = pairs
                    .iter()
                    .map(|&(i, k)| g.common_neighbours(Side::A, &[tuple[i], tuple[k]]))
                    .collect();
                let prod = cands.iter().try_fold(Count::from(1u8), |acc, c| {
                    (!c.is_empty()).then(|| acc * Count::from(c.len()))
                });
                if let Some(prod) = prod {
                    total.add_big(&prod);
                    nondeg.add(distinct_choices(&cands, &mut vec![false; g.b_count()], 0));
                }
            });
            (total, nondeg)
        })
        .reduce(|| (Tally::new(), Tally::new()), |x, y| (x.0.merge(y.0), x.1.merge(y.1)));
    let (total, nondegenerate) = (total.finish(), nondeg.finish());
    Ok(HomClassification {
        degenerate: &total - &nondegenerate,
        total,
        nondegenerate,
    })
}

fn branch_tuples(g: &BipartiteGraph, t: usize, tuple: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if tuple.len() == t {
        f(tuple);
        return;
    }
    for a in 0..g.a_count() {
        if !tuple.contains(&a) {
            tuple.push(a);
            branch_tuples(g, t, tuple, f);
            tuple.pop();
        }
    }
}

/// Number of ways to pick pairwise distinct representatives from `cands[i..]`.
fn distinct_choices(cands: &[Vec<usize>], used: &mut [bool], i: usize) -> u128 {
    if i == cands.len() {
        return 1;
    }
    let mut n = 0;
    for &b in &cands[i] {
        if !used[b] {
            used[b] = true;
            n += distinct_choices(cands, used, i + 1);
            used[b] = false;
        }
    }
    n
}

/// Labelled copies of `pattern` in `g` divided by `|Aut(pattern)|`.
pub fn copy_count(pattern: &Pattern, g: &Graph) -> Result<Count> {
    let maps = hom_generic(pattern, g, &HomOptions::injective())?;
    Ok(maps / Count::from(automorphism_count(pattern.graph())?))
}

/// `n^γ` as a float, for comparing deletion output against its target.
pub fn target_edges(n: usize, gamma: f64) -> f64 {
    (n as f64).powf(gamma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::c6;
    use crate::subdivision::{h_t, subdivision_pattern};

    /// ex(n, H) by trying every labelled graph on n vertices.
    fn brute_ex(n: usize, h: &Pattern) -> usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        (0..1u64 << pairs.len())
            .into_par_iter()
            .filter_map(|mask| {
                let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
                let g = Graph::new(n, &edges).unwrap();
                find_injective(h, &g, &HomOptions::injective()).unwrap().is_none().then_some(edges.len())
            })
            .max()
            .unwrap()
    }

    #[test]
    fn extremal_small_cases() {
        let c6p = Pattern::cycle(6).unwrap();
        assert_eq!(extremal_exact(5, &c6p).unwrap().max_edges, 10);
        assert_eq!(extremal_exact(7, &Pattern::single_edge()).unwrap().max_edges, 0);
        assert!(extremal_exact(4, &Pattern::new(Graph::empty(2)).unwrap()).is_err());
        assert!(matches!(extremal_exact(11, &c6p), Err(crate::Error::Resource(_))));
        let k3 = Pattern::cycle(3).unwrap();
        for n in 3..=7 {
            assert_eq!(extremal_exact(n, &k3).unwrap().max_edges, n * n / 4, "Mantel n={n}");
        }
    }

    #[test]
    fn extremal_matches_brute_force() {
        let c4 = Pattern::cycle(4).unwrap();
        let p3 = Pattern::path(2).unwrap();
        for n in 4..=6 {
            assert_eq!(extremal_exact(n, &c4).unwrap().max_edges, brute_ex(n, &c4));
            assert_eq!(extremal_exact(n, &p3).unwrap().max_edges, brute_ex(n, &p3));
        }
        let c6p = Pattern::cycle(6).unwrap();
        let r = extremal_exact(6, &c6p).unwrap();
        assert_eq!(r.max_edges, brute_ex(6, &c6p));
        assert_eq!(r.witness.vertex_count(), 6);
    }

    #[test]
    fn extremal_with_isolated_pattern_vertex() {
        // An edge plus an isolated vertex: on n ≥ 3 vertices only the empty graph avoids it.
        let h = Pattern::new(Graph::new(3, &[(0, 1)]).unwrap()).unwrap();
        assert_eq!(extremal_exact(2, &h).unwrap().max_edges, 1);
        assert_eq!(extremal_exact(4, &h).unwrap().max_edges, brute_ex(4, &h));
    }

    #[test]
    fn deletion_examples() {
        let c6p = Pattern::cycle(6).unwrap();
        assert!((deletion_exponent(&c6p).unwrap() - 1.2).abs() < 1e-12);
        let h3 = h_t(3).unwrap();
        assert!((deletion_exponent(&h3).unwrap() - 1.2).abs() < 1e-12);
        let h4 = h_t(4).unwrap();
        let t = 4.0f64;
        assert!((deletion_exponent(&h4).unwrap() - (1.5 - (t - 1.5) / (t * t - t - 1.0))).abs() < 1e-12);
        let r = deletion_lower_bound(256, &c6p, None, 3).unwrap();
        let target = target_edges(256, 1.2);
        assert!(r.edges_after as f64 >= target / 4.0 && r.edges_after as f64 <= 4.0 * target);
        assert!(Count::from(r.edges_after) + &r.copies_found >= Count::from(r.edges_before));
        assert_eq!(copy_count(&c6p, &r.output).unwrap(), Count::from(0u8));
        let again = deletion_lower_bound(256, &c6p, None, 3).unwrap();
        assert_eq!(again.output, r.output);
        // Many edges in the pattern, tiny host: no copies expected, nothing deleted.
        let k4 = Pattern::new(Graph::complete(4)).unwrap();
        let r = deletion_lower_bound(6, &k4, Some(0.5), 1).unwrap();
        assert_eq!((r.edges_after, r.copies_found), (r.edges_before, Count::from(0u8)));
        assert!(deletion_lower_bound(10, &Pattern::single_edge(), None, 0).is_err());
    }

    #[test]
    fn fit_examples() {
        let pts: Vec<(f64, f64)> = [64.0, 128.0, 256.0, 512.0].iter().map(|&n: &f64| (n, n.powf(1.2))).collect();
        let f = scaling_fit(&pts).unwrap();
        assert!((f.slope - 1.2).abs() < 1e-9 && (f.r_squared - 1.0).abs() < 1e-9);
        let flat = scaling_fit(&[(10.0, 5.0), (20.0, 5.0), (40.0, 5.0)]).unwrap();
        assert!(flat.slope.abs() < 1e-12);
        assert!(scaling_fit(&[(10.0, 5.0), (20.0, 6.0)]).is_err());
        assert!(scaling_fit(&[(10.0, 5.0), (10.0, 6.0), (10.0, 7.0)]).is_err());
    }

    #[test]
    fn classification_examples() {
        let k33 = BipartiteGraph::complete(3, 3);
        let r = classify_subdivision_homs(&k33, 3).unwrap();
        assert_eq!((r.total, r.nondegenerate), (Count::from(162u8), Count::from(36u8)));
        let r = classify_subdivision_homs(&c6(), 3).unwrap();
        assert_eq!((r.total.clone(), r.nondegenerate.clone()), (Count::from(6u8), Count::from(6u8)));
        let r = classify_subdivision_homs(&BipartiteGraph::complete(3, 2), 3).unwrap();
        assert_eq!((r.total, r.nondegenerate), (Count::from(48u8), Count::from(0u8)));
    }

    /// Brute force: injective maps of the subdivided K_t with branch vertices
    /// pinned to A, counted by the generic hom counter.
    #[test]
    fn classification_nondegenerate_matches_hom_counter() {
        for (g, t) in [(BipartiteGraph::complete(3, 3), 3), (c6(), 3), (BipartiteGraph::complete(4, 6), 4)] {
            let host = g.to_graph();
            let pattern = subdivision_pattern(&Graph::complete(t)).unwrap();
            let sides = pattern.bipartition().unwrap();
            let a_set = BitSet::from_indices(host.vertex_count(), 0..g.a_count());
            let b_set = BitSet::from_indices(host.vertex_count(), g.a_count()..host.vertex_count());
            let allowed = sides.iter().map(|s| if *s == Side::A { a_set.clone() } else { b_set.clone() }).collect();
            let opts = HomOptions {
                injective: true,
                allowed: Some(allowed),
            };
            let direct = hom_generic(&pattern, &host, &opts).unwrap();
            assert_eq!(classify_subdivision_homs(&g, t).unwrap().nondegenerate, direct);
        }
    }
}
