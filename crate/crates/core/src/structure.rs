//! Boundedness, η-sets, good tuples, the one-step tuple extension, and the
//! embedding of `H_t` from a good tuple.
//!
//! Thresholds are absolute integers `T` standing for `n^ξ`; [`proof_schedule`]
//! converts the exponent schedule into such integers.

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::count::Count;
use crate::density::{heavy_edge_filter, large_support_set};
use crate::embedding::{verify_embedding, Embedding};
use crate::error::{input, FailureReport, Result, StageEntry};
use crate::graph::{BipartiteGraph, Side};
use crate::hom::{hom_c4_oriented, hom_star_oriented};
use crate::subdivision::h_t;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LBounded {
    #[serde(serialize_with = "crate::count::as_decimal")]
    pub c4_count: Count,
    #[serde(serialize_with = "crate::count::as_decimal")]
    pub k21_count: Count,
    pub bounded: bool,
}

fn a_subset_ok(g: &BipartiteGraph, a: &[usize]) -> Result<()> {
    let mut seen = vec![false; g.a_count()];
    for &x in a {
        if x >= g.a_count() || std::mem::replace(&mut seen[x], true) {
            return input(format!("{x} is out of range or repeated in the A-subset"));
        }
    }
    Ok(())
}

/// `Hom(C4, G[A', B]) ≤ L · Hom*(K_{2,1}, G[A', B])`.
pub fn check_l_bounded(g: &BipartiteGraph, a_prime: &[usize], l: f64) -> Result<LBounded> {
    a_subset_ok(g, a_prime)?;
    let sub = g.restrict_a(a_prime);
    let c4 = hom_c4_oriented(&sub);
    let k21 = hom_star_oriented(&sub, Side::B, 2)?;
    let bounded = c4.to_f64().unwrap_or(f64::INFINITY) <= l * k21.to_f64().unwrap_or(f64::INFINITY);
    Ok(LBounded {
        c4_count: c4,
        k21_count: k21,
        bounded,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DichotomyCase {
    /// `Hom*(K_{1,2}) ≤ Hom*(K_{2,1})`.
    CentreSideLighter,
    /// `Hom*(K_{1,2}) > Hom*(K_{2,1})`.
    CentreSideHeavier,
}

/// The quantities of the two-case boundedness argument on `G[A', B]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DichotomyReport {
    #[serde(serialize_with = "crate::count::as_decimal")]
    pub c4: Count,
    /// `Σ_{a∈A'} deg(a)²`.
    #[serde(serialize_with = "crate::count::as_decimal")]
    pub k12: Count,
    /// `Σ_{b∈B} deg_{A'}(b)²`.
    #[serde(serialize_with = "crate::count::as_decimal")]
    pub k21: Count,
    pub edge_count: usize,
    pub case: DichotomyCase,
    /// `Hom*(K_{2,1}) · |B| ≥ e(A', B)²`.
    pub convexity_holds: bool,
    /// Smallest `L` for which `A'` is `L`-bounded (`None` when both counts vanish).
    pub boundedness_ratio: Option<f64>,
}

pub fn dichotomy(g: &BipartiteGraph, a_prime: &[usize]) -> Result<DichotomyReport> {
    a_subset_ok(g, a_prime)?;
    let sub = g.restrict_a(a_prime);
    let c4 = hom_c4_oriented(&sub);
    let k12 = hom_star_oriented(&sub, Side::A, 2)?;
    let k21 = hom_star_oriented(&sub, Side::B, 2)?;
    let e = sub.edge_count();
    let case = if k12 <= k21 {
        DichotomyCase::CentreSideLighter
    } else {
        DichotomyCase::CentreSideHeavier
    };
    let convexity_holds = &k21 * Count::from(g.b_count()) >= Count::from(e) * Count::from(e);
    let boundedness_ratio = (k21 > Count::from(0u8))
        .then(|| c4.to_f64().unwrap_or(f64::INFINITY) / k21.to_f64().unwrap_or(f64::INFINITY));
    Ok(DichotomyReport {
        c4,
        k12,
        k21,
        edge_count: e,
        case,
        convexity_holds,
        boundedness_ratio,
    })
}

/// `η_T(u) = {a ∈ A \ {u} : 1 ≤ d(u, a) < T}`.
pub fn eta_set(g: &BipartiteGraph, u: usize, t: u64) -> Vec<usize> {
    (0..g.a_count())
        .filter(|&a| a != u)
        .filter(|&a| {
            let d = g.pair_codegree(Side::A, u, a) as u64;
            d >= 1 && d < t
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoodTupleCertificate {
    pub tuple: Vec<usize>,
    pub thresholds: Vec<u64>,
    pub min_extension: usize,
    /// `∩_i η_{T_i}(a_i)`.
    pub extension_set: Vec<usize>,
}

impl GoodTupleCertificate {
    /// Recomputes the codegree windows and the extension set from `g`.
    /// Pair `(a_i, a_{i'})` with `i < i'` is checked against `T_i`.
    pub fn verify(&self, g: &BipartiteGraph) -> bool {
        let j = self.tuple.len();
        if j == 0 || self.thresholds.len() != j || self.tuple.iter().any(|&a| a >= g.a_count()) {
            return false;
        }
        for i in 0..j {
            for k in i + 1..j {
                if self.tuple[i] == self.tuple[k] {
                    return false;
                }
                let d = g.pair_codegree(Side::A, self.tuple[i], self.tuple[k]) as u64;
                if d < 1 || d >= self.thresholds[i] {
                    return false;
                }
            }
        }
        let mut ext = eta_set(g, self.tuple[0], self.thresholds[0]);
        for i in 1..j {
            let other = eta_set(g, self.tuple[i], self.thresholds[i]);
            ext.retain(|a| other.binary_search(a).is_ok());
        }
        ext == self.extension_set && ext.len() >= self.min_extension
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoodTuples {
    pub certificates: Vec<GoodTupleCertificate>,
    pub truncated: bool,
}

/// All codegrees on side A; row `u` lists `d(u, a)` for every `a`.
fn codegree_rows(g: &BipartiteGraph) -> Vec<Vec<u32>> {
    (0..g.a_count())
        .into_par_iter()
        .map(|u| (0..g.a_count()).map(|a| g.pair_codegree(Side::A, u, a) as u32).collect())
        .collect()
}

fn check_thresholds(thresholds: &[u64], min_extension: usize) -> Result<()> {
    if thresholds.is_empty() {
        return input("need at least one threshold");
    }
    if thresholds.windows(2).any(|w| w[1] < w[0]) {
        return input("thresholds must be nondecreasing");
    }
    if min_extension == 0 {
        return input("min_extension must be at least 1");
    }
    Ok(())
}

struct TupleSearch<'a> {
    rows: &'a [Vec<u32>],
    thresholds: &'a [u64],
    min_extension: usize,
}

impl TupleSearch<'_> {
    fn eta(&self, u: usize, t: u64) -> impl Iterator<Item = usize> + '_ {
        self.rows[u]
            .iter()
            .enumerate()
            .filter(move |&(a, &d)| a != u && d >= 1 && (d as u64) < t)
            .map(|(a, _)| a)
    }

    /// Depth-first over extensions of `tuple` whose running intersection is
    /// `ext`; `emit` returns false to stop.
    fn dfs(&self, tuple: &mut Vec<usize>, ext: &[usize], emit: &mut dyn FnMut(&[usize], &[usize]) -> bool) -> bool {
        if tuple.len() == self.thresholds.len() {
            return emit(tuple, ext);
        }
        let t = self.thresholds[tuple.len()];
        for &a in ext {
            let next: Vec<usize> = ext
                .iter()
                .copied()
                .filter(|&b| b != a && self.rows[a][b] >= 1 && (self.rows[a][b] as u64) < t)
                .collect();
            if next.len() < self.min_extension {
                continue;
            }
            tuple.push(a);
            let go_on = self.dfs(tuple, &next, emit);
            tuple.pop();
            if !go_on {
                return false;
            }
        }
        true
    }

    fn search_from(&self, a1: usize, emit: &mut dyn FnMut(&[usize], &[usize]) -> bool) -> bool {
        let ext: Vec<usize> = self.eta(a1, self.thresholds[0]).collect();
        if ext.len() < self.min_extension {
            return true;
        }
        let mut tuple = vec![a1];
        self.dfs(&mut tuple, &ext, emit)
    }
}

/// Ordered good `j`-tuples in lexicographic order, at most `cap` of them.
pub fn enumerate_good_tuples(
    g: &BipartiteGraph,
    thresholds: &[u64],
    min_extension: usize,
    j: usize,
    cap: usize,
) -> Result<GoodTuples> {
    check_thresholds(thresholds, min_extension)?;
    if j != thresholds.len() {
        return input(format!("j = {j} but {} thresholds were given", thresholds.len()));
    }
    let rows = codegree_rows(g);
    let search = TupleSearch {
        rows: &rows,
        thresholds,
        min_extension,
    };
    // Each root keeps at most cap + 1 tuples so truncation is detectable.
    let per_root: Vec<Vec<GoodTupleCertificate>> = (0..g.a_count())
        .into_par_iter()
        .map(|a1| {
            let mut out = Vec::new();
            search.search_from(a1, &mut |tuple, ext| {
                out.push(GoodTupleCertificate {
                    tuple: tuple.to_vec(),
                    thresholds: thresholds.to_vec(),
                    min_extension,
                    extension_set: ext.to_vec(),
                });
                out.len() <= cap
            });
            out
        })
        .collect();
    let mut certificates: Vec<_> = per_root.into_iter().flatten().collect();
    let truncated = certificates.len() > cap;
    certificates.truncate(cap);
    debug_assert!(certificates.iter().all(|c| c.verify(g)));
    Ok(GoodTuples {
        certificates,
        truncated,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExtendStep {
    /// A-vertices `u` such that `(J, u)` is a candidate `(j+1)`-tuple.
    pub u: Vec<usize>,
    /// For each `u`, its neighbours `v` in the extension set with
    /// `0 < d(u, v) < next_threshold`: the extension set of `(J, u)`.
    pub light_neighbours: Vec<Vec<usize>>,
    pub removed_weight: u64,
    pub kept_weight: u64,
    pub d: f64,
    pub guarantee: f64,
}

/// One induction step: the neighbourhood graph on the extension set, heavy
/// pairs (`d ≥ next_threshold`) filtered, then the light-support set.
pub fn extend_step(g: &BipartiteGraph, cert: &GoodTupleCertificate, next_threshold: u64) -> Result<ExtendStep> {
    let last = *cert.thresholds.last().ok_or_else(|| crate::Error::Input("empty certificate".into()))?;
    if next_threshold < last {
        return input(format!("next threshold {next_threshold} is below the last threshold {last}"));
    }
    if !cert.verify(g) {
        return input("certificate does not verify against this graph");
    }
    let ext = &cert.extension_set;
    let w = g.neighbourhood_graph_on(Side::A, ext);
    let filtered = heavy_edge_filter(&w, next_threshold)?;
    let support = large_support_set(&w, next_threshold)?;
    let light_neighbours = support
        .u
        .iter()
        .map(|&i| {
            w.neighbours(i)
                .iter()
                .filter(|&&(_, x)| x < next_threshold)
                .map(|&(v, _)| ext[v])
                .collect()
        })
        .collect();
    Ok(ExtendStep {
        u: support.u.iter().map(|&i| ext[i]).collect(),
        light_neighbours,
        removed_weight: filtered.removed_weight,
        kept_weight: support.light_weight,
        d: support.d,
        guarantee: support.guarantee,
    })
}

/// Kuhn's augmenting paths: `cands[i]` lists the B-vertices allowed for
/// pair `i`. Returns one distinct vertex per pair, if possible.
fn match_pairs(cands: &[Vec<usize>], b_count: usize) -> Option<Vec<usize>> {
    fn augment(i: usize, cands: &[Vec<usize>], seen: &mut [bool], owner: &mut [usize]) -> bool {
        for &b in &cands[i] {
            if seen[b] {
                continue;
            }
            seen[b] = true;
            if owner[b] == usize::MAX || augment(owner[b], cands, seen, owner) {
                owner[b] = i;
                return true;
            }
        }
        false
    }
    let mut owner = vec![usize::MAX; b_count];
    for i in 0..cands.len() {
        let mut seen = vec![false; b_count];
        if !augment(i, cands, &mut seen, &mut owner) {
            return None;
        }
    }
    let mut out = vec![0; cands.len()];
    for (b, &i) in owner.iter().enumerate() {
        if i != usize::MAX {
            out[i] = b;
        }
    }
    Some(out)
}

/// Finds a good `(t−1)`-tuple and a vertex extending it (`t` branch vertices
/// in A with pairwise codegrees in their windows), then gives each of the
/// `C(t, 2)` pairs its own common neighbour in B by bipartite matching.
///
/// The map is indexed like [`h_t`]: branch vertices `0..t`, then one
/// subdivider per pair of `K_t` in lexicographic order. Host indices are
/// those of `g.to_graph()`.
pub fn embed_via_good_tuples(g: &BipartiteGraph, t: usize, thresholds: &[u64], min_extension: usize) -> Result<Embedding> {
    if t < 3 {
        return input("t must be at least 3");
    }
    if thresholds.len() != t - 1 {
        return input(format!("need t - 1 = {} thresholds, got {}", t - 1, thresholds.len()));
    }
    check_thresholds(thresholds, min_extension)?;
    let pattern = h_t(t)?;
    let pairs: Vec<(usize, usize)> = (0..t).flat_map(|i| (i + 1..t).map(move |k| (i, k))).collect();
    let rows = codegree_rows(g);
    let search = TupleSearch {
        rows: &rows,
        thresholds,
        min_extension,
    };
    let (mut tuples, mut extensions) = (0u64, 0u64);
    let mut found: Option<(Vec<usize>, Vec<usize>)> = None;
    for a1 in 0..g.a_count() {
        let go_on = search.search_from(a1, &mut |tuple, ext| {
            tuples += 1;
            for &u in ext {
                extensions += 1;
                let mut branch = tuple.to_vec();
                branch.push(u);
                let cands: Vec<Vec<usize>> = pairs
                    .iter()
                    .map(|&(i, k)| g.common_neighbours(Side::A, &[branch[i], branch[k]]))
                    .collect();
                if let Some(subs) = match_pairs(&cands, g.b_count()) {
                    found = Some((branch, subs));
                    return false;
                }
            }
            true
        });
        if !go_on {
            break;
        }
    }
    let log = vec![StageEntry::new("search")
        .with("good_tuples_tried", tuples)
        .with("extensions_tried", extensions)];
    let Some((branch, subs)) = found else {
        let (stage, reason) = if tuples == 0 {
            ("good_tuple", format!("no good {}-tuple", t - 1))
        } else {
            (
                "subdivider_assignment",
                format!("{extensions} branch sets tried; none admits distinct subdividers"),
            )
        };
        return Err(FailureReport::new(stage, reason).with_log(log).into());
    };
    let mut map: Vec<usize> = branch.clone();
    map.extend(subs.iter().map(|&b| g.global_index(Side::B, b)));
    assert!(verify_embedding(pattern.graph(), &g.to_graph(), &map), "invalid H_t copy");
    let mut log = log;
    log.push(
        StageEntry::new("embedding")
            .with("branch", format!("{branch:?}"))
            .with("subdividers", format!("{subs:?}")),
    );
    Ok(Embedding::new(map, log))
}

/// Exponent schedule of the good-tuple induction for given `(n, t, δ)`:
/// `δ_j = δ/6^{t−j}`, `c = ξ_1 = δ/6^t`, `ξ_j = 2δ_{j−1}` for `j ≥ 2`, and the
/// integer thresholds `T_j = ceil(n^{ξ_j})`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProofSchedule {
    pub c: f64,
    pub deltas: Vec<f64>,
    pub xis: Vec<f64>,
    pub thresholds: Vec<u64>,
}

pub fn proof_schedule(n: u64, t: usize, delta: f64) -> Result<ProofSchedule> {
    if t < 1 || !(delta > 0.0 && delta < 0.25) {
        return input("need t >= 1 and 0 < delta < 1/4");
    }
    let deltas: Vec<f64> = (1..=t).map(|j| delta / 6f64.powi((t - j) as i32)).collect();
    let c = delta / 6f64.powi(t as i32);
    let xis: Vec<f64> = (1..=t).map(|j| if j == 1 { c } else { 2.0 * deltas[j - 2] }).collect();
    let thresholds = xis.iter().map(|&x| (n as f64).powf(x).ceil() as u64).collect();
    Ok(ProofSchedule {
        c,
        deltas,
        xis,
        thresholds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::c6;
    use crate::subdivision::even_cycle;

    #[test]
    fn l_bounded_examples() {
        let k22 = BipartiteGraph::complete(2, 2);
        let r = check_l_bounded(&k22, &[0, 1], 2.0).unwrap();
        assert_eq!((r.c4_count.clone(), r.k21_count.clone(), r.bounded), (16u8.into(), 8u8.into(), true));
        assert!(!check_l_bounded(&k22, &[0, 1], 1.0).unwrap().bounded);
        let g = BipartiteGraph::new(3, 2, &[(0, 0), (1, 1)]).unwrap();
        let r = check_l_bounded(&g, &[2], 0.5).unwrap();
        assert_eq!((r.c4_count, r.bounded), (0u8.into(), true));
    }

    #[test]
    fn eta_examples() {
        assert_eq!(eta_set(&c6(), 0, 2), vec![1, 2]);
        let k44 = BipartiteGraph::complete(4, 4);
        assert!(eta_set(&k44, 0, 4).is_empty());
        assert_eq!(eta_set(&k44, 0, 5), vec![1, 2, 3]);
        assert!(eta_set(&c6(), 0, 1).is_empty());
    }

    #[test]
    fn good_tuple_examples() {
        let m = 5;
        let k = BipartiteGraph::complete(m, m);
        let r = enumerate_good_tuples(&k, &[6, 6], 1, 2, 1000).unwrap();
        assert_eq!(r.certificates.len(), m * (m - 1));
        assert!(r.certificates.iter().all(|c| c.extension_set.len() == m - 2 && c.verify(&k)));
        let r = enumerate_good_tuples(&c6(), &[2, 2], 1, 2, 100).unwrap();
        assert_eq!(r.certificates.len(), 6);
        let first = &r.certificates[0];
        assert_eq!((first.tuple.clone(), first.extension_set.clone()), (vec![0, 1], vec![2]));
        let empty = BipartiteGraph::new(3, 3, &[]).unwrap();
        assert!(enumerate_good_tuples(&empty, &[5, 5], 1, 2, 10).unwrap().certificates.is_empty());
        let capped = enumerate_good_tuples(&k, &[6, 6], 1, 2, 7).unwrap();
        assert_eq!((capped.certificates.len(), capped.truncated), (7, true));
        assert!(enumerate_good_tuples(&k, &[6, 5], 1, 2, 7).is_err());
    }

    #[test]
    fn extend_step_examples() {
        let m = 5;
        let k = BipartiteGraph::complete(m, m);
        let single = &enumerate_good_tuples(&k, &[6], 1, 1, 10).unwrap().certificates[0];
        let step = extend_step(&k, single, 6).unwrap();
        assert_eq!(step.u, vec![1, 2, 3, 4]);
        let pairs = enumerate_good_tuples(&k, &[6, 6], 1, 2, 1000).unwrap().certificates;
        for (u, ln) in step.u.iter().zip(&step.light_neighbours) {
            let c = pairs.iter().find(|c| c.tuple == vec![0, *u]).expect("(a0, u) is good");
            assert_eq!(&c.extension_set, ln);
        }
        let c6 = c6();
        let root = &enumerate_good_tuples(&c6, &[2], 1, 1, 10).unwrap().certificates[0];
        let step = extend_step(&c6, root, 2).unwrap();
        assert_eq!(step.u, vec![1, 2]);
        assert!(step.light_neighbours.iter().all(|l| l.len() == 1));
        // Extension set {1, 2, 3, 4} with every codegree 5: only heavy pairs.
        assert!(extend_step(&k, single, 5).is_err());
        assert!(extend_step(&k, single, 3).is_err());
    }

    #[test]
    fn embedding_examples() {
        let k33 = BipartiteGraph::complete(3, 3);
        let e = embed_via_good_tuples(&k33, 3, &[4, 4], 1).unwrap();
        assert_eq!(&e.map[..3], &[0, 1, 2]);
        assert!(e.injective);
        let c8 = even_cycle(4).unwrap();
        assert!(matches!(embed_via_good_tuples(&c8, 3, &[5, 5], 1), Err(crate::Error::Failure(_))));
        let k66 = BipartiteGraph::complete(6, 6);
        let e = embed_via_good_tuples(&k66, 4, &[7, 7, 7], 1).unwrap();
        assert_eq!(e.map.len(), 10);
        assert!(e.injective);
    }

    #[test]
    fn dichotomy_cases() {
        let g = BipartiteGraph::complete(2, 5);
        let r = dichotomy(&g, &[0, 1]).unwrap();
        assert_eq!(r.case, DichotomyCase::CentreSideHeavier);
        assert!(r.convexity_holds);
        let r = dichotomy(&c6(), &[0, 1, 2]).unwrap();
        assert_eq!((r.case, r.boundedness_ratio), (DichotomyCase::CentreSideLighter, Some(18.0 / 12.0)));
    }

    #[test]
    fn schedule() {
        let s = proof_schedule(1 << 20, 3, 0.2).unwrap();
        assert!((s.c - 0.2 / 216.0).abs() < 1e-15);
        assert!(s.xis.windows(2).all(|w| w[0] < w[1]));
        for j in 2..=3 {
            assert!((3.0 * s.xis[j - 1] - 0.2 / 6f64.powi(3 - j as i32)).abs() < 1e-12);
        }
        assert!(s.thresholds.iter().all(|&t| t >= 2));
    }
}
