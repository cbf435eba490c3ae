//! Homomorphism and labelled-copy counting.
//!
//! Conventions: every `Hom` count is a count of maps (ordered), and labelled
//! copies are injective maps. Oriented counts fix which side of the host a
//! given colour class of the pattern lands in.

use std::ops::ControlFlow;

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;

use crate::bitset::BitSet;
use crate::count::{falling_factorial, factorial, ln, Count, Tally};
use crate::error::{input, resource, Result};
use crate::graph::{BipartiteGraph, Graph, Side};

pub const MAX_PATTERN_VERTICES: usize = 16;

/// A small graph `H` used as the source of homomorphisms, optionally with a
/// designated proper bipartition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    graph: Graph,
    sides: Option<Vec<Side>>,
}

impl Pattern {
    pub fn new(graph: Graph) -> Result<Self> {
        if graph.vertex_count() > MAX_PATTERN_VERTICES {
            return resource(format!(
                "pattern has {} vertices; at most {MAX_PATTERN_VERTICES} are supported",
                graph.vertex_count()
            ));
        }
        Ok(Pattern { graph, sides: None })
    }

    /// Pattern with an explicit bipartition, which must be proper.
    pub fn with_sides(graph: Graph, sides: Vec<Side>) -> Result<Self> {
        if sides.len() != graph.vertex_count() {
            return input("bipartition labelling has the wrong length");
        }
        if graph.edges().any(|(u, v)| sides[u] == sides[v]) {
            return input("bipartition labelling is not proper");
        }
        let mut p = Pattern::new(graph)?;
        p.sides = Some(sides);
        Ok(p)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    /// The designated bipartition, or a computed one (first vertex of each
    /// component on side A); `None` when the pattern is not bipartite.
    pub fn bipartition(&self) -> Option<Vec<Side>> {
        if let Some(s) = &self.sides {
            return Some(s.clone());
        }
        self.graph.bipartition().map(|c| {
            c.into_iter()
                .map(|b| if b { Side::B } else { Side::A })
                .collect()
        })
    }

    pub fn cycle(k: usize) -> Result<Self> {
        if k < 3 {
            return input("cycles need at least 3 vertices");
        }
        let edges: Vec<_> = (0..k).map(|i| (i, (i + 1) % k)).collect();
        Pattern::new(Graph::new(k, &edges)?)
    }

    /// Path with `edges` edges.
    pub fn path(edges: usize) -> Result<Self> {
        let e: Vec<_> = (0..edges).map(|i| (i, i + 1)).collect();
        Pattern::new(Graph::new(edges + 1, &e)?)
    }

    pub fn single_edge() -> Self {
        Pattern::new(Graph::new(2, &[(0, 1)]).unwrap()).unwrap()
    }

    pub fn single_vertex() -> Self {
        Pattern::new(Graph::empty(1)).unwrap()
    }

    /// `K_{s,t}` with the `s`-side (vertices `0..s`) on side A.
    pub fn complete_bipartite(s: usize, t: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for i in 0..s {
            for j in 0..t {
                edges.push((i, s + j));
            }
        }
        let sides = (0..s + t)
            .map(|v| if v < s { Side::A } else { Side::B })
            .collect();
        Pattern::with_sides(Graph::new(s + t, &edges)?, sides)
    }
}

/// Restrictions on the maps being counted.
#[derive(Clone, Debug, Default)]
pub struct HomOptions {
    /// Count only injective maps (labelled copies).
    pub injective: bool,
    /// Optional allowed host images per pattern vertex.
    pub allowed: Option<Vec<BitSet>>,
}

impl HomOptions {
    pub fn all() -> Self {
        HomOptions::default()
    }

    pub fn injective() -> Self {
        HomOptions {
            injective: true,
            allowed: None,
        }
    }
}

/// Search order: each component in BFS order from its highest-degree
/// vertex; `back[i]` holds the order positions of earlier neighbours.
struct Plan {
    order: Vec<usize>,
    back: Vec<Vec<usize>>,
}

impl Plan {
    fn new(h: &Graph, component: &[usize]) -> Plan {
        let mut order = Vec::with_capacity(component.len());
        let mut placed = vec![false; h.vertex_count()];
        let mut remaining: Vec<usize> = component.to_vec();
        while !remaining.is_empty() {
            let root = *remaining
                .iter()
                .max_by_key(|&&v| (h.degree(v), std::cmp::Reverse(v)))
                .unwrap();
            let mut queue = std::collections::VecDeque::from([root]);
            placed[root] = true;
            while let Some(u) = queue.pop_front() {
                order.push(u);
                for &w in h.neighbours(u) {
                    if !placed[w] {
                        placed[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            remaining.retain(|&v| !placed[v]);
        }
        let mut pos = vec![usize::MAX; h.vertex_count()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let back = order
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                h.neighbours(v)
                    .iter()
                    .map(|&w| pos[w])
                    .filter(|&p| p < i)
                    .collect()
            })
            .collect();
        Plan { order, back }
    }
}

struct Search<'a> {
    plan: &'a Plan,
    g: &'a Graph,
    opts: &'a HomOptions,
}

impl Search<'_> {
    fn admissible(&self, depth: usize, c: usize, images: &[usize]) -> bool {
        let p = self.plan.order[depth];
        if let Some(allowed) = &self.opts.allowed {
            if !allowed[p].contains(c) {
                return false;
            }
        }
        if self.opts.injective && images.contains(&c) {
            return false;
        }
        self.plan.back[depth]
            .iter()
            .skip(1)
            .all(|&b| self.g.has_edge(images[b], c))
    }

    fn candidates<'s>(&'s self, depth: usize, images: &'s [usize]) -> Box<dyn Iterator<Item = usize> + 's> {
        let back = &self.plan.back[depth];
        let base: Box<dyn Iterator<Item = usize>> = match back.first() {
            None => Box::new(0..self.g.vertex_count()),
            Some(&b) => Box::new(self.g.neighbours(images[b]).iter().copied()),
        };
        Box::new(base.filter(move |&c| {
            let p = self.plan.order[depth];
            if let Some(allowed) = &self.opts.allowed {
                if !allowed[p].contains(c) {
                    return false;
                }
            }
            if self.opts.injective && images.contains(&c) {
                return false;
            }
            back.iter().skip(1).all(|&b| self.g.has_edge(images[b], c))
        }))
    }

    fn count(&self, depth: usize, images: &mut Vec<usize>, tally: &mut Tally) {
        if depth + 1 == self.plan.order.len() {
            tally.add(self.candidates(depth, images).count() as u128);
            return;
        }
        let cands: Vec<usize> = self.candidates(depth, images).collect();
        for c in cands {
            images.push(c);
            self.count(depth + 1, images, tally);
            images.pop();
        }
    }

    fn visit(
        &self,
        depth: usize,
        images: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if depth == self.plan.order.len() {
            return f(images);
        }
        let cands: Vec<usize> = self.candidates(depth, images).collect();
        for c in cands {
            debug_assert!(self.admissible(depth, c, images));
            images.push(c);
            let flow = self.visit(depth + 1, images, f);
            images.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }

    fn total(&self) -> BigUint {
        if self.plan.order.is_empty() {
            return BigUint::from(1u8);
        }
        let roots: Vec<usize> = self.candidates(0, &[]).collect();
        if self.plan.order.len() == 1 {
            return BigUint::from(roots.len());
        }
        roots
            .into_par_iter()
            .map(|r| {
                let mut tally = Tally::new();
                let mut images = vec![r];
                self.count(1, &mut images, &mut tally);
                tally
            })
            .reduce(Tally::new, Tally::merge)
            .finish()
    }
}

fn validate(h: &Pattern, g: &Graph, opts: &HomOptions) -> Result<()> {
    if h.vertex_count() > MAX_PATTERN_VERTICES {
        return resource(format!(
            "pattern has {} vertices; at most {MAX_PATTERN_VERTICES} are supported",
            h.vertex_count()
        ));
    }
    if let Some(a) = &opts.allowed {
        if a.len() != h.vertex_count() || a.iter().any(|s| s.len() != g.vertex_count()) {
            return input("allowed-image sets do not match pattern and host sizes");
        }
    }
    Ok(())
}

fn components(h: &Graph) -> Vec<Vec<usize>> {
    let mut seen = vec![false; h.vertex_count()];
    let mut out = Vec::new();
    for s in 0..h.vertex_count() {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut i = 0;
        while i < comp.len() {
            for &w in h.neighbours(comp[i]) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Number of homomorphisms `h → g` under `opts`, by backtracking over vertex
/// maps with adjacency pruning. Non-injective counts factor over the
/// components of `h`.
pub fn hom_generic(h: &Pattern, g: &Graph, opts: &HomOptions) -> Result<Count> {
    validate(h, g, opts)?;
    if opts.injective {
        let all: Vec<usize> = (0..h.vertex_count()).collect();
        let plan = Plan::new(h.graph(), &all);
        return Ok(Search { plan: &plan, g, opts }.total());
    }
    let mut product = BigUint::from(1u8);
    for comp in components(h.graph()) {
        let plan = Plan::new(h.graph(), &comp);
        let c = Search { plan: &plan, g, opts }.total();
        if c.is_zero() {
            return Ok(c);
        }
        product *= c;
    }
    Ok(product)
}

/// Visits every map allowed by `opts`; the slice passed to `f` is indexed by
/// pattern vertex. Stops early when `f` breaks.
pub fn for_each_hom(
    h: &Pattern,
    g: &Graph,
    opts: &HomOptions,
    mut f: impl FnMut(&[usize]) -> ControlFlow<()>,
) -> Result<()> {
    validate(h, g, opts)?;
    let all: Vec<usize> = (0..h.vertex_count()).collect();
    let plan = Plan::new(h.graph(), &all);
    let search = Search { plan: &plan, g, opts };
    let mut by_vertex = vec![0; h.vertex_count()];
    let mut images = Vec::with_capacity(h.vertex_count());
    let _ = search.visit(0, &mut images, &mut |imgs: &[usize]| {
        for (i, &p) in plan.order.iter().enumerate() {
            by_vertex[p] = imgs[i];
        }
        f(&by_vertex)
    });
    Ok(())
}

/// First injective map found under `opts`, indexed by pattern vertex.
pub fn find_injective(h: &Pattern, g: &Graph, opts: &HomOptions) -> Result<Option<Vec<usize>>> {
    let mut opts = opts.clone();
    opts.injective = true;
    let mut found = None;
    for_each_hom(h, g, &opts, |m| {
        found = Some(m.to_vec());
        ControlFlow::Break(())
    })?;
    Ok(found)
}

/// `|Hom(C4, G)|` with one fixed colour class of `C4` in A:
/// `Σ_{a∈A} Σ_{(u,v)∈N(a)²} d*(u,v)` where `d*(u,u) = deg(u)`.
///
/// Computed as `Σ_{(u,v)} d*(u,v)²` over ordered pairs of the smaller side,
/// which is the same trace of the fourth power of the biadjacency product.
pub fn hom_c4_oriented(g: &BipartiteGraph) -> Count {
    let side = if g.a_count() <= g.b_count() { Side::A } else { Side::B };
    let n = g.side_len(side);
    (0..n)
        .into_par_iter()
        .map(|u| {
            let mut t = Tally::new();
            if g.degree(side, u) == 0 {
                return t;
            }
            let du = g.degree(side, u) as u128;
            t.add(du * du);
            for v in u + 1..n {
                let c = g.pair_codegree(side, u, v) as u128;
                t.add(2 * c * c);
            }
            t
        })
        .reduce(Tally::new, Tally::merge)
        .finish()
}

/// `Σ_{v ∈ centre_side} deg(v)^k`: homomorphisms of the star `K_{1,k}` with
/// the centre on `centre_side`. With `k = 2`, `centre_side = B` this is
/// `Hom*(K_{2,1})` (pair in A) and `centre_side = A` gives `Hom*(K_{1,2})`.
pub fn hom_star_oriented(g: &BipartiteGraph, centre_side: Side, k: u32) -> Result<Count> {
    if k == 0 {
        return input("stars need at least one leaf");
    }
    let mut t = Tally::new();
    for v in 0..g.side_len(centre_side) {
        t.add_big(&BigUint::from(g.degree(centre_side, v)).pow(k));
    }
    Ok(t.finish())
}

/// Injective copies of `K_{s,t}` with sides distinguished:
/// `Σ_S t!·C(|N(S)|, t)` over ordered `s`-tuples `S` of distinct vertices.
///
/// Tuples are enumerated as increasing sets (times `s!`) and a branch is cut
/// as soon as its common neighbourhood has fewer than `t` vertices.
pub fn count_kst_labelled(g: &Graph, s: usize, t: usize) -> Result<Count> {
    if s == 0 || s > t {
        return input(format!("need 1 <= s <= t, got s={s}, t={t}"));
    }
    if s + t > g.vertex_count() {
        return input(format!(
            "K_{{{s},{t}}} has more vertices than the {}-vertex host",
            g.vertex_count()
        ));
    }
    fn rec(g: &Graph, s: usize, t: usize, last: usize, common: &[usize], depth: usize, tally: &mut Tally) {
        if depth == s {
            tally.add_big(&falling_factorial(common.len() as u64, t as u64));
            return;
        }
        for v in last + 1..g.vertex_count() {
            if g.degree(v) < t {
                continue;
            }
            let next = crate::graph::sorted_intersection(common, g.neighbours(v));
            if next.len() >= t {
                rec(g, s, t, v, &next, depth + 1, tally);
            }
        }
    }
    let sets = (0..g.vertex_count())
        .into_par_iter()
        .filter(|&v| g.degree(v) >= t)
        .map(|v| {
            let mut tally = Tally::new();
            rec(g, s, t, v, g.neighbours(v), 1, &mut tally);
            tally
        })
        .reduce(Tally::new, Tally::merge)
        .finish();
    Ok(sets * factorial(s as u64))
}

/// Both sides of the weakly-norming inequality
/// `(hom(L,G)/n^{|L|})^{1/e(L)} <= (hom(K_{s,t},G)/n^{s+t})^{1/st}`.
#[derive(Clone, Debug, PartialEq)]
pub struct NormingCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub log_lhs: f64,
    pub log_rhs: f64,
    pub holds: bool,
}

pub const NORMING_LOG_TOLERANCE: f64 = 1e-9;

pub fn norming_check(g: &Graph, s: usize, t: usize, l: &Pattern) -> Result<NormingCheck> {
    if l.edge_count() == 0 {
        return input("L must have at least one edge");
    }
    if g.vertex_count() == 0 {
        return input("host graph is empty");
    }
    let kst = Pattern::complete_bipartite(s, t)?;
    if l.vertex_count() > s + t || find_injective(l, kst.graph(), &HomOptions::all())?.is_none() {
        return input(format!("L is not a subgraph of K_{{{s},{t}}}"));
    }
    let ln_n = (g.vertex_count() as f64).ln();
    let hom_l = hom_generic(l, g, &HomOptions::all())?;
    let hom_k = hom_generic(&kst, g, &HomOptions::all())?;
    let log_lhs = (ln(&hom_l) - l.vertex_count() as f64 * ln_n) / l.edge_count() as f64;
    let log_rhs = (ln(&hom_k) - (s + t) as f64 * ln_n) / (s * t) as f64;
    let holds = if log_lhs == f64::NEG_INFINITY {
        true
    } else {
        log_lhs <= log_rhs + NORMING_LOG_TOLERANCE
    };
    Ok(NormingCheck {
        lhs: log_lhs.exp(),
        rhs: log_rhs.exp(),
        log_lhs,
        log_rhs,
        holds,
    })
}
