//! Named graphs accepted by `--pattern`.
//!
//! | name | object |
//! |------|--------|
//! | `edge` | `K_2` |
//! | `C<k>` | cycle on `k` vertices |
//! | `P<k>` | path with `k` edges |
//! | `K<t>`, `Kt:<t>` | complete graph |
//! | `Kst:<s>,<t>` | complete bipartite graph, `s`-side in A |
//! | `Ht:<t>` | `K_t` with every edge subdivided once |
//! | `cube` | the 3-cube |
//! | `crown:<m>` | `K_{m,m}` minus a perfect matching |
//! | `heawood` | incidence graph of the Fano plane |
//! | `fano`, `KtUniform:<t>,<r>`, `CompleteRPartite:<t>,<r>` | hypergraphs; need `--subdivide 1` |
//! | `gnp:<n>,<p>` | `G(n, p)` from `--seed` |
//! | `bip-gnp:<a>,<b>,<p>` | random bipartite graph from `--seed` |
//!
//! `--subdivide k` replaces each edge by a path of length `k + 1`; for a
//! hypergraph, `--subdivide 1` gives its incidence graph.

use subdiv_core::error::Error;
use subdiv_core::random::{bipartite_gnp, gnp, stream_rng};
use subdiv_core::subdivision::{
    cube, fano_plane, family, h_t, incidence_subdivision, subdivide_k, subdivision_pattern, crown, FamilyMember,
    FamilyName,
};
use subdiv_core::{BipartiteGraph, Graph, Hypergraph, Multigraph, Pattern, Result, Side};

#[derive(Clone, Debug)]
pub enum Shape {
    Graph(Graph),
    /// A graph whose bipartition is part of its definition.
    Bipartite(BipartiteGraph),
    /// `K_t` subdivided once, kept as a pattern to retain its sides.
    Subdivided(Pattern),
}

impl Shape {
    pub fn to_graph(&self) -> Graph {
        match self {
            Shape::Graph(g) => g.clone(),
            Shape::Bipartite(b) => b.to_graph(),
            Shape::Subdivided(p) => p.graph().clone(),
        }
    }

    pub fn to_pattern(&self) -> Result<Pattern> {
        match self {
            Shape::Graph(g) => Pattern::new(g.clone()),
            Shape::Bipartite(b) => {
                let sides = (0..b.a_count() + b.b_count())
                    .map(|v| if v < b.a_count() { Side::A } else { Side::B })
                    .collect();
                Pattern::with_sides(b.to_graph(), sides)
            }
            Shape::Subdivided(p) => Ok(p.clone()),
        }
    }
}

enum Named {
    Plain(Shape),
    Hyper(Hypergraph),
}

fn bad(name: &str) -> Error {
    Error::Input(format!("unknown pattern `{name}`; see `subdiv-lab gen --help` for the accepted names"))
}

fn nums<T: std::str::FromStr>(name: &str, args: &str, count: usize) -> Result<Vec<T>> {
    let parts: Vec<&str> = args.split(',').map(str::trim).collect();
    if parts.len() != count {
        return Err(bad(name));
    }
    parts.iter().map(|p| p.parse().map_err(|_| bad(name))).collect()
}

fn named(name: &str, seed: u64) -> Result<Named> {
    let plain = |g| Ok(Named::Plain(Shape::Graph(g)));
    let hyper = |f: FamilyName| match family(f)? {
        FamilyMember::Graph(g) => Ok(Named::Plain(Shape::Graph(g))),
        FamilyMember::Hypergraph(h) => Ok(Named::Hyper(h)),
    };
    match name {
        "edge" => return plain(Graph::complete(2)),
        "cube" => return plain(cube()),
        "heawood" => return Ok(Named::Plain(Shape::Bipartite(incidence_subdivision(&fano_plane())))),
        "fano" => return Ok(Named::Hyper(fano_plane())),
        _ => {}
    }
    if let Some((head, args)) = name.split_once(':') {
        return match head {
            "Kt" => plain(Graph::complete(nums::<usize>(name, args, 1)?[0])),
            "Kst" => {
                let v = nums::<usize>(name, args, 2)?;
                if v[0] == 0 || v[1] == 0 {
                    return Err(bad(name));
                }
                Ok(Named::Plain(Shape::Bipartite(BipartiteGraph::complete(v[0], v[1]))))
            }
            "Ht" => Ok(Named::Plain(Shape::Subdivided(h_t(nums::<usize>(name, args, 1)?[0])?))),
            "crown" => Ok(Named::Plain(Shape::Bipartite(crown(nums::<usize>(name, args, 1)?[0])))),
            "KtUniform" => {
                let v = nums::<usize>(name, args, 2)?;
                hyper(FamilyName::KtUniform(v[0], v[1]))
            }
            "CompleteRPartite" => {
                let v = nums::<usize>(name, args, 2)?;
                hyper(FamilyName::CompleteRPartite(v[0], v[1]))
            }
            "gnp" => {
                let v = nums::<f64>(name, args, 2)?;
                plain(gnp(count_arg(name, v[0])?, prob(name, v[1])?, &mut stream_rng(seed, 0)))
            }
            "bip-gnp" => {
                let v = nums::<f64>(name, args, 3)?;
                let (a, b) = (count_arg(name, v[0])?, count_arg(name, v[1])?);
                Ok(Named::Plain(Shape::Bipartite(bipartite_gnp(a, b, prob(name, v[2])?, &mut stream_rng(seed, 0)))))
            }
            _ => Err(bad(name)),
        };
    }
    let (head, rest) = name.split_at(1.min(name.len()));
    let k: usize = rest.parse().map_err(|_| bad(name))?;
    match head {
        "C" => plain(Pattern::cycle(k)?.graph().clone()),
        "P" => plain(Pattern::path(k)?.graph().clone()),
        "K" => plain(Graph::complete(k)),
        _ => Err(bad(name)),
    }
}

fn count_arg(name: &str, x: f64) -> Result<usize> {
    if x >= 0.0 && x.fract() == 0.0 && x <= 1e6 {
        Ok(x as usize)
    } else {
        Err(bad(name))
    }
}

fn prob(name: &str, p: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&p) {
        Ok(p)
    } else {
        Err(Error::Input(format!("`{name}`: probability must lie in [0, 1]")))
    }
}

/// Resolves `name`, then applies `--subdivide`.
pub fn build(name: &str, subdivide: Option<usize>, seed: u64) -> Result<Shape> {
    match (named(name, seed)?, subdivide) {
        (Named::Plain(s), None) => Ok(s),
        (Named::Plain(s), Some(1)) => Ok(Shape::Subdivided(subdivision_pattern(&s.to_graph())?)),
        (Named::Plain(s), Some(k)) => Ok(Shape::Graph(subdivide_k(&Multigraph::from(&s.to_graph()), k)?)),
        (Named::Hyper(h), Some(1)) => Ok(Shape::Bipartite(incidence_subdivision(&h))),
        (Named::Hyper(_), _) => Err(Error::Input(format!("`{name}` is a hypergraph; pass --subdivide 1"))),
    }
}
