//! Algorithms for extremal problems on graph subdivisions.
//!
//! The crate is organized by concern:
//!
//! - [`graph`], [`weighted`]: immutable graphs, bipartite graphs, codegree
//!   (neighbourhood) graphs.
//! - [`hom`]: homomorphism and labelled-copy counting.
//! - [`regularize`]: almost-regular and balanced bipartite subgraphs.
//! - [`density`]: the weighted-graph toolkit (density, heavy pairs, light support).
//! - [`drc`]: the dependent-random-choice embedding pipeline.
//! - [`structure`]: boundedness, η-sets, good tuples and the tuple-based embedding.
//! - [`subdivision`], [`iso`]: pattern constructors and isomorphism.
//! - [`extremal`]: exact extremal numbers, deletion-method lower bounds, fits.
//! - [`format`]: the plain-text edge-list format.

pub mod bitset;
pub mod count;
pub mod density;
pub mod drc;
pub mod embedding;
pub mod extremal;
pub mod error;
pub mod format;
pub mod graph;
pub mod hom;
pub mod iso;
pub mod random;
pub mod regularize;
pub mod structure;
pub mod subdivision;
pub mod weighted;

pub use count::Count;
pub use embedding::Embedding;
pub use error::{Error, FailureReport, Result, StageEntry};
pub use graph::{BipartiteGraph, BipartiteMap, Graph, Side};
pub use hom::{HomOptions, Pattern};
pub use subdivision::{Hypergraph, Multigraph};
pub use weighted::WeightedGraph;
