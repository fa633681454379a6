//! Edge-degree constrained subgraphs (EDCS) and the matching sparsifiers
//! built on top of them.
//!
//! The crate is `no_std` and only needs `alloc`. Everything in here is a pure
//! function of its inputs; file formats, reports and parallel drivers live in
//! the `edcs-cli` companion crate.
//!
//! Layout:
//! - [`graph`]: immutable simple graphs, matchings and edge-set helpers.
//! - [`matching`]: exact maximum matching (blossom contraction and
//!   Hopcroft-Karp) plus verification.
//! - [`hall`]: deficiency witnesses for bipartite graphs.
//! - [`edcs`]: the local-search construction, its potential, verification and
//!   the degree-balance probe.
//! - [`protocol`], [`stochastic`], [`fault`]: the three applications.
//! - [`generate`], [`enumerate`]: deterministic instance generators and
//!   exhaustive small-graph corpora.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod combin;
pub mod edcs;
pub mod enumerate;
pub mod error;
pub mod fault;
pub mod generate;
pub mod graph;
pub mod hall;
pub mod matching;
pub mod params;
pub mod protocol;
pub mod ratio;
pub mod seed;
pub mod stochastic;

pub use edcs::{build_edcs, Edcs, EdcsParams, PotentialTrace, Violation};
pub use error::{Error, Result};
pub use graph::{Edge, Graph, Matching};
pub use matching::{maximum_matching, verify_matching};
pub use ratio::Ratio;
