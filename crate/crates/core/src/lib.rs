//! Partial triple systems and extremal 3-graphs with bounded codegree.
//!
//! The crate answers one question at desk scale: how many edges can a 3-graph
//! on `n` vertices carry when every pair of vertices lies in at most `Δ₂`
//! edges and no `ν + 1` edges are pairwise disjoint? It provides
//!
//! - exact measurements on 3-graphs and multigraphs ([`measure`]),
//! - the closed-form bound functions `g` and `f` ([`bounds`]),
//! - Steiner/λ-fold triple systems and pairwise balanced designs ([`designs`]),
//! - maximum partial triple systems with a prescribed leave matching ([`mpts`]),
//! - extremal 3-graph constructions and certificates ([`extremal`]),
//! - brute-force oracles used to cross-check all of the above ([`oracle`]).
//!
//! Everything here is `no_std` with `alloc`; file formats, timing and the
//! command-line front end live in the `tripack` crate.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod blossom;
pub mod bounds;
pub mod designs;
mod error;
pub mod extremal;
pub mod measure;
pub mod mpts;
pub mod oracle;
mod packing;
mod perm;
mod types;

pub use error::{Error, Result};
pub use perm::Permutation;
pub use types::{binom2, Hypergraph3, Multigraph, Pair, Triple, TripleSystem, Vertex};
