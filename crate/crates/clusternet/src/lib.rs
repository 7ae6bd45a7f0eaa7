//! Cluster graphs of integer transition systems.
//!
//! States are vectors of nonnegative integers (counts of species); moves
//! are integer vectors applied wherever the result stays nonnegative.
//! Reversible moves partition the reachable states into *clusters*;
//! irreversible moves connect clusters. This crate reconstructs the
//! cluster graph reachable from given initial states without enumerating
//! cluster members: reversible moves become a binomial ideal, a Gröbner
//! basis normal form names each cluster, and colon ideals under
//! coordinate-maximizing term orders decide which irreversible moves apply
//! inside a cluster. On the reconstructed graph the crate answers
//! reachability queries, lists all essentially different pathways, finds
//! arcs no pathway can avoid, and bounds cluster counts per degree by
//! counting standard monomials.
//!
//! A brute-force oracle (explicit state-graph exploration) ships alongside
//! as the ground truth for the test suites, and [`reactions`] ingests
//! mass/charge balance matrices to enumerate the elementary reactions a
//! chemistry model allows.
//!
//! ```
//! use clusternet::algebra::BasisCache;
//! use clusternet::cluster::{build_cluster_graph, GraphCaps, ReconstructionMode};
//! use clusternet::grading::Grading;
//! use clusternet::algebra::State;
//!
//! // species A <-> B reversibly, B -> C irreversibly
//! let grading = Grading::single(vec![1, 1, 1]).unwrap();
//! let cache = BasisCache::build(&[vec![1, -1, 0]], &grading, &[vec![0, -1, 1]]).unwrap();
//! let graph = build_cluster_graph(
//!     &cache,
//!     &[vec![0, -1, 1]],
//!     &[State::new(vec![1, 0, 0])],
//!     ReconstructionMode::Direct,
//!     GraphCaps::default(),
//! )
//! .unwrap();
//! assert_eq!(graph.nodes().len(), 2);
//! assert_eq!(graph.arcs().len(), 1);
//! ```

pub mod algebra;
pub mod analysis;
pub mod cluster;
pub mod dot;
pub mod error;
pub mod grading;
pub mod model;
pub mod oracle;
pub mod parse;
pub mod reactions;
pub mod testgen;

pub use algebra::{BasisCache, Binomial, Exponent, GroebnerBasis, State, TermOrder};
pub use cluster::{ClusterArc, ClusterGraph, GraphCaps, ReconstructionMode};
pub use error::{Error, Result};
pub use grading::Grading;
pub use model::{GraphFile, Model, ModelFile};
