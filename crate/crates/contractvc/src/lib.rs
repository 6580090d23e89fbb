//! Exact decision-and-witness solver for **Contraction(vc)**: given a graph
//! `G` and integers `k`, `d`, can contracting at most `k` edges lower the
//! minimum vertex cover size by at least `d`?
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`] — simple graphs, contraction with provenance, rank, forests;
//! * [`digraph`] — directed multigraphs, condensation and the constrained
//!   directed max-cut dynamic program;
//! * [`exact`] — exact vertex cover, odd cycle transversal and matchings;
//! * [`oracles`] — exhaustive deciders used as ground truth;
//! * [`pipeline`] — the XP algorithm with witness extraction;
//! * [`generators`] — hardness constructions and seeded random instances.

pub mod bits;
pub mod digraph;
pub mod error;
pub mod exact;
pub mod generators;
pub mod graph;
pub mod instance;
pub mod oracles;
pub mod pipeline;

pub use error::{Error, Result};
pub use graph::{edge, ContractionMap, Edge, EdgeSet, Graph, Partition, VertexId, VertexSet};
pub use instance::{Answer, Branch, CvcInstance, EifInstance, MisInstance, SolveStats, Verdict};
pub use pipeline::{solve, solve_with, SolveOptions};
