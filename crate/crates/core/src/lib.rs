//! Exact solvers for spanning trees with few branch vertices.
//!
//! A branch vertex has degree at least three in a spanning tree. The crate
//! minimizes their number ([`solve_mbv`]), their total cost
//! ([`solve_cbv`]), and answers the two related covering questions: the
//! fewest pieces in a path-spider cover ([`solve_psc`]) and in a path
//! partition ([`solve_pp`]). Running time is exponential only in the
//! modular-width or the neighborhood diversity of the input.
//!
//! ```
//! use branchwise::{solve_mbv, Graph, SolverConfig};
//!
//! let g = Graph::star(4);
//! let answer = solve_mbv(&g, &SolverConfig::default()).unwrap();
//! assert_eq!(answer.b, 1);
//! ```

// Index loops mirror the matrix and per-module formulations they implement.
#![allow(clippy::needless_range_loop)]

pub mod cbv;
pub mod cli;
pub mod corpus;
pub mod cover;
pub mod decomp;
pub mod error;
mod flow;
pub mod graph;
pub mod ilp;
pub mod io;
pub mod mbv;
pub mod nd;
pub mod reference;
pub mod tree;

pub use cbv::{solve_cbv, CbvAnswer};
pub use cover::{CoverRecord, PathPiece};
pub use decomp::{decompose, ParseNode, QuotientKind};
pub use error::{Error, Result};
pub use graph::{Graph, VertexId, WeightedGraph};
pub use ilp::SearchBudget;
pub use mbv::{solve_mbv, solve_pp, solve_psc, MbvAnswer, SolverConfig};
pub use nd::{type_partition, ClassKind, TypePartition};
pub use tree::SpanningTreeResult;
