//! Minimum-cost edge-connectivity augmentation with weighted links.
//!
//! Given a `(k-1)`-edge-connected multigraph and candidate links, each with a
//! weight in `1..=p` and a cost, find a cheapest link set of total weight at
//! most `p` whose addition makes the graph `k`-edge-connected. Every link is
//! a single edge; its weight only counts against the budget `p`.

pub mod cost;
pub mod cut_structure;
pub mod cuts;
pub mod error;
pub mod generate;
pub mod graph;
pub mod instance;
pub mod io;
pub mod kernel;
pub mod metric;
pub mod node_conn;
pub mod oracle;
pub mod solution;
pub mod solver;
pub mod trace;
pub mod zero_two;

pub use cost::{Cost, Rational};
pub use error::{AugError, Result};
pub use graph::{EdgeId, MultiGraph, NodeId};
pub use instance::{Instance, Link, LinkId, LinkKey, Partition};
pub use solution::{Solution, SolutionLink, Status};
pub use trace::{ReductionTrace, TraceStep};
