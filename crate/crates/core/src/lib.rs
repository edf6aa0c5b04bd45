//! Shortest token-sliding reconfiguration of dominating sets on trees and
//! interval graphs, and of hitting sets of subtree families on trees.
//!
//! Both solvers produce sequences whose length equals the minimum-cost
//! matching lower bound between the two configurations, which makes them
//! optimal. The [`oracle`] module checks this by brute force at small scale.
//!
//! - [`tree::reconf_tree`] — linear time, compressed `(from, to, count)` output.
//! - [`interval_reconfig::reconf_interval`] — greedy moves plus matching repair.
//! - [`matching`] — exact and fast interval matchers, normalization and rematching.

pub mod error;
pub mod format;
pub mod gen;
pub mod graph;
pub mod interval;
pub mod interval_reconfig;
pub mod matching;
pub mod moves;
pub mod multiset;
pub mod oracle;
pub mod tree;

/// Vertices are dense ids `0..n`.
pub type Vertex = usize;

pub use error::{Error, Result};
pub use graph::{Graph, RootedTree, SetSystem};
pub use interval::{IntervalRepresentation, Relation};
pub use interval_reconfig::Reachability;
pub use matching::{MatchCost, Matching};
pub use moves::{Move, MoveSequence};
pub use multiset::TokenMultiset;
