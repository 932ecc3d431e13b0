//! Explicit colourings and embeddings, each paired with a check of its
//! postcondition.

mod avoid;
mod constellation;
mod rainbow_trees;
mod star;
mod tree;

pub use avoid::{avoid_colouring, component_mono_colouring, mode_for, verify_avoiding, AvoidMode};
pub use constellation::{
    constellation_arity, constellation_arrow_tree, find_mono_or_rainbow, mono_or_rainbow_for, normalised_size, ConstellationWitness, PatternWitness,
};
pub use rainbow_trees::{disjoint_rainbow_trees, rainbow_tree_params, QStatus, RainbowTreeParams, RainbowTreeReport, RainbowTreesOutcome};
pub use star::{greedy_rainbow_embed, spanning_completion, star_arrow_tree, GreedyOutcome, StarArrowTree};
pub use tree::{child_keyed, complete_tree_size, LazyColouredTree, LazyTree, RootedTree, DEFAULT_VERTEX_BUDGET};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("input graph is not a forest")]
    NotAForest,
    #[error("input graph is not a tree")]
    NotATree,
    #[error("{what} exceeds the vertex budget {budget}")]
    Budget { what: String, budget: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("rainbow tree extraction stalled at height {height}: found {found} trees, quota {quota}")]
    Stalled { height: usize, found: usize, quota: usize },
    #[error("property Q does not hold on the host")]
    PropertyQFails,
    #[error("assertion violated: {0}")]
    AssertionViolation(String),
}

/// `T(d, h)` as a materialised rooted tree.
pub fn complete_ary_tree(d: usize, h: usize, vertex_budget: usize) -> Result<RootedTree, ConstructionError> {
    RootedTree::complete(d, h, vertex_budget)
}
