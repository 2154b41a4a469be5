//! Exact solving through degree prefixes and tree-decomposition dynamic
//! programming, for Max with `α ≥ 1/3` and Min with `α ≤ 1/3`.
//!
//! In those ranges the lexicographically smallest optimum (with respect to
//! the degree ordering) dominates the prefix that ends at its last vertex.
//! [`solve_subexponential`] therefore tries every prefix, skips prefixes that
//! cannot be dominated by `k` vertices or whose decomposition is too wide,
//! and solves the rest with a weighted DP whose boundary weights account for
//! edges leaving the prefix.

pub mod domination;
pub mod dp;
pub mod exchange;
pub mod pipeline;
pub mod treedec;

pub use domination::{greedy_dominating_set, is_dominating};
pub use dp::{dp_solve_prefix, PrefixSolution, PrefixSubproblem};
pub use exchange::{check_exchange_lemma, ExchangeWitness};
pub use pipeline::{
    default_width_budget, solve_subexponential, solve_subexponential_traced, PrefixStatus,
    PrefixTrace, SubexpReport,
};
pub use treedec::{tree_decomposition_heuristic, NodeKind, TreeDecomposition};
