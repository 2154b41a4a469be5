//! Exact and approximate solvers for α-Fixed Cardinality Graph Partitioning.
//!
//! Given a simple graph `G`, a cardinality `k` and a weight `0 ≤ α ≤ 1`, the
//! problem asks for a vertex set `S` with `|S| = k` that maximizes (or
//! minimizes) the coverage
//!
//! ```text
//! cov_α(S) = (1 − α) · m(S) + α · m(S, V ∖ S)
//! ```
//!
//! where `m(S)` counts edges inside `S` and `m(S, V ∖ S)` counts edges leaving
//! it. All objective values are exact rationals.
//!
//! The crate is organised by solver family:
//!
//! * [`exact`]: exhaustive enumeration and branch-and-bound (the oracle),
//! * [`approx`]: the degree-greedy baseline and two FPT approximation schemes,
//! * [`subexp`]: the degree-prefix / tree-decomposition dynamic program,
//! * [`generators`]: random and structured instance families.

pub mod approx;
pub mod error;
pub mod exact;
pub mod generators;
pub mod graph;
pub mod instance;
pub mod objective;
pub mod ordering;
pub mod rational;
pub mod subexp;

pub use error::{Error, Result};
pub use graph::Graph;
pub use instance::{Algorithm, Branch, Direction, Instance, Provenance, Solution};
pub use objective::{cov_alpha, cut_counts, Weights};
pub use ordering::{DegreeOrdering, OrderDirection};
pub use rational::{Alpha, Rational};
