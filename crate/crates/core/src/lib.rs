//! Exact computation and verification toolkit for overlapping families of
//! k-subsets.
//!
//! A sequence of families `B_0, ..., B_s` of k-subsets of `[n]` is
//! *overlapping* when no `s + 1` pairwise disjoint sets can be picked from
//! `s + 1` distinct families. The central quantity is the weighted extremal
//! function
//!
//! ```text
//! f_p(n, k, s) = max { p_0 |B_0| + ... + p_s |B_s| : B_0 ⊆ ... ⊆ B_s overlapping }
//! ```
//!
//! The crate provides the exact integer and set-family primitives, matching
//! solvers, closed-form bounds in exact rational arithmetic, two independent
//! exhaustive solvers for `f_p`, and randomized harnesses that replay the
//! averaging arguments behind the upper bounds.

pub mod bounds;
pub mod combinatorics;
pub mod cyclic;
mod error;
pub mod family;
pub mod matching;
pub mod rational;
pub mod search;
pub mod suites;

pub use bounds::{BoundReport, WeightVector};
pub use combinatorics::{binom, BigCount, KSet};
pub use error::{Error, Result};
pub use family::{Chain, Family};
pub use matching::BipartiteGraph;
pub use search::{ExtremalRecord, SearchLimits, SolverKind};

