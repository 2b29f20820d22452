//! Engine for the Explorer-Director game on finite connected graphs.
//!
//! The Explorer calls a distance, the Director moves the token to any vertex
//! at exactly that distance, and the Explorer tries to maximize the number of
//! distinct vertices the token ever visits. This crate computes that number
//! exactly, characterizes it through closed vertex sets, evaluates closed-form
//! values for cycles, trees and lattices, and scores fixed (nonadaptive)
//! distance sequences against an adversarial Director.

pub mod closed;
pub mod distance;
pub mod error;
pub mod families;
pub mod formulas;
pub mod graph;
pub mod nonadaptive;
pub mod oracle;
pub mod solver;
pub mod verify;
pub mod vertex_set;

pub use closed::{is_closed, min_closed_containing, min_closed_size, peel, PeelResult};
pub use distance::{apsp, DistanceMatrix};
pub use error::{Error, Result};
pub use families::FamilySpec;
pub use graph::Graph;
pub use nonadaptive::StrategySequence;
pub use oracle::brute_oracle;
pub use solver::{solve, solve_with, GameState, Policy, Solution, SolverConfig, ValueTable};
pub use vertex_set::VertexSet;
