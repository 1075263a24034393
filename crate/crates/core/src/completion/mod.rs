//! Topological generators `T₀, α₀` of the completion, rebasing series onto
//! them, and the centralizer solver for degree-zero elements.

mod centralizer;
mod generators;
mod rebase;

pub use centralizer::{case2_leading_constraint, centralizer_solve};
pub use generators::{bezout_pair, make_generators, GeneratorPair};
pub use rebase::{evaluate, rebase, rebase_with_budget, PairRecord, RebasedRecord, RebasedSeries};
