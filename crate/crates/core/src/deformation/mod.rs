//! δ-families on ℚ(α): differential operators, the concrete `(r, s)` family,
//! the compatibility condition and the coproduct expansion.

mod coproduct;
mod diffop;
mod spec;

pub use coproduct::{canonical_sort, coproduct, coproduct_formal, CoproductTerm, LeftFactor};
pub use diffop::DiffOp;
pub use spec::{make_spec, DeformationSpec, SpecRecord};
