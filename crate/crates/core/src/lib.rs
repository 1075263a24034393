//! Exact arithmetic for deformed Laurent series rings `L((T⁻¹; δ̃))` over
//! `L = ℚ(α)` and for the completions of the Weyl division ring they contain.
//!
//! The crate is organised bottom-up:
//!
//! - [`arith`]: rationals, polynomials and rational functions over ℚ.
//! - [`binomial`]: generalized binomials, bracket symbols and brute-force
//!   checks of the combinatorial identities behind the product formulas.
//! - [`deformation`]: δ-families as differential operators, the
//!   compatibility condition and the coproduct expansion.
//! - [`series`]: truncated deformed Laurent series with the deformed product,
//!   inversion, commutators and the right-handed mirror ring.
//! - [`weyl`]: the Weyl algebra `A₁` in the PBW basis, its degree maps, the
//!   embedding into the series ring and the leading-symbol map.
//! - [`completion`]: topological generators, rebasing onto them, and the
//!   centralizer solver.

pub mod arith;
pub mod binomial;
pub mod completion;
pub mod deformation;
pub mod degree;
pub mod error;
pub mod series;
pub mod weyl;

pub use arith::{Poly, Rat, RatFun};
pub use degree::Degree;
pub use error::{Error, Result};
