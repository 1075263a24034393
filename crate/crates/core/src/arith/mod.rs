//! Exact coefficient arithmetic: rationals, polynomials over ℚ and the
//! rational function field ℚ(α).

mod modgcd;
pub mod parse;
pub mod poly;
pub mod rat;
pub mod ratfun;

pub use parse::parse_ratfun;
pub use poly::Poly;
pub use rat::{int, rat, Rat};
pub use ratfun::RatFun;
