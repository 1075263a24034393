//! Evaluation of parsed expressions in the Weyl algebra or in a deformed
//! Laurent series ring.

use std::sync::Arc;

use dlaurent::deformation::DeformationSpec;
use dlaurent::series::DeformedSeries;
use dlaurent::weyl::{embed, WeylElement};
use dlaurent::{Error, Rat, RatFun};
use num_traits::Zero;
use thiserror::Error;

use crate::expr::{Atom, Expr};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Weyl,
    Series,
    Embed,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::Weyl => "weyl",
            Mode::Series => "series",
            Mode::Embed => "embed",
        }
    }
}

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("'{atom}' is not available in {mode} mode")]
    AtomNotAllowed { atom: &'static str, mode: &'static str },

    #[error("negative exponent {0} in the Weyl algebra")]
    NegativeWeylExponent(i64),

    #[error("only nonzero scalars are invertible in the Weyl algebra")]
    NotInvertible,

    #[error(transparent)]
    Math(#[from] Error),
}

fn atom_name(a: Atom) -> &'static str {
    match a {
        Atom::P => "p",
        Atom::Q => "q",
        Atom::Alpha => "alpha",
        Atom::T => "T",
    }
}

pub fn eval_weyl(e: &Expr) -> Result<WeylElement, EvalError> {
    Ok(match e {
        Expr::Atom(Atom::P) => WeylElement::p(),
        Expr::Atom(Atom::Q) => WeylElement::q(),
        Expr::Atom(a) => return Err(EvalError::AtomNotAllowed { atom: atom_name(*a), mode: Mode::Weyl.name() }),
        Expr::Num(c) => WeylElement::scalar(c.clone()),
        Expr::Neg(a) => eval_weyl(a)?.neg(),
        Expr::Add(a, b) => eval_weyl(a)?.add(&eval_weyl(b)?),
        Expr::Sub(a, b) => eval_weyl(a)?.sub(&eval_weyl(b)?),
        Expr::Mul(a, b) => eval_weyl(a)?.mul(&eval_weyl(b)?),
        Expr::Pow(a, n) => {
            let base = eval_weyl(a)?;
            match u32::try_from(*n) {
                Ok(n) => base.pow(n),
                Err(_) => return Err(EvalError::NegativeWeylExponent(*n)),
            }
        }
        Expr::Inv(a) => {
            let z = eval_weyl(a)?;
            let c = z.coeff(0, 0);
            if z.terms().len() != 1 || c.is_zero() {
                return Err(EvalError::NotInvertible);
            }
            WeylElement::scalar(Rat::from_integer(1.into()) / c)
        }
        Expr::Comm(a, b) => eval_weyl(a)?.commutator(&eval_weyl(b)?),
    })
}

/// Evaluates with every leaf known above `work`. `p`, `q` are only read in
/// embed mode, where they stand for their images under the embedding.
fn series_at(e: &Expr, mode: Mode, spec: &Arc<DeformationSpec>, work: i64) -> Result<DeformedSeries, EvalError> {
    let rec = |x: &Expr| series_at(x, mode, spec, work);
    Ok(match e {
        Expr::Atom(Atom::Alpha) => DeformedSeries::alpha(spec, work),
        Expr::Atom(Atom::T) => DeformedSeries::t_pow(spec, 1, work),
        Expr::Atom(a @ (Atom::P | Atom::Q)) => {
            if mode != Mode::Embed {
                return Err(EvalError::AtomNotAllowed { atom: atom_name(*a), mode: mode.name() });
            }
            let w = if *a == Atom::P { WeylElement::p() } else { WeylElement::q() };
            embed(spec, &w, work)?
        }
        Expr::Num(c) => DeformedSeries::constant(spec, RatFun::constant(c.clone()), work),
        Expr::Neg(a) => rec(a)?.neg(),
        Expr::Add(a, b) => rec(a)?.add(&rec(b)?)?,
        Expr::Sub(a, b) => rec(a)?.sub(&rec(b)?)?,
        Expr::Mul(a, b) => rec(a)?.mul(&rec(b)?)?,
        Expr::Pow(a, n) if **a == Expr::Atom(Atom::T) => DeformedSeries::t_pow(spec, *n, work),
        Expr::Pow(a, n) => rec(a)?.pow(*n)?,
        Expr::Inv(a) => rec(a)?.inverse()?,
        Expr::Comm(a, b) => rec(a)?.commutator(&rec(b)?)?,
    })
}

const MAX_ATTEMPTS: usize = 8;

/// Evaluates in series or embed mode and truncates to `floor`. Leaves start
/// a little below `floor`; whenever products and inverses lose more
/// precision than that, the evaluation is repeated with deeper leaves.
pub fn eval_series(e: &Expr, mode: Mode, spec: &Arc<DeformationSpec>, floor: i64) -> Result<DeformedSeries, EvalError> {
    let mut work = floor - 4;
    for _ in 0..MAX_ATTEMPTS {
        match series_at(e, mode, spec, work) {
            Ok(z) => match z.floor() {
                None => return Ok(z),
                Some(f) if f <= floor => return Ok(z.truncate(floor)),
                Some(f) => work -= f - floor + 4,
            },
            Err(EvalError::Math(Error::PrecisionExhausted(_))) => work -= work.abs().max(8),
            Err(err) => return Err(err),
        }
    }
    Err(Error::PrecisionExhausted(format!("no result above floor {floor} after {MAX_ATTEMPTS} attempts")).into())
}
