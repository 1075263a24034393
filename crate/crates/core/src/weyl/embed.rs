use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::arith::RatFun;
use crate::deformation::{make_spec, DeformationSpec};
use crate::error::{Error, Result};
use crate::series::DeformedSeries;
use crate::weyl::WeylElement;

/// `η(z)` for the homomorphism `η(p) = αT^r`, `η(q) = T^s`, exact above
/// `floor`.
///
/// `η(p^i q^j) = (αT^r)^i T^{sj}`; the power of `αT^r` is computed at a
/// working floor low enough that the propagated floor lands on `floor`.
pub fn embed(spec: &Arc<DeformationSpec>, z: &WeylElement, floor: i64) -> Result<DeformedSeries> {
    let (r, s, _) = spec.concrete_params()?;
    if z.is_zero() {
        return Ok(DeformedSeries::zero(spec));
    }
    let top = z.terms().keys().map(|&(i, j)| r * i as i64 + s * j as i64).max().expect("nonzero");
    if floor >= top {
        return Err(Error::PrecisionExhausted(format!("floor {floor} is not below the leading degree {top}")));
    }
    // lowest floor each power of η(p) is needed at, before the T^{sj} shift
    let mut needed: BTreeMap<u32, i64> = BTreeMap::new();
    for &(i, j) in z.terms().keys() {
        let f = floor - s * j as i64;
        needed.entry(i).and_modify(|g| *g = (*g).min(f)).or_insert(f);
    }
    let mut acc = DeformedSeries::zero(spec);
    let mut powers: BTreeMap<u32, DeformedSeries> = BTreeMap::new();
    for (&i, &f) in &needed {
        powers.insert(i, p_image_power(spec, r, i, f)?);
    }
    for (&(i, j), c) in z.terms() {
        let term = powers[&i].shift(s * j as i64).scale(&RatFun::constant(c.clone())).truncate(floor);
        acc = acc.add(&term)?;
    }
    Ok(acc.truncate(floor))
}

/// `(αT^r)^i` exact above `floor`.
fn p_image_power(spec: &Arc<DeformationSpec>, r: i64, i: u32, floor: i64) -> Result<DeformedSeries> {
    if i == 0 {
        return Ok(DeformedSeries::one(spec, floor));
    }
    if floor >= r * i as i64 {
        // the whole image lies at or below the floor
        return Ok(DeformedSeries::from_terms(spec, [], floor));
    }
    // an i-fold product of factors of degree r, each at floor W, has floor
    // W + (i − 1)r
    let work = floor - (i as i64 - 1) * r;
    let factor = DeformedSeries::monomial(spec, RatFun::x(), r, work);
    let mut acc = factor.clone();
    for _ in 1..i {
        acc = acc.mul(&factor)?;
    }
    debug_assert_eq!(acc.floor(), Some(floor));
    Ok(acc)
}

/// `η(p)^i η(q)^j = (αT^r)^i T^{sj}` for any integers `i, j`, exact above
/// `floor`. Negative powers of `η(p)` go through series inversion.
pub fn embed_laurent_monomial(spec: &Arc<DeformationSpec>, i: i64, j: i64, floor: i64) -> Result<DeformedSeries> {
    let (r, s, _) = spec.concrete_params()?;
    let f = floor - s * j;
    let power = if i >= 0 {
        p_image_power(spec, r, i as u32, f)?
    } else if f >= r * i {
        DeformedSeries::from_terms(spec, [], f)
    } else {
        // inverting a series of degree r|i| lowers its floor by 2r|i|
        let m = i.unsigned_abs() as u32;
        p_image_power(spec, r, m, f + 2 * r * m as i64)?.inverse()?
    };
    debug_assert_eq!(power.floor(), Some(f));
    Ok(power.shift(s * j))
}

/// Leading symbol `a(u)·Y^{n/s}` with `u = X·Y^{−r/s}`, stored as `(a, n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GradedSymbol {
    Zero,
    Term { a: RatFun, n: i64 },
}

impl GradedSymbol {
    /// `(a, n)·(b, m) = (ab, n + m)`.
    pub fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (GradedSymbol::Term { a, n }, GradedSymbol::Term { a: b, n: m }) => {
                GradedSymbol::Term { a: a * b, n: n + m }
            }
            _ => GradedSymbol::Zero,
        }
    }
}

impl fmt::Display for GradedSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GradedSymbol::Zero => write!(f, "0"),
            GradedSymbol::Term { a, n } => write!(f, "{} ; {n}", a.render("u")),
        }
    }
}

/// Symbol of a series from its leading term.
pub fn symbol_of_series(z: &DeformedSeries) -> Result<GradedSymbol> {
    if z.is_exact_zero() {
        return Ok(GradedSymbol::Zero);
    }
    match z.leading() {
        Some((n, a)) => Ok(GradedSymbol::Term { a: a.clone(), n }),
        None => Err(Error::PrecisionExhausted(format!(
            "no term resolved above floor {}",
            z.floor().expect("nonzero floor")
        ))),
    }
}

/// Symbol of a Weyl element, read off the leading term of its embedding.
pub fn symbol_of_weyl(r: i64, s: i64, z: &WeylElement) -> Result<GradedSymbol> {
    let spec = Arc::new(make_spec(r, s)?);
    let Some(top) = z.terms().keys().map(|&(i, j)| r * i as i64 + s * j as i64).max() else {
        return Ok(GradedSymbol::Zero);
    };
    symbol_of_series(&embed(&spec, z, top - 1)?)
}

impl WeylElement {
    /// `Σ c_{ij} u^i` over the monomials with `ri + sj = n`.
    pub fn weighted_part(&self, r: i64, s: i64, n: i64) -> RatFun {
        let mut acc = RatFun::zero();
        for (&(i, j), c) in self.terms() {
            if r * i as i64 + s * j as i64 == n {
                acc = &acc + &RatFun::x_pow(i as i64).scale(c);
            }
        }
        acc
    }
}
