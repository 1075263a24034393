use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::RatFun;
use crate::completion::GeneratorPair;
use crate::error::{Error, Result};
use crate::series::{same_spec, DeformedSeries};

/// `Σ a_n(α₀) T₀^n` with `a_n ∈ ℚ(u)`, known above `floor`.
#[derive(Clone, PartialEq, Eq)]
pub struct RebasedSeries {
    pub r: i64,
    pub s: i64,
    pub i: i64,
    pub j: i64,
    terms: BTreeMap<i64, RatFun>,
    floor: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRecord {
    pub r: i64,
    pub s: i64,
    pub i: i64,
    pub j: i64,
}

/// Serialized form; `terms` in descending degree with `u` written `alpha0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RebasedRecord {
    pub pair: PairRecord,
    pub floor: i64,
    pub terms: Vec<(i64, String)>,
}

impl RebasedSeries {
    pub fn terms(&self) -> &BTreeMap<i64, RatFun> {
        &self.terms
    }

    pub fn floor(&self) -> i64 {
        self.floor
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .rev()
            .map(|(n, a)| if a.is_one() { format!("T0^{n}") } else { format!("{}*T0^{n}", a.render("alpha0")) })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn to_record(&self) -> RebasedRecord {
        RebasedRecord {
            pair: PairRecord { r: self.r, s: self.s, i: self.i, j: self.j },
            floor: self.floor,
            terms: self.terms.iter().rev().map(|(n, a)| (*n, a.render("alpha0"))).collect(),
        }
    }
}

impl fmt::Display for RebasedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for RebasedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(T0^{})", self.render(), self.floor)
    }
}

/// [`rebase_with_budget`] with enough steps for any input.
pub fn rebase(pair: &GeneratorPair, z: &DeformedSeries) -> Result<RebasedSeries> {
    rebase_with_budget(pair, z, usize::MAX)
}

/// Rewrites `z` as `Σ a_n(α₀) T₀^n` by greedy leading-term elimination.
///
/// With remainder leading term `c·T^n`, `a` solves `a(α^s)·α^{in} = c`; this
/// needs `c/α^{in} ∈ ℚ(α^|s|)`, and failure is reported as
/// [`Error::NotInCompletion`]. At most `budget` steps are taken.
pub fn rebase_with_budget(pair: &GeneratorPair, z: &DeformedSeries, budget: usize) -> Result<RebasedSeries> {
    if !same_spec(pair.spec(), z.spec()) {
        return Err(Error::SpecMismatch);
    }
    let mut out = RebasedSeries { r: pair.r, s: pair.s, i: pair.i, j: pair.j, terms: BTreeMap::new(), floor: 0 };
    let Some(floor) = z.floor() else {
        out.floor = pair.floor();
        return Ok(out);
    };
    out.floor = floor;
    let mut rem = z.clone();
    let mut steps = 0;
    while let Some((n, c)) = rem.leading() {
        if steps == budget {
            return Err(Error::PrecisionExhausted(format!("step budget {budget} spent with remainder of degree {n}")));
        }
        steps += 1;
        let g = c.checked_div(&RatFun::x_pow(pair.i * n))?;
        let Some(h) = g.in_power_subfield(pair.s)? else {
            return Err(Error::NotInCompletion { degree: n, coeff: c.render("alpha") });
        };
        let a = if pair.s > 0 { h } else { h.substitute_reciprocal() };
        let term = pair.eval_alpha0(&a, floor - n)?.mul(&pair.t0_power(n, floor)?)?;
        debug_assert_eq!(term.floor(), Some(floor));
        rem = rem.sub(&term)?;
        debug_assert!(rem.leading().is_none_or(|(m, _)| m < n));
        out.terms.insert(n, a);
    }
    Ok(out)
}

/// `Σ a_n(η(α₀)) η(T₀)^n`, exact above the rebased floor.
pub fn evaluate(pair: &GeneratorPair, rebased: &RebasedSeries) -> Result<DeformedSeries> {
    if (pair.r, pair.s, pair.i, pair.j) != (rebased.r, rebased.s, rebased.i, rebased.j) {
        return Err(Error::SpecMismatch);
    }
    let floor = rebased.floor;
    let mut acc = DeformedSeries::from_terms(pair.spec(), [], floor);
    for (&n, a) in &rebased.terms {
        let term = pair.eval_alpha0(a, floor - n)?.mul(&pair.t0_power(n, floor)?)?;
        acc = acc.add(&term)?;
    }
    Ok(acc)
}
