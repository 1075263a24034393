use std::collections::BTreeMap;
use std::fmt;

use crate::arith::RatFun;
use crate::binomial::binom_int;

/// A linear differential operator `Σ c_k(α) (d/dα)^k` on ℚ(α).
///
/// Terms are kept sorted by order with nonzero coefficients, so two operators
/// are equal exactly when their term lists are.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct DiffOp {
    terms: Vec<(u32, RatFun)>,
}

impl DiffOp {
    /// Builds an operator from `(order, coeff)` pairs, merging repeated orders.
    pub fn new(terms: impl IntoIterator<Item = (u32, RatFun)>) -> Self {
        let mut merged: BTreeMap<u32, RatFun> = BTreeMap::new();
        for (order, c) in terms {
            let slot = merged.entry(order).or_insert_with(RatFun::zero);
            *slot = &*slot + &c;
        }
        DiffOp { terms: merged.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn zero() -> Self {
        DiffOp { terms: Vec::new() }
    }

    pub fn identity() -> Self {
        Self::multiplication(RatFun::one())
    }

    /// The order-zero operator `f ↦ c·f`.
    pub fn multiplication(c: RatFun) -> Self {
        Self::new([(0, c)])
    }

    /// `c·(d/dα)^order`.
    pub fn derivation(order: u32, c: RatFun) -> Self {
        Self::new([(order, c)])
    }

    pub fn terms(&self) -> &[(u32, RatFun)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn order(&self) -> Option<u32> {
        self.terms.last().map(|(o, _)| *o)
    }

    pub fn apply(&self, f: &RatFun) -> RatFun {
        let mut acc = RatFun::zero();
        let mut deriv = f.clone();
        let mut at = 0u32;
        for (order, c) in &self.terms {
            while at < *order {
                deriv = deriv.derivative();
                at += 1;
            }
            acc = &acc + &(c * &deriv);
        }
        acc
    }

    /// The operator `f ↦ self(other(f))`.
    pub fn compose(&self, other: &DiffOp) -> DiffOp {
        // D^a ∘ (e·D^b) = Σ_m C(a, m) e^{(m)} D^{a−m+b}
        let mut out = Vec::new();
        for (a, c) in &self.terms {
            for (b, e) in &other.terms {
                let mut e_deriv = e.clone();
                for m in 0..=*a {
                    if e_deriv.is_zero() {
                        break;
                    }
                    let coeff = (c * &e_deriv).scale(&binom_int(*a as i64, m as i64));
                    out.push((a - m + b, coeff));
                    e_deriv = e_deriv.derivative();
                }
            }
        }
        DiffOp::new(out)
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(o, c)| match o {
                0 => c.to_string(),
                1 => format!("{c}*D"),
                _ => format!("{c}*D^{o}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffOp({self})")
    }
}
