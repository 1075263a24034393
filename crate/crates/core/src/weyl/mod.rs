//! The Weyl algebra `A₁ = ℚ⟨p, q⟩/(qp − pq − 1)` in the PBW basis `p^i q^j`,
//! its degree maps, the embedding into the series ring and the symbol map.

mod degree;
mod embed;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::rat::{factorial, render_compact};
use crate::arith::Rat;
use crate::binomial::falling;

pub use degree::DegreeParams;
pub use embed::{embed, embed_laurent_monomial, symbol_of_series, symbol_of_weyl, GradedSymbol};

/// `Σ λ_{ij} p^i q^j` with nonzero rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct WeylElement {
    coeffs: BTreeMap<(u32, u32), Rat>,
}

impl WeylElement {
    pub fn zero() -> Self {
        WeylElement::default()
    }

    pub fn one() -> Self {
        Self::scalar(Rat::one())
    }

    pub fn scalar(c: Rat) -> Self {
        Self::monomial(c, 0, 0)
    }

    /// `c·p^i q^j`.
    pub fn monomial(c: Rat, i: u32, j: u32) -> Self {
        Self::from_terms([((i, j), c)])
    }

    pub fn p() -> Self {
        Self::monomial(Rat::one(), 1, 0)
    }

    pub fn q() -> Self {
        Self::monomial(Rat::one(), 0, 1)
    }

    /// Sums the given `((i, j), c)` terms, dropping zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), Rat)>) -> Self {
        let mut coeffs: BTreeMap<(u32, u32), Rat> = BTreeMap::new();
        for (key, c) in terms {
            *coeffs.entry(key).or_insert_with(Rat::zero) += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        WeylElement { coeffs }
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), Rat> {
        &self.coeffs
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rat {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_terms(self.coeffs.iter().chain(&other.coeffs).map(|(k, c)| (*k, c.clone())))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rat::one())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(k, a)| (*k, a * c)))
    }

    /// PBW product:
    /// `p^i q^j · p^s q^t = Σ_{k ≥ 0} ([j]_k [s]_k / k!) p^{i+s−k} q^{j+t−k}`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        for (&(i, j), a) in &self.coeffs {
            for (&(s, t), b) in &other.coeffs {
                let ab = a * b;
                for k in 0..=j.min(s) {
                    let c = falling(&Rat::from_integer(j.into()), k) * falling(&Rat::from_integer(s.into()), k)
                        / factorial(k);
                    out.push(((i + s - k, j + t - k), &ab * c));
                }
            }
        }
        Self::from_terms(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// Terms ordered by total degree, then `p`-exponent, both descending,
    /// e.g. `3*p^2*q - 1/2*q^3 + 1`.
    pub fn render(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let mut keys: Vec<_> = self.coeffs.keys().copied().collect();
        keys.sort_by_key(|k| std::cmp::Reverse((k.0 + k.1, k.0)));
        let mut out = String::new();
        for (idx, key) in keys.into_iter().enumerate() {
            let c = &self.coeffs[&key];
            let negative = c.is_negative();
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            let abs = c.abs();
            if !abs.is_one() || key == (0, 0) {
                factors.push(render_compact(&abs));
            }
            for (var, e) in [("p", key.0), ("q", key.1)] {
                match e {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    _ => factors.push(format!("{var}^{e}")),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylElement({})", self.render())
    }
}
