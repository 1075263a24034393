use num_traits::{Signed, Zero};

use crate::arith::Rat;
use crate::degree::Degree;
use crate::error::{invalid, Result};
use crate::weyl::WeylElement;

/// Weights `(ρ, σ)` of the degree map `v_{ρ,σ}(p^i q^j) = ρi + σj`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DegreeParams {
    rho: Rat,
    sigma: Rat,
}

impl DegreeParams {
    /// Errors when `ρ + σ < 0`: no degree map on `A₁` has such weights.
    pub fn new(rho: Rat, sigma: Rat) -> Result<Self> {
        if (&rho + &sigma).is_negative() {
            return invalid(format!("ρ + σ = {} is negative", &rho + &sigma));
        }
        Ok(DegreeParams { rho, sigma })
    }

    pub fn rho(&self) -> &Rat {
        &self.rho
    }

    pub fn sigma(&self) -> &Rat {
        &self.sigma
    }

    /// `v_{ρ,σ}(p^i q^j)`.
    pub fn monomial_degree(&self, i: u32, j: u32) -> Rat {
        &self.rho * Rat::from_integer(i.into()) + &self.sigma * Rat::from_integer(j.into())
    }

    /// `max` of the monomial degrees over the support, `−∞` for zero.
    pub fn v_degree(&self, z: &WeylElement) -> Degree<Rat> {
        z.terms().keys().map(|&(i, j)| self.monomial_degree(i, j)).max().map_or(Degree::NegInfinity, Degree::Finite)
    }

    /// Proportional by a positive factor, so both weightings order
    /// monomials identically.
    pub fn equivalent(&self, other: &DegreeParams) -> bool {
        let cross = &self.rho * &other.sigma - &self.sigma * &other.rho;
        if !cross.is_zero() {
            return false;
        }
        let dot = &self.rho * &other.rho + &self.sigma * &other.sigma;
        let self_zero = self.rho.is_zero() && self.sigma.is_zero();
        let other_zero = other.rho.is_zero() && other.sigma.is_zero();
        if self_zero || other_zero {
            return self_zero && other_zero;
        }
        dot.is_positive()
    }
}
