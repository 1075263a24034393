use std::sync::Arc;

use num_integer::Integer;

use crate::arith::{Rat, RatFun};
use crate::deformation::{make_spec, DeformationSpec};
use crate::error::{invalid, Result};
use crate::series::DeformedSeries;
use crate::weyl::embed_laurent_monomial;

/// `T₀ = p^i q^j` and `α₀ = p^s q^{−r}` with `ri + sj = 1`, together with
/// their images in the series ring.
#[derive(Clone, Debug)]
pub struct GeneratorPair {
    pub r: i64,
    pub s: i64,
    pub i: i64,
    pub j: i64,
    spec: Arc<DeformationSpec>,
    floor: i64,
    t0_image: DeformedSeries,
    alpha0_image: DeformedSeries,
}

/// The Bézout pair `ri + sj = 1` with the smallest `|i|`, then the smallest
/// `|j|`, then positive `i`.
pub fn bezout_pair(r: i64, s: i64) -> Result<(i64, i64)> {
    if s == 0 || r.gcd(&s) != 1 {
        return invalid(format!("(r, s) = ({r}, {s}) must be coprime with s ≠ 0"));
    }
    // |i| ≤ |s| always admits a solution
    for mag in 0..=s.abs() {
        let mut best: Option<(i64, i64)> = None;
        for i in [mag, -mag] {
            if (1 - r * i) % s == 0 {
                let j = (1 - r * i) / s;
                if best.is_none_or(|(_, bj)| j.abs() < bj.abs()) {
                    best = Some((i, j));
                }
            }
        }
        if let Some(pair) = best {
            return Ok(pair);
        }
    }
    unreachable!("coprime (r, s) always has a Bézout pair")
}

/// Builds the generator pair for `(r, s)` with images exact above `floor`.
pub fn make_generators(r: i64, s: i64, floor: i64) -> Result<GeneratorPair> {
    let spec = Arc::new(make_spec(r, s)?);
    let (i, j) = bezout_pair(r, s)?;
    if floor >= 0 {
        return invalid(format!("floor {floor} must be negative to resolve α₀"));
    }
    let placeholder = DeformedSeries::zero(&spec);
    let mut pair = GeneratorPair { r, s, i, j, spec, floor, t0_image: placeholder.clone(), alpha0_image: placeholder };
    pair.t0_image = pair.t0_at(floor)?;
    pair.alpha0_image = pair.alpha0_at(floor)?;
    debug_assert_eq!(pair.t0_image.leading(), Some((1, &RatFun::x_pow(i))));
    debug_assert_eq!(pair.alpha0_image.leading(), Some((0, &RatFun::x_pow(s))));
    Ok(pair)
}

impl GeneratorPair {
    pub fn spec(&self) -> &Arc<DeformationSpec> {
        &self.spec
    }

    pub fn floor(&self) -> i64 {
        self.floor
    }

    /// `η(T₀)` exact above the pair's floor.
    pub fn t0_image(&self) -> &DeformedSeries {
        &self.t0_image
    }

    /// `η(α₀)` exact above the pair's floor.
    pub fn alpha0_image(&self) -> &DeformedSeries {
        &self.alpha0_image
    }

    /// `η(T₀) = η(p)^i η(q)^j` exact above `floor`.
    pub fn t0_at(&self, floor: i64) -> Result<DeformedSeries> {
        embed_laurent_monomial(&self.spec, self.i, self.j, floor)
    }

    /// `η(α₀) = η(p)^s η(q)^{−r}` exact above `floor`.
    pub fn alpha0_at(&self, floor: i64) -> Result<DeformedSeries> {
        embed_laurent_monomial(&self.spec, self.s, -self.r, floor)
    }

    /// `η(T₀)^n` exact above `floor`, for any integer `n`.
    pub fn t0_power(&self, n: i64, floor: i64) -> Result<DeformedSeries> {
        if n == 0 {
            return Ok(DeformedSeries::one(&self.spec, floor));
        }
        let m = n.unsigned_abs() as i64;
        // T₀ has degree 1; an m-fold product of factors at floor W has floor
        // W + m − 1, and inverting a degree-m series lowers the floor by 2m
        let positive_floor = if n > 0 { floor } else { floor + 2 * m };
        if positive_floor >= m {
            return Ok(DeformedSeries::from_terms(&self.spec, [], floor));
        }
        let t0 = self.t0_at(positive_floor - (m - 1))?;
        let mut acc = t0.clone();
        for _ in 1..m {
            acc = acc.mul(&t0)?;
        }
        debug_assert_eq!(acc.floor(), Some(positive_floor));
        if n > 0 {
            Ok(acc)
        } else {
            acc.inverse()
        }
    }

    /// `a(α₀)` for `a ∈ ℚ(u)`, exact above `floor` (`a(α₀)` has degree 0).
    pub fn eval_alpha0(&self, a: &RatFun, floor: i64) -> Result<DeformedSeries> {
        let alpha0 = self.alpha0_at(floor)?;
        let num = poly_at(&self.spec, &a.numer().coeffs(), &alpha0, floor)?;
        if a.denom().is_one() {
            return Ok(num);
        }
        let den = poly_at(&self.spec, &a.denom().coeffs(), &alpha0, floor)?;
        num.mul(&den.inverse()?)
    }
}

/// `Σ c_k x^k` by Horner's rule, for `x` of degree 0.
fn poly_at(spec: &Arc<DeformationSpec>, coeffs: &[Rat], x: &DeformedSeries, floor: i64) -> Result<DeformedSeries> {
    let mut acc = DeformedSeries::zero(spec);
    for c in coeffs.iter().rev() {
        let c = DeformedSeries::constant(spec, RatFun::constant(c.clone()), floor);
        acc = acc.mul(x)?.add(&c)?;
    }
    Ok(acc)
}
