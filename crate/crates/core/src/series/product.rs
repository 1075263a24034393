//! The deformed product, two ways: the closed-form `λ` coefficients of the
//! concrete family, and direct expansion over index tuples.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use crate::arith::{int, Rat, RatFun};
use crate::binomial::{binom_int, gen_binom};
use crate::deformation::DeformationSpec;
use crate::error::Result;
use crate::series::DeformedSeries;

/// `λ_i^k` with `T^i·b = Σ_k λ_i^k b^{(k)} T^{i−kν}`:
/// `λ_i^0 = 1` and `λ_i^k = (ν/s)^k Σ_{l=1}^{k} (−1)^{k−l} C(i,l) C(i−l−1,k−l) C(l/ν,k)`.
///
/// Errors for custom specs.
pub fn lambda_coeff(spec: &DeformationSpec, i: i64, k: u32) -> Result<Rat> {
    let (_, s, nu) = spec.concrete_params()?;
    if k == 0 {
        return Ok(int(1));
    }
    let k_i = k as i64;
    let mut sum = Rat::zero();
    for l in 1..=k_i {
        let term = binom_int(i, l) * binom_int(i - l - 1, k_i - l) * gen_binom(&Rat::new(l.into(), nu.into()), k);
        if (k_i - l) % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(crate::arith::rat::pow(&Rat::new(nu.into(), s.into()), k) * sum)
}

/// All terms of `(Σ a_i T^i)(Σ b_j T^j)` above `floor`, unsummed.
pub(crate) fn product_terms(
    spec: &DeformationSpec,
    a: &BTreeMap<i64, RatFun>,
    b: &BTreeMap<i64, RatFun>,
    floor: i64,
) -> Vec<(i64, RatFun)> {
    if spec.is_concrete() {
        lambda_terms(spec, a, b, floor)
    } else {
        tuple_terms(spec, a, b, floor)
    }
}

fn lambda_terms(
    spec: &DeformationSpec,
    a: &BTreeMap<i64, RatFun>,
    b: &BTreeMap<i64, RatFun>,
    floor: i64,
) -> Vec<(i64, RatFun)> {
    let nu = spec.nu().expect("concrete spec");
    let mut lambdas: HashMap<(i64, u32), Rat> = HashMap::new();
    let mut out = Vec::new();
    for (&j, b_j) in b {
        let mut derivs = vec![b_j.clone()];
        for (&i, a_i) in a {
            let mut k = 0u32;
            while i + j - k as i64 * nu > floor {
                if derivs.len() <= k as usize {
                    let next = derivs.last().expect("nonempty").derivative();
                    derivs.push(next);
                }
                let d = &derivs[k as usize];
                if d.is_zero() {
                    break;
                }
                let lam = lambdas.entry((i, k)).or_insert_with(|| lambda_coeff(spec, i, k).expect("concrete spec"));
                if !lam.is_zero() {
                    out.push((i + j - k as i64 * nu, (a_i * d).scale(lam)));
                }
                k += 1;
            }
        }
    }
    out
}

/// Expansion of `a_i T^i · b_j T^j = Σ_k Σ_tuples C(i,k) a_i δ_{j₁}⋯δ_{j_k}(b_j) T^{Σj−k+i+j}`.
fn tuple_terms(
    spec: &DeformationSpec,
    a: &BTreeMap<i64, RatFun>,
    b: &BTreeMap<i64, RatFun>,
    floor: i64,
) -> Vec<(i64, RatFun)> {
    let mut out = Vec::new();
    let Some(&top_a) = a.keys().next_back() else {
        return out;
    };
    for (&j, b_j) in b {
        // Σj − k + i + j > floor for some i ≤ top_a
        let chains = spec.tuple_sums(b_j, floor + 1 - j - top_a);
        for (&i, a_i) in a {
            if i + j > floor {
                out.push((i + j, a_i * b_j));
            }
            for (&(k, sum), chain) in &chains {
                let deg = sum - k as i64 + i + j;
                if deg <= floor {
                    continue;
                }
                let c = binom_int(i, k as i64);
                if !c.is_zero() {
                    out.push((deg, (a_i * chain).scale(&c)));
                }
            }
        }
    }
    out
}

impl DeformedSeries {
    fn product_with(&self, other: &Self, route: Route) -> Result<Self> {
        self.check_spec(other)?;
        let Some(floor) = self.product_floor(other) else {
            return Ok(Self::zero(&self.spec));
        };
        let terms = match route {
            Route::Fast => product_terms(&self.spec, &self.coeffs, &other.coeffs, floor),
            Route::Tuples => tuple_terms(&self.spec, &self.coeffs, &other.coeffs, floor),
        };
        Ok(Self::from_terms(&self.spec, terms, floor))
    }

    /// The deformed product, exact above `max(deg₁ + floor₂, deg₂ + floor₁)`.
    ///
    /// Concrete specs use the `λ` coefficients; custom specs expand over
    /// index tuples.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.product_with(other, Route::Fast)
    }

    /// The same product computed by enumerating index tuples
    /// `T^n·a = Σ_k Σ C(n,k) δ_{j₁}⋯δ_{j_k}(a) T^{Σj−k+n}` directly.
    pub fn mul_oracle(&self, other: &Self) -> Result<Self> {
        self.product_with(other, Route::Tuples)
    }
}

#[derive(Clone, Copy)]
enum Route {
    Fast,
    Tuples,
}
