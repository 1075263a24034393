//! Series with coefficients written on the right, `Σ T^i a_i`, and the
//! mirror product they carry.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::arith::RatFun;
use crate::binomial::binom_int;
use crate::deformation::DeformationSpec;
use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::series::{same_spec, DeformedSeries};

/// `Σ_{floor < i ≤ n} T^i a_i(α)` in the right-handed ring, whose product is
/// `T^i a · T^j b = Σ_k Σ_tuples C(j,k) T^{Σj−k+i+j} δ_{j₁}⋯δ_{j_k}(a) b`.
#[derive(Clone, PartialEq, Eq)]
pub struct RightSeries {
    spec: Arc<DeformationSpec>,
    coeffs: BTreeMap<i64, RatFun>,
    floor: Option<i64>,
}

impl RightSeries {
    pub fn from_terms(
        spec: &Arc<DeformationSpec>,
        terms: impl IntoIterator<Item = (i64, RatFun)>,
        floor: Option<i64>,
    ) -> Self {
        let mut coeffs: BTreeMap<i64, RatFun> = BTreeMap::new();
        for (i, c) in terms {
            if floor.is_none_or(|f| i > f) && !c.is_zero() {
                let slot = coeffs.entry(i).or_insert_with(RatFun::zero);
                *slot = &*slot + &c;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        RightSeries { spec: spec.clone(), coeffs, floor }
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, RatFun> {
        &self.coeffs
    }

    pub fn floor(&self) -> Option<i64> {
        self.floor
    }

    pub fn deg(&self) -> Degree {
        self.coeffs.keys().next_back().map_or(Degree::NegInfinity, |&n| Degree::Finite(n))
    }

    fn top(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied().or(self.floor)
    }

    /// The right-handed product, with the same floor rule as the left ring.
    pub fn mul_right(&self, other: &Self) -> Result<Self> {
        if !same_spec(&self.spec, &other.spec) {
            return Err(Error::SpecMismatch);
        }
        let (Some(t1), Some(t2), Some(f1), Some(f2)) = (self.top(), other.top(), self.floor, other.floor) else {
            return Ok(RightSeries::from_terms(&self.spec, [], None));
        };
        let floor = (t1 + f2).max(t2 + f1);
        let mut out = Vec::new();
        let Some(&top_b) = other.coeffs.keys().next_back() else {
            return Ok(RightSeries::from_terms(&self.spec, out, Some(floor)));
        };
        for (&i, a_i) in &self.coeffs {
            let chains = self.spec.tuple_sums(a_i, floor + 1 - i - top_b);
            for (&j, b_j) in &other.coeffs {
                if i + j > floor {
                    out.push((i + j, a_i * b_j));
                }
                for (&(k, sum), chain) in &chains {
                    let deg = sum - k as i64 + i + j;
                    let c = binom_int(j, k as i64);
                    if deg > floor && !c.is_zero() {
                        out.push((deg, (chain * b_j).scale(&c)));
                    }
                }
            }
        }
        Ok(RightSeries::from_terms(&self.spec, out, Some(floor)))
    }

    /// Agreement above the weaker of the two floors.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let cut = [self.floor, other.floor].into_iter().flatten().max();
        let above = |z: &Self| -> Vec<(i64, RatFun)> {
            z.coeffs.iter().filter(|(i, _)| cut.is_none_or(|c| **i > c)).map(|(i, c)| (*i, c.clone())).collect()
        };
        same_spec(&self.spec, &other.spec) && above(self) == above(other)
    }

    pub fn render(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .rev()
            .map(|(n, c)| if c.is_one() { format!("T^{n}") } else { format!("T^{n}*{}", c.render("alpha")) })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Debug for RightSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.floor {
            Some(fl) => write!(f, "{} + O(T^{fl})", self.render()),
            None => write!(f, "0 (exact)"),
        }
    }
}

impl DeformedSeries {
    /// `Σ a_i T^i ↦ Σ T^i a_i`; anti-multiplicative onto the right ring.
    pub fn anti_iso(&self) -> RightSeries {
        RightSeries::from_terms(&self.spec, self.coeffs.clone(), self.floor)
    }
}
