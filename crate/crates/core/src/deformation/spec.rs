use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{int, rat::factorial, Rat, RatFun};
use crate::binomial::{binom_int, bracket};
use crate::deformation::DiffOp;
use crate::error::{invalid, Error, Result};

/// A δ-family `{δ_i}_{i ≤ 0}` on ℚ(α), with `δ₁` the identity.
///
/// Concrete specs are the two-parameter family
/// `δ_{1−kν} = (d_k/k!)(d/dα)^k`, `d_k = [1, ν]_k / s^k`, generated on demand.
/// Custom specs carry finitely many explicit operators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationSpec {
    kind: Kind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Kind {
    Concrete { r: i64, s: i64 },
    Custom(BTreeMap<i64, DiffOp>),
}

/// Builds the concrete spec for `(r, s)`.
pub fn make_spec(r: i64, s: i64) -> Result<DeformationSpec> {
    DeformationSpec::concrete(r, s)
}

impl DeformationSpec {
    pub fn concrete(r: i64, s: i64) -> Result<Self> {
        if s == 0 {
            return invalid("s must be nonzero");
        }
        if r + s <= 0 {
            return invalid(format!("r + s must be positive, got {}", r + s));
        }
        Ok(DeformationSpec { kind: Kind::Concrete { r, s } })
    }

    /// A custom family from explicit operators. Indices must be `≤ 0`; zero
    /// operators are dropped.
    pub fn custom(deltas: impl IntoIterator<Item = (i64, DiffOp)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (i, op) in deltas {
            if i > 0 {
                return invalid(format!("custom δ index {i} must be ≤ 0"));
            }
            if !op.is_zero() && map.insert(i, op).is_some() {
                return invalid(format!("δ_{i} given twice"));
            }
        }
        Ok(DeformationSpec { kind: Kind::Custom(map) })
    }

    pub fn is_concrete(&self) -> bool {
        matches!(self.kind, Kind::Concrete { .. })
    }

    /// `(r, s)` for a concrete spec.
    pub fn params(&self) -> Option<(i64, i64)> {
        match self.kind {
            Kind::Concrete { r, s } => Some((r, s)),
            Kind::Custom(_) => None,
        }
    }

    /// `ν = r + s` for a concrete spec.
    pub fn nu(&self) -> Option<i64> {
        self.params().map(|(r, s)| r + s)
    }

    pub(crate) fn concrete_params(&self) -> Result<(i64, i64, i64)> {
        self.params()
            .map(|(r, s)| (r, s, r + s))
            .ok_or_else(|| Error::InvalidParameter("operation needs a concrete (r, s) spec".into()))
    }

    /// `d_k = [1, ν]_k / s^k`; errors for custom specs.
    pub fn d(&self, k: u32) -> Result<Rat> {
        let (_, s, nu) = self.concrete_params()?;
        Ok(bracket(&int(1), &int(nu), k) / crate::arith::rat::pow(&int(s), k))
    }

    /// For a concrete spec, the `(k, d_k/k!)` with `δ_i = (d_k/k!) D^k`, if
    /// `δ_i` is nonzero and `i ≤ 0`.
    pub(crate) fn concrete_delta(&self, i: i64) -> Option<(u32, Rat)> {
        let (_, _, nu) = self.concrete_params().ok()?;
        if i > 0 || (1 - i) % nu != 0 {
            return None;
        }
        let k = ((1 - i) / nu) as u32;
        let c = self.d(k).ok()? / factorial(k);
        (!c.is_zero()).then_some((k, c))
    }

    /// `δ_i` as an operator, or `None` when it is zero. `δ₁` is the identity
    /// and indices above 1 are zero.
    pub fn delta(&self, i: i64) -> Option<DiffOp> {
        if i == 1 {
            return Some(DiffOp::identity());
        }
        match &self.kind {
            Kind::Concrete { .. } => self.concrete_delta(i).map(|(k, c)| DiffOp::derivation(k, RatFun::constant(c))),
            Kind::Custom(map) => map.get(&i).cloned(),
        }
    }

    pub fn delta_is_zero(&self, i: i64) -> bool {
        if i == 1 {
            return false;
        }
        match &self.kind {
            Kind::Concrete { .. } => self.concrete_delta(i).is_none(),
            Kind::Custom(map) => !map.contains_key(&i),
        }
    }

    /// `δ_i(f)`; zero when `δ_i = 0`.
    pub fn delta_apply(&self, i: i64, f: &RatFun) -> RatFun {
        if i == 1 {
            return f.clone();
        }
        match &self.kind {
            Kind::Concrete { .. } => match self.concrete_delta(i) {
                Some((k, c)) => f.nth_derivative(k).scale(&c),
                None => RatFun::zero(),
            },
            Kind::Custom(map) => map.get(&i).map_or_else(RatFun::zero, |op| op.apply(f)),
        }
    }

    /// Indices `min ≤ i ≤ 0` with `δ_i ≠ 0`, in descending order.
    pub fn nonzero_deltas(&self, min: i64) -> Vec<i64> {
        match &self.kind {
            Kind::Concrete { .. } => (min..=0).rev().filter(|&i| !self.delta_is_zero(i)).collect(),
            Kind::Custom(map) => map.keys().rev().copied().filter(|&i| i >= min).collect(),
        }
    }

    /// `i₀ = max{i ≤ 0 : δ_i ≠ 0}`, if any δ_i with `i ≤ 0` is nonzero.
    pub fn top_delta(&self) -> Option<i64> {
        match &self.kind {
            // δ_{1−ν} = (1/s)·D is never zero
            Kind::Concrete { r, s } => Some(1 - (r + s)),
            Kind::Custom(map) => map.keys().next_back().copied(),
        }
    }

    /// All `δ_{j₁}⋯δ_{j_k}(b)` for `k ≥ 1` and nonzero `δ_{j_t}` (`j_t ≤ 0`)
    /// with `Σj − k ≥ bound`, summed by `(k, Σj)`.
    ///
    /// The innermost operator `δ_{j_k}` is applied first.
    pub fn tuple_sums(&self, b: &RatFun, bound: i64) -> BTreeMap<(u32, i64), RatFun> {
        let mut out: BTreeMap<(u32, i64), RatFun> = BTreeMap::new();
        if b.is_zero() || bound > -1 {
            return out;
        }
        // every step lowers Σj − k by at least 1, so only indices ≥ bound + 1 matter
        let indices = self.nonzero_deltas(bound + 1);
        let mut stack = vec![(0u32, 0i64, b.clone())];
        while let Some((k, sum, value)) = stack.pop() {
            for &j in &indices {
                if sum + j - (k as i64 + 1) < bound {
                    break;
                }
                let next = self.delta_apply(j, &value);
                if next.is_zero() {
                    continue;
                }
                let slot = out.entry((k + 1, sum + j)).or_insert_with(RatFun::zero);
                *slot = &*slot + &next;
                stack.push((k + 1, sum + j, next));
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Tests the compatibility condition
    /// `δ_i(ab) = aδ_i(b) + δ_i(a)b + Σ_{k>0} Σ C(l, k) δ_l(a) δ_{j₁}⋯δ_{j_k}(b)`
    /// over tuples of nonpositive indices with `Σj − k + l = i`.
    pub fn check_condition(&self, i: i64, a: &RatFun, b: &RatFun) -> Result<bool> {
        if i > 0 {
            return invalid(format!("condition index {i} must be ≤ 0"));
        }
        let lhs = self.delta_apply(i, &(a * b));
        let mut rhs = &(a * &self.delta_apply(i, b)) + &(&self.delta_apply(i, a) * b);
        for l in self.nonzero_deltas(i + 1) {
            let da = self.delta_apply(l, a);
            if da.is_zero() {
                continue;
            }
            for ((k, sum), chain) in self.tuple_sums(b, i - l) {
                if sum - k as i64 + l != i {
                    continue;
                }
                let c = binom_int(l, k as i64);
                rhs = &rhs + &(&da * &chain).scale(&c);
            }
        }
        Ok(lhs == rhs)
    }

    /// Structured record; concrete specs list their nonzero δ_i for
    /// `i ≥ min_index`.
    pub fn to_record(&self, min_index: i64) -> SpecRecord {
        let deltas = self
            .nonzero_deltas(min_index)
            .into_iter()
            .rev()
            .map(|i| {
                let op = self.delta(i).unwrap_or_default();
                let terms = op.terms().iter().map(|(o, c)| (*o, c.to_string())).collect();
                (i, terms)
            })
            .collect();
        let (r, s) = match self.params() {
            Some((r, s)) => (Some(r), Some(s)),
            None => (None, None),
        };
        SpecRecord { r, s, deltas }
    }

    /// Inverse of [`to_record`](Self::to_record). A record with `r` and `s`
    /// yields the concrete spec, and any listed operators must agree with it.
    pub fn from_record(record: &SpecRecord) -> Result<Self> {
        let mut parsed = Vec::new();
        for (i, terms) in &record.deltas {
            let terms = terms.iter().map(|(o, c)| c.parse::<RatFun>().map(|c| (*o, c))).collect::<Result<Vec<_>>>()?;
            parsed.push((*i, DiffOp::new(terms)));
        }
        match (record.r, record.s) {
            (Some(r), Some(s)) => {
                let spec = Self::concrete(r, s)?;
                for (i, op) in parsed {
                    if spec.delta(i).unwrap_or_default() != op {
                        return invalid(format!("δ_{i} does not match the (r, s) = ({r}, {s}) family"));
                    }
                }
                Ok(spec)
            }
            (None, None) => Self::custom(parsed),
            _ => invalid("record must give both r and s or neither"),
        }
    }
}

/// Serialized form `{r, s, deltas: [(i, [(order, coeff)])]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecRecord {
    pub r: Option<i64>,
    pub s: Option<i64>,
    pub deltas: Vec<(i64, Vec<(u32, String)>)>,
}
