//! Truncated deformed Laurent series `Σ_{floor < i ≤ n} c_i(α) T^i`.
//!
//! A series is an exact finite sum known modulo terms of degree `≤ floor`.
//! The exact zero element has no floor at all.

mod product;
mod right;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::RatFun;
use crate::deformation::{DeformationSpec, SpecRecord};
use crate::degree::Degree;
use crate::error::{Error, Result};

pub use product::lambda_coeff;
pub use right::RightSeries;

/// Schema version of [`SeriesRecord`].
pub const SERIES_RECORD_VERSION: u32 = 1;

#[derive(Clone, PartialEq, Eq)]
pub struct DeformedSeries {
    spec: Arc<DeformationSpec>,
    coeffs: BTreeMap<i64, RatFun>,
    /// `None` marks the exact zero element.
    floor: Option<i64>,
}

pub(crate) fn same_spec(a: &Arc<DeformationSpec>, b: &Arc<DeformationSpec>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl DeformedSeries {
    /// Builds a series from `(degree, coeff)` pairs; repeated degrees are
    /// summed, and terms at or below `floor` are discarded.
    pub fn from_terms(spec: &Arc<DeformationSpec>, terms: impl IntoIterator<Item = (i64, RatFun)>, floor: i64) -> Self {
        let mut coeffs: BTreeMap<i64, RatFun> = BTreeMap::new();
        for (i, c) in terms {
            if i > floor && !c.is_zero() {
                let slot = coeffs.entry(i).or_insert_with(RatFun::zero);
                *slot = &*slot + &c;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        DeformedSeries { spec: spec.clone(), coeffs, floor: Some(floor) }
    }

    /// The exact zero element.
    pub fn zero(spec: &Arc<DeformationSpec>) -> Self {
        DeformedSeries { spec: spec.clone(), coeffs: BTreeMap::new(), floor: None }
    }

    pub fn monomial(spec: &Arc<DeformationSpec>, c: RatFun, n: i64, floor: i64) -> Self {
        Self::from_terms(spec, [(n, c)], floor)
    }

    pub fn constant(spec: &Arc<DeformationSpec>, c: RatFun, floor: i64) -> Self {
        Self::monomial(spec, c, 0, floor)
    }

    pub fn one(spec: &Arc<DeformationSpec>, floor: i64) -> Self {
        Self::constant(spec, RatFun::one(), floor)
    }

    /// `T^n`.
    pub fn t_pow(spec: &Arc<DeformationSpec>, n: i64, floor: i64) -> Self {
        Self::monomial(spec, RatFun::one(), n, floor)
    }

    /// The coefficient `α` as a series.
    pub fn alpha(spec: &Arc<DeformationSpec>, floor: i64) -> Self {
        Self::constant(spec, RatFun::x(), floor)
    }

    pub fn spec(&self) -> &Arc<DeformationSpec> {
        &self.spec
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, RatFun> {
        &self.coeffs
    }

    pub fn coeff(&self, i: i64) -> RatFun {
        self.coeffs.get(&i).cloned().unwrap_or_else(RatFun::zero)
    }

    /// Precision floor, `None` for the exact zero element.
    pub fn floor(&self) -> Option<i64> {
        self.floor
    }

    pub fn is_exact_zero(&self) -> bool {
        self.floor.is_none()
    }

    /// No terms survive above the floor (includes the exact zero).
    pub fn is_zero_to_floor(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Standard degree: the top stored exponent, `−∞` when nothing is stored.
    pub fn deg(&self) -> Degree {
        self.coeffs.keys().next_back().map_or(Degree::NegInfinity, |&n| Degree::Finite(n))
    }

    /// The leading term `(n, a_n)`, if resolved above the floor.
    pub fn leading(&self) -> Option<(i64, &RatFun)> {
        self.coeffs.iter().next_back().map(|(n, c)| (*n, c))
    }

    /// Degree used in floor propagation: the degree if resolved, otherwise
    /// the floor (`None` only for the exact zero).
    pub(crate) fn top(&self) -> Option<i64> {
        self.leading().map(|(n, _)| n).or(self.floor)
    }

    pub fn in_valuation_ring(&self) -> bool {
        self.deg() <= Degree::Finite(0)
    }

    /// Right multiplication by `T^k`, which only shifts exponents.
    pub fn shift(&self, k: i64) -> Self {
        DeformedSeries {
            spec: self.spec.clone(),
            coeffs: self.coeffs.iter().map(|(i, c)| (i + k, c.clone())).collect(),
            floor: self.floor.map(|f| f + k),
        }
    }

    /// Raises the floor to `max(floor, self.floor)`.
    pub fn truncate(&self, floor: i64) -> Self {
        let new_floor = self.floor.map_or(floor, |f| f.max(floor));
        Self::from_terms(&self.spec, self.coeffs.clone(), new_floor)
    }

    fn check_spec(&self, other: &Self) -> Result<()> {
        if same_spec(&self.spec, &other.spec) {
            Ok(())
        } else {
            Err(Error::SpecMismatch)
        }
    }

    fn combine(&self, other: &Self, negate: bool) -> Result<Self> {
        self.check_spec(other)?;
        let floor = match (self.floor, other.floor) {
            (None, None) => return Ok(Self::zero(&self.spec)),
            (Some(a), Some(b)) => a.max(b),
            (Some(a), None) | (None, Some(a)) => a,
        };
        let rhs = other.coeffs.iter().map(|(i, c)| (*i, if negate { -c } else { c.clone() }));
        let terms = self.coeffs.iter().map(|(i, c)| (*i, c.clone())).chain(rhs);
        Ok(Self::from_terms(&self.spec, terms, floor))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, true)
    }

    pub fn neg(&self) -> Self {
        DeformedSeries {
            spec: self.spec.clone(),
            coeffs: self.coeffs.iter().map(|(i, c)| (*i, -c)).collect(),
            floor: self.floor,
        }
    }

    /// Multiplies every coefficient by `c` on the left (`c` commutes with the
    /// coefficients, so this is `c·z`).
    pub fn scale(&self, c: &RatFun) -> Self {
        if c.is_zero() {
            return Self::zero(&self.spec);
        }
        DeformedSeries {
            spec: self.spec.clone(),
            coeffs: self.coeffs.iter().map(|(i, a)| (*i, c * a)).collect(),
            floor: self.floor,
        }
    }

    /// Floor of a product: `max(top₁ + floor₂, top₂ + floor₁)`, where `top`
    /// is the degree (or the floor when no term is resolved). `None` when a
    /// factor is the exact zero.
    pub fn product_floor(&self, other: &Self) -> Option<i64> {
        let (t1, t2) = (self.top()?, other.top()?);
        let (f1, f2) = (self.floor?, other.floor?);
        Some((t1 + f2).max(t2 + f1))
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// `self^n`; negative exponents go through [`inverse`](Self::inverse).
    /// `z⁰ = 1` keeps the relative precision `floor − deg` of `z`.
    pub fn pow(&self, n: i64) -> Result<Self> {
        if n == 0 {
            let (floor, top) = match (self.floor, self.top()) {
                (Some(f), Some(t)) => (f, t),
                _ => return Err(Error::InvalidParameter("zero to the power 0".into())),
            };
            return Ok(Self::one(&self.spec, floor - top));
        }
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut acc = base.clone();
        for _ in 1..n.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }

    /// Agreement at every degree above `max(floor, self.floor, other.floor)`.
    pub fn equal_to_floor(&self, other: &Self, floor: i64) -> bool {
        let cut = [Some(floor), self.floor, other.floor].into_iter().flatten().max().unwrap_or(floor);
        let above = |z: &Self| z.coeffs.range(cut + 1..).map(|(i, c)| (*i, c.clone())).collect::<Vec<_>>();
        same_spec(&self.spec, &other.spec) && above(self) == above(other)
    }

    /// Agreement up to the weaker of the two floors.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.equal_to_floor(other, i64::MIN)
    }

    /// Inverse by long division: with `z = a_n T^n + ⋯`, each step reads the
    /// leading term `c·T^d` of the residual `1 − z·u` and appends
    /// `(c/a_n)·T^{d−n}` to `u`.
    ///
    /// The result has floor `floor(z) − 2·deg(z)`.
    pub fn inverse(&self) -> Result<Self> {
        let floor = self.floor.ok_or(Error::DivisionByZero)?;
        let (n, a_n) = self.leading().ok_or_else(|| {
            Error::PrecisionExhausted(format!("leading coefficient not resolved above floor {floor}"))
        })?;
        let out_floor = floor - 2 * n;
        // z·(u_m T^m) is exact above m + floor; the residual is only read
        // above floor − n
        let res_floor = floor - n;
        let inv_lead = a_n.inv()?;
        let mut residual: BTreeMap<i64, RatFun> = BTreeMap::from([(0, RatFun::one())]);
        let mut u: BTreeMap<i64, RatFun> = BTreeMap::new();
        while let Some((&d, c)) = residual.iter().next_back() {
            if d <= res_floor {
                break;
            }
            let m = d - n;
            let u_m = c * &inv_lead;
            let step = product::product_terms(&self.spec, &self.coeffs, &BTreeMap::from([(m, u_m.clone())]), res_floor);
            for (k, t) in step {
                let slot = residual.entry(k).or_insert_with(RatFun::zero);
                *slot = &*slot - &t;
            }
            residual.retain(|_, c| !c.is_zero());
            debug_assert!(!residual.contains_key(&d));
            u.insert(m, u_m);
        }
        Ok(Self::from_terms(&self.spec, u, out_floor))
    }

    /// Renders `c*T^n` terms in descending degree joined by `" + "`; unit
    /// coefficients are omitted. Zero renders as `"0"`.
    pub fn render(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .rev()
            .map(|(n, c)| if c.is_one() { format!("T^{n}") } else { format!("{}*T^{n}", c.render("alpha")) })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn to_record(&self) -> SeriesRecord {
        SeriesRecord {
            version: SERIES_RECORD_VERSION,
            spec: self.spec.to_record(1),
            floor: self.floor,
            terms: self.coeffs.iter().rev().map(|(n, c)| (*n, c.to_string())).collect(),
        }
    }

    /// Inverse of [`to_record`](Self::to_record).
    pub fn from_record(record: &SeriesRecord) -> Result<Self> {
        if record.version != SERIES_RECORD_VERSION {
            return Err(Error::Parse(format!("unsupported series record version {}", record.version)));
        }
        let spec = Arc::new(DeformationSpec::from_record(&record.spec)?);
        let terms =
            record.terms.iter().map(|(n, c)| c.parse::<RatFun>().map(|c| (*n, c))).collect::<Result<Vec<_>>>()?;
        match record.floor {
            Some(f) => {
                if let Some((n, _)) = terms.iter().find(|(n, _)| *n <= f) {
                    return Err(Error::Parse(format!("term of degree {n} lies at or below the floor {f}")));
                }
                Ok(Self::from_terms(&spec, terms, f))
            }
            None if terms.is_empty() => Ok(Self::zero(&spec)),
            None => Err(Error::Parse("only the zero series may omit its floor".into())),
        }
    }
}

impl fmt::Display for DeformedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for DeformedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.floor {
            Some(fl) => write!(f, "{} + O(T^{fl})", self.render()),
            None => write!(f, "0 (exact)"),
        }
    }
}

/// Serialized form `{version, spec, floor, terms: [(degree, coeff)]}`,
/// terms in descending degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRecord {
    pub version: u32,
    pub spec: SpecRecord,
    pub floor: Option<i64>,
    pub terms: Vec<(i64, String)>,
}
