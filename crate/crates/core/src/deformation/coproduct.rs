use std::fmt;

use num_traits::Zero;

use crate::arith::rat::render_compact;
use crate::arith::Rat;
use crate::binomial::binom_int;
use crate::deformation::DeformationSpec;
use crate::error::{invalid, Result};

/// Left tensor factor of a coproduct term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LeftFactor {
    Identity,
    Delta(i64),
}

/// `coeff · (left ⊗ δ_{j₁}⋯δ_{j_k})`; an empty `right` is the unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoproductTerm {
    pub coeff: Rat,
    pub left: LeftFactor,
    pub right: Vec<i64>,
}

impl CoproductTerm {
    pub fn new(coeff: Rat, left: LeftFactor, right: Vec<i64>) -> Self {
        CoproductTerm { coeff, left, right }
    }

    fn sort_key(&self) -> (LeftFactor, &[i64]) {
        (self.left, &self.right)
    }
}

impl fmt::Display for CoproductTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let left = match self.left {
            LeftFactor::Identity => "1".to_string(),
            LeftFactor::Delta(l) => format!("d{l}"),
        };
        let right = if self.right.is_empty() {
            "1".to_string()
        } else {
            self.right.iter().map(|j| format!("d{j}")).collect::<Vec<_>>().join("*")
        };
        write!(f, "{}*{left}⊗{right}", render_compact(&self.coeff))
    }
}

/// Sorts terms by `(left, right)` with the identity marker first.
pub fn canonical_sort(terms: &mut [CoproductTerm]) {
    terms.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
}

/// Weak compositions of `total ≤ 0` into `k` nonpositive parts, in
/// lexicographic order.
fn nonpositive_tuples(total: i64, k: u32) -> Vec<Vec<i64>> {
    fn rec(remaining: i64, k: u32, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if k == 0 {
            if remaining == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for j in remaining..=0 {
            prefix.push(j);
            rec(remaining - j, k - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, k, &mut Vec::new(), &mut out);
    out
}

/// Every term of
/// `Δδ_i = 1⊗δ_i + Σ_{i<l≤0} δ_l ⊗ Σ_{k=1}^{l−i} C(l,k) Σ_{Σj = i+k−l} δ_{j₁}⋯δ_{j_k} + δ_i⊗1`
/// with a nonzero binomial coefficient, treating every δ as nonzero.
pub fn coproduct_formal(i: i64) -> Result<Vec<CoproductTerm>> {
    if i > 0 {
        return invalid(format!("coproduct index {i} must be ≤ 0"));
    }
    let one = Rat::from_integer(1.into());
    let mut terms = vec![
        CoproductTerm::new(one.clone(), LeftFactor::Identity, vec![i]),
        CoproductTerm::new(one, LeftFactor::Delta(i), vec![]),
    ];
    for l in (i + 1)..=0 {
        for k in 1..=(l - i) {
            let c = binom_int(l, k);
            if c.is_zero() {
                continue;
            }
            for tuple in nonpositive_tuples(i + k - l, k as u32) {
                terms.push(CoproductTerm::new(c.clone(), LeftFactor::Delta(l), tuple));
            }
        }
    }
    canonical_sort(&mut terms);
    Ok(terms)
}

/// [`coproduct_formal`] restricted to terms whose operator factors are all
/// nonzero in `spec`.
pub fn coproduct(spec: &DeformationSpec, i: i64) -> Result<Vec<CoproductTerm>> {
    Ok(coproduct_formal(i)?
        .into_iter()
        .filter(|t| {
            let left_ok = match t.left {
                LeftFactor::Identity => true,
                LeftFactor::Delta(l) => !spec.delta_is_zero(l),
            };
            left_ok && t.right.iter().all(|&j| !spec.delta_is_zero(j))
        })
        .collect())
}
