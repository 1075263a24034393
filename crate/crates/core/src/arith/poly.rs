use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::modgcd;
use super::rat::{render_compact, Rat};
use crate::degree::Degree;
use crate::error::{Error, Result};

/// Univariate polynomial over ℚ, stored as `content · prim` with `prim` a
/// primitive integer polynomial (ascending coefficients) whose leading
/// coefficient is positive.
///
/// The split is unique, so structural equality is polynomial equality.
/// Products of primitive polynomials are primitive, which keeps
/// multiplication and exact division free of rational normalization. The
/// zero polynomial has empty `prim` and zero content.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    content: Rat,
    prim: Vec<BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { content: c, prim: vec![BigInt::one()] }
    }

    /// The indeterminate itself.
    pub fn x() -> Self {
        Poly::monomial(Rat::one(), 1)
    }

    pub fn monomial(c: Rat, degree: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut prim = vec![BigInt::zero(); degree + 1];
        prim[degree] = BigInt::one();
        Poly { content: c, prim }
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints = coeffs.iter().map(|c| (c * Rat::from_integer(lcm.clone())).to_integer()).collect();
        Poly::from_scaled_ints(Rat::new(BigInt::one(), lcm), ints)
    }

    /// `scale · Σ v_i x^i`, normalized.
    fn from_scaled_ints(scale: Rat, mut v: Vec<BigInt>) -> Self {
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        if v.is_empty() || scale.is_zero() {
            return Poly::zero();
        }
        let mut g = v.iter().fold(BigInt::zero(), |acc, c| if acc.is_one() { acc } else { acc.gcd(c) });
        if v.last().expect("nonempty").is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for c in v.iter_mut() {
                *c /= &g;
            }
        }
        Poly { content: scale * Rat::from_integer(g), prim: v }
    }

    /// Ascending integer coefficients, `from_ints(&[1, 0, 2])` is `2x² + 1`.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::from_scaled_ints(Rat::one(), coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Ascending rational coefficients.
    pub fn coeffs(&self) -> Vec<Rat> {
        self.prim.iter().map(|c| &self.content * c).collect()
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.prim.get(i).map_or_else(Rat::zero, |c| &self.content * c)
    }

    pub fn is_zero(&self) -> bool {
        self.prim.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.prim.len() == 1 && self.content.is_one()
    }

    pub fn degree(&self) -> Degree {
        match self.prim.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n as i64 - 1),
        }
    }

    /// Degree of a nonzero polynomial; zero maps to `None`.
    pub fn degree_usize(&self) -> Option<usize> {
        self.prim.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<Rat> {
        self.prim.last().map(|c| &self.content * c)
    }

    /// Returns the constant value when the polynomial has degree ≤ 0.
    pub fn as_constant(&self) -> Option<Rat> {
        match self.prim.len() {
            0 => Some(Rat::zero()),
            1 => Some(self.content.clone()),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() || self.is_zero() {
            return Poly::zero();
        }
        Poly { content: &self.content * c, prim: self.prim.clone() }
    }

    pub fn monic(&self) -> Poly {
        match self.prim.last() {
            None => Poly::zero(),
            Some(lc) => Poly { content: Rat::new(BigInt::one(), lc.clone()), prim: self.prim.clone() },
        }
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    /// Euclidean division, `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dl = d.leading().ok_or(Error::DivisionByZero)?;
        let dd = d.prim.len() - 1;
        if self.prim.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let inv_lead = dl.recip();
        let dc = d.coeffs();
        let mut rem = self.coeffs();
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let q = top * &inv_lead;
            for (j, c) in dc.iter().enumerate() {
                if !c.is_zero() {
                    rem[i + j] -= &q * c;
                }
            }
            quot[i] = q;
        }
        rem.truncate(dd);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    /// Exact division; the caller guarantees `d` divides `self`.
    ///
    /// By Gauss's lemma the primitive parts divide over ℤ, so this is plain
    /// integer long division.
    pub(crate) fn div_exact(&self, d: &Poly) -> Poly {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Poly::zero();
        }
        let content = &self.content / &d.content;
        if d.prim.len() == 1 {
            return Poly { content, prim: self.prim.clone() };
        }
        let lead = d.prim.last().expect("nonzero");
        let dd = d.prim.len() - 1;
        let mut rem = self.prim.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            if rem[i + dd].is_zero() {
                continue;
            }
            let (q, r) = rem[i + dd].div_rem(lead);
            debug_assert!(r.is_zero(), "inexact polynomial division");
            for (j, c) in d.prim.iter().enumerate() {
                if !c.is_zero() {
                    rem[i + j] -= &q * c;
                }
            }
            quot[i] = q;
        }
        debug_assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
        Poly { content, prim: quot }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    ///
    /// Works on the primitive parts with a modular algorithm, so coprime
    /// inputs (the common case) are settled by a single prime.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.prim.len() == 1 || b.prim.len() == 1 {
            return Poly::one();
        }
        let g = modgcd::gcd_int(&a.prim, &b.prim);
        Poly { content: Rat::one(), prim: g }.monic()
    }

    /// Euclid on a primitive pseudo-remainder sequence; the reference the
    /// modular gcd is tested against.
    #[cfg(test)]
    pub(crate) fn gcd_prs(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        let (mut x, mut y) = if a.prim.len() >= b.prim.len() {
            (a.prim.clone(), b.prim.clone())
        } else {
            (b.prim.clone(), a.prim.clone())
        };
        while !y.is_empty() {
            if y.len() == 1 {
                return Poly::one();
            }
            let r = pseudo_rem(&x, &y);
            x = y;
            y = Poly::from_scaled_ints(Rat::one(), r).prim;
        }
        Poly { content: Rat::one(), prim: x }.monic()
    }

    pub fn derivative(&self) -> Poly {
        if self.prim.len() <= 1 {
            return Poly::zero();
        }
        let ints = self.prim.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
        Poly::from_scaled_ints(self.content.clone(), ints)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.prim.iter().rev() {
            acc = acc * x + Rat::from_integer(c.clone());
        }
        acc * &self.content
    }

    /// `p(x^k)`.
    pub fn substitute_power(&self, k: usize) -> Poly {
        assert!(k > 0, "substitution exponent must be positive");
        if k == 1 || self.prim.len() <= 1 {
            return self.clone();
        }
        let mut prim = vec![BigInt::zero(); (self.prim.len() - 1) * k + 1];
        for (i, c) in self.prim.iter().enumerate() {
            prim[i * k] = c.clone();
        }
        Poly { content: self.content.clone(), prim }
    }

    /// Inverse of [`Poly::substitute_power`]: `Some(g)` with `g(x^k) = self`
    /// when every occurring exponent is divisible by `k`.
    pub fn deflate(&self, k: usize) -> Option<Poly> {
        assert!(k > 0, "deflation exponent must be positive");
        if k == 1 {
            return Some(self.clone());
        }
        let mut prim = Vec::with_capacity(self.prim.len() / k + 1);
        for (i, c) in self.prim.iter().enumerate() {
            if i % k == 0 {
                prim.push(c.clone());
            } else if !c.is_zero() {
                return None;
            }
        }
        Some(Poly { content: self.content.clone(), prim })
    }

    /// Coefficient list reversed at a fixed length: `x^n p(1/x)` for `n ≥ deg p`.
    pub fn reversed(&self, n: usize) -> Poly {
        let mut ints = vec![BigInt::zero(); n + 1];
        for (i, c) in self.prim.iter().enumerate() {
            ints[n - i] = c.clone();
        }
        Poly::from_scaled_ints(self.content.clone(), ints)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.prim.iter().position(|c| !c.is_zero())
    }

    /// Descending-power rendering in the given variable, e.g. `3*alpha^2 - 1/2*alpha + 1`.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&render_compact(&mag));
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{}", render_compact(&mag), mono));
            }
        }
        out
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self.render("x"))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("x"))
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        // c₁P₁ + c₂P₂ = (k₁P₁ + k₂P₂)/L over the common denominator L
        let lcm = self.content.denom().lcm(rhs.content.denom());
        let k1 = self.content.numer() * (&lcm / self.content.denom());
        let k2 = rhs.content.numer() * (&lcm / rhs.content.denom());
        let g = k1.gcd(&k2);
        let (k1, k2) = (k1 / &g, k2 / &g);
        let len = self.prim.len().max(rhs.prim.len());
        let mut v = vec![BigInt::zero(); len];
        for (slot, c) in v.iter_mut().zip(&self.prim) {
            *slot = &k1 * c;
        }
        for (slot, c) in v.iter_mut().zip(&rhs.prim) {
            *slot += &k2 * c;
        }
        Poly::from_scaled_ints(Rat::new(g, lcm), v)
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let content = &self.content * &rhs.content;
        if rhs.prim.len() == 1 {
            return Poly { content, prim: self.prim.clone() };
        }
        if self.prim.len() == 1 {
            return Poly { content, prim: rhs.prim.clone() };
        }
        let mut prim = vec![BigInt::zero(); self.prim.len() + rhs.prim.len() - 1];
        for (i, a) in self.prim.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.prim.iter().enumerate() {
                if !b.is_zero() {
                    prim[i + j] += a * b;
                }
            }
        }
        // Gauss's lemma: the product of primitive polynomials is primitive
        Poly { content, prim }
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly { content: -&self.content, prim: self.prim.clone() }
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident, $ty:ty) => {
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                (&self).$method(rhs)
            }
        }
        impl $tr<$ty> for &$ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                self.$method(&rhs)
            }
        }
    };
}
pub(crate) use forward_owned_binop;

forward_owned_binop!(Add, add, Poly);
forward_owned_binop!(Sub, sub, Poly);
forward_owned_binop!(Mul, mul, Poly);

impl Neg for Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        -&self
    }
}

/// `lc(b)^{deg a − deg b + 1}·a mod b`, over ℤ. `b` must be nonzero.
#[cfg(test)]
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let lead_b = b.last().expect("nonzero divisor");
    let mut r = a.to_vec();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let lead_r = r.last().expect("nonempty").clone();
        for c in r.iter_mut() {
            *c *= lead_b;
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] -= &lead_r * bc;
        }
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn zero_degree_is_bottom() {
        assert_eq!(Poly::zero().degree(), Degree::NegInfinity);
        assert!(Poly::zero().degree() < Poly::one().degree());
        assert_eq!(Poly::from_ints(&[1, 2, 0, 0]).degree(), Degree::Finite(1));
    }

    #[test]
    fn division_and_gcd() {
        // (x² − 1) = (x − 1)(x + 1)
        let a = Poly::from_ints(&[-1, 0, 1]);
        let b = Poly::from_ints(&[1, 1]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q, Poly::from_ints(&[-1, 1]));
        assert!(r.is_zero());
        let g = Poly::gcd(&a, &Poly::from_ints(&[2, 4, 2]));
        assert_eq!(g, Poly::from_ints(&[1, 1]));
        assert_eq!(Poly::gcd(&Poly::from_ints(&[1, 1]), &Poly::from_ints(&[-1, 1])), Poly::one());
        assert!(matches!(a.div_rem(&Poly::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn deflate_and_substitute() {
        let p = Poly::from_ints(&[1, 0, 0, 0, 3]);
        let g = p.deflate(2).unwrap();
        assert_eq!(g, Poly::from_ints(&[1, 0, 3]));
        assert_eq!(g.substitute_power(2), p);
        assert!(Poly::from_ints(&[0, 1]).deflate(2).is_none());
    }

    #[test]
    fn render_descending() {
        let p = Poly::from_coeffs(vec![int(1), rat(-1, 2), int(3)]);
        assert_eq!(p.render("alpha"), "3*alpha^2 - 1/2*alpha + 1");
        assert_eq!(Poly::from_ints(&[0, -1]).render("alpha"), "-alpha");
        assert_eq!(Poly::zero().render("alpha"), "0");
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        proptest::collection::vec(-9i64..=9, 1..5).prop_map(|c| Poly::from_ints(&c))
    }

    fn rat_poly() -> impl Strategy<Value = Vec<Rat>> {
        proptest::collection::vec((-9i64..=9, 1i64..=6).prop_map(|(n, d)| rat(n, d)), 0..5)
    }

    fn naive_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    fn trimmed(mut v: Vec<Rat>) -> Vec<Rat> {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        v
    }

    proptest! {
        #[test]
        fn content_split_matches_coefficientwise_arithmetic(a in rat_poly(), b in rat_poly()) {
            let (p, q) = (Poly::from_coeffs(a.clone()), Poly::from_coeffs(b.clone()));
            prop_assert_eq!(p.coeffs(), trimmed(a.clone()));
            prop_assert_eq!((&p * &q).coeffs(), trimmed(naive_mul(&a, &b)));
            let len = a.len().max(b.len());
            let sum: Vec<Rat> = (0..len).map(|i| p.coeff(i) + q.coeff(i)).collect();
            prop_assert_eq!((&p + &q).coeffs(), trimmed(sum));
            prop_assert!((&p - &p).is_zero());
            if !q.is_zero() {
                prop_assert_eq!((&p * &q).div_exact(&q), p.clone());
                let (quot, rem) = p.div_rem(&q).unwrap();
                prop_assert_eq!(&(&quot * &q) + &rem, p);
            }
        }

        #[test]
        fn modular_gcd_matches_prs(a in small_poly(), b in small_poly(), c in small_poly()) {
            // a shared factor c makes nontrivial gcds common
            let (x, y) = (&a * &c, &b * &c);
            prop_assert_eq!(Poly::gcd(&x, &y), Poly::gcd_prs(&x, &y));
        }
    }
}
