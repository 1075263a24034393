use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};

use super::parse::parse_ratfun;
use super::poly::{forward_owned_binop, Poly};
use super::rat::{render_fraction, Rat};
use crate::error::{invalid, Error, Result};

/// Element of ℚ(α) in canonical form: `num/den` coprime with `den` monic.
///
/// Canonical form makes structural equality coincide with field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFun::zero());
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = (num.div_exact(&g), den.div_exact(&g));
        let lc = den.leading().expect("nonzero");
        if lc.is_one() {
            Ok(RatFun { num, den })
        } else {
            let inv = lc.recip();
            Ok(RatFun { num: num.scale(&inv), den: den.scale(&inv) })
        }
    }

    /// Assemble from parts already known to be canonical.
    fn from_canonical(num: Poly, den: Poly) -> Self {
        debug_assert!(den.is_monic());
        if num.is_zero() {
            return RatFun::zero();
        }
        RatFun { num, den }
    }

    pub fn zero() -> Self {
        RatFun { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFun::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        RatFun::from_poly(Poly::constant(c))
    }

    pub fn from_i64(c: i64) -> Self {
        RatFun::constant(Rat::from_integer(c.into()))
    }

    /// The indeterminate α.
    pub fn x() -> Self {
        RatFun::from_poly(Poly::x())
    }

    /// `α^k` for any integer `k`.
    pub fn x_pow(k: i64) -> Self {
        let mono = Poly::monomial(Rat::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            RatFun::from_poly(mono)
        } else {
            RatFun { num: Poly::one(), den: mono }
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFun { num: p, den: Poly::one() }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// `Some(c)` when the function is the constant `c ∈ ℚ`.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Rat) -> RatFun {
        RatFun::from_canonical(self.num.scale(c), self.den.clone())
    }

    pub fn inv(&self) -> Result<RatFun> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFun::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RatFun) -> Result<RatFun> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, exp: i64) -> Result<RatFun> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut acc = RatFun::one();
        for _ in 0..exp.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// d/dα by the quotient rule.
    pub fn derivative(&self) -> RatFun {
        if self.num.is_zero() {
            return RatFun::zero();
        }
        if self.den.is_one() {
            return RatFun::from_poly(self.num.derivative());
        }
        // (n/d)' = (n'd − nd')/d²; cancel g = gcd(d, d') first so the
        // numerator stays small.
        let dp = self.den.derivative();
        let g = Poly::gcd(&self.den, &dp);
        let d_over_g = self.den.div_exact(&g);
        let dp_over_g = dp.div_exact(&g);
        let num = &(&self.num.derivative() * &d_over_g) - &(&self.num * &dp_over_g);
        RatFun::new(num, &self.den * &d_over_g).expect("nonzero denominator")
    }

    pub fn nth_derivative(&self, k: u32) -> RatFun {
        let mut f = self.clone();
        for _ in 0..k {
            if f.is_zero() {
                break;
            }
            f = f.derivative();
        }
        f
    }

    /// `f(α^k)` for `k ≥ 1`.
    pub fn substitute_power(&self, k: usize) -> RatFun {
        RatFun::from_canonical(self.num.substitute_power(k), self.den.substitute_power(k))
    }

    /// `f(1/α)`.
    pub fn substitute_reciprocal(&self) -> RatFun {
        let dn = self.num.degree_usize().unwrap_or(0);
        let dd = self.den.degree_usize().unwrap_or(0);
        let n = dn.max(dd);
        RatFun::new(self.num.reversed(n), self.den.reversed(n)).expect("nonzero denominator")
    }

    /// Decides membership in the subfield ℚ(α^|s|).
    ///
    /// Returns `g` with `g(α^|s|) = f` when it exists. In canonical form the
    /// test reduces to exponent divisibility of numerator and denominator.
    pub fn in_power_subfield(&self, s: i64) -> Result<Option<RatFun>> {
        if s == 0 {
            return invalid("subfield exponent s must be nonzero");
        }
        let k = s.unsigned_abs() as usize;
        match (self.num.deflate(k), self.den.deflate(k)) {
            (Some(n), Some(d)) => Ok(Some(RatFun::from_canonical(n, d))),
            _ => Ok(None),
        }
    }

    pub fn eval(&self, x: &Rat) -> Result<Rat> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(x) / d)
    }

    /// Text form in the given variable: constants as `n/d`, everything else
    /// as `(num)/(den)` with descending powers.
    pub fn render(&self, var: &str) -> String {
        match self.as_constant() {
            Some(c) => render_fraction(&c),
            None => format!("({})/({})", self.num.render(var), self.den.render(var)),
        }
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("alpha"))
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFun({self})")
    }
}

impl FromStr for RatFun {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_ratfun(s, "alpha")
    }
}

impl Add for &RatFun {
    type Output = RatFun;

    fn add(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFun::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero");
        }
        // Henrici: only the common part of the denominators can cancel.
        let g = Poly::gcd(&self.den, &rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return RatFun::from_canonical(num, &self.den * &rhs.den);
        }
        let b = self.den.div_exact(&g);
        let d = rhs.den.div_exact(&g);
        let t = &(&self.num * &d) + &(&rhs.num * &b);
        if t.is_zero() {
            return RatFun::zero();
        }
        let g2 = Poly::gcd(&t, &g);
        let num = t.div_exact(&g2);
        let den = &(&b * &d) * &g.div_exact(&g2);
        RatFun::from_canonical(num, den)
    }
}

impl Sub for &RatFun {
    type Output = RatFun;

    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl Mul for &RatFun {
    type Output = RatFun;

    fn mul(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFun::from_poly(&self.num * &rhs.num);
        }
        let g1 = Poly::gcd(&self.num, &rhs.den);
        let g2 = Poly::gcd(&rhs.num, &self.den);
        let num = &self.num.div_exact(&g1) * &rhs.num.div_exact(&g2);
        let den = &self.den.div_exact(&g2) * &rhs.den.div_exact(&g1);
        RatFun::from_canonical(num, den)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;

    fn neg(self) -> RatFun {
        RatFun { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFun {
    type Output = RatFun;

    fn neg(self) -> RatFun {
        -&self
    }
}

forward_owned_binop!(Add, add, RatFun);
forward_owned_binop!(Sub, sub, RatFun);
forward_owned_binop!(Mul, mul, RatFun);

impl Zero for RatFun {
    fn zero() -> Self {
        RatFun::zero()
    }

    fn is_zero(&self) -> bool {
        RatFun::is_zero(self)
    }
}

impl One for RatFun {
    fn one() -> Self {
        RatFun::one()
    }
}

impl From<Rat> for RatFun {
    fn from(c: Rat) -> Self {
        RatFun::constant(c)
    }
}

impl From<Poly> for RatFun {
    fn from(p: Poly) -> Self {
        RatFun::from_poly(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::{int, rat};

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    fn f(n: &[i64], d: &[i64]) -> RatFun {
        RatFun::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn field_operations() {
        let a = RatFun::x();
        assert_eq!(&a * &a.inv().unwrap(), RatFun::one());
        assert_eq!(f(&[1, 1], &[1]) * f(&[-1, 1], &[1]), f(&[-1, 0, 1], &[1]));
        // 1/(α+1) + 1/(α−1) = 2α/(α²−1)
        assert_eq!(f(&[1], &[1, 1]) + f(&[1], &[-1, 1]), f(&[0, 2], &[-1, 0, 1]));
        assert!(matches!(RatFun::one().checked_div(&RatFun::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn canonical_form_is_monic_and_reduced() {
        let g = f(&[2, 2], &[4, 0, -4]); // (2α+2)/(−4α²+4) = −1/(2α − 2)... monic den
        assert!(g.denom().is_monic());
        assert_eq!(g, f(&[1], &[-2, 2]).scale(&int(-1)));
        assert_eq!(g.numer().as_constant(), Some(rat(1, -2)));
    }

    #[test]
    fn derivatives() {
        assert_eq!(f(&[0, 0, 1], &[1]).derivative(), f(&[0, 2], &[1]));
        assert_eq!(f(&[1], &[0, 1]).derivative(), f(&[-1], &[0, 0, 1]));
        // (α²+1)/(α−1) → (α²−2α−1)/(α−1)²
        assert_eq!(f(&[1, 0, 1], &[-1, 1]).derivative(), f(&[-1, -2, 1], &[1, -2, 1]));
        assert_eq!(RatFun::from_i64(7).derivative(), RatFun::zero());
    }

    #[test]
    fn power_subfield_membership() {
        assert_eq!(f(&[0, 0, 1], &[1]).in_power_subfield(2).unwrap(), Some(RatFun::x()));
        assert_eq!(RatFun::x().in_power_subfield(2).unwrap(), None);
        // (α⁴+1)/α² ↦ (α²+1)/α
        assert_eq!(f(&[1, 0, 0, 0, 1], &[0, 0, 1]).in_power_subfield(-2).unwrap(), Some(f(&[1, 0, 1], &[0, 1])));
        assert!(matches!(RatFun::x().in_power_subfield(0), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn reciprocal_substitution() {
        // (α+2)/(α²) at 1/α is (2α²+α)... = α(2α+1)·... check by evaluation
        let g = f(&[2, 1], &[0, 0, 1]);
        let h = g.substitute_reciprocal();
        let x = rat(3, 7);
        assert_eq!(h.eval(&x).unwrap(), g.eval(&x.recip()).unwrap());
    }

    #[test]
    fn rendering() {
        assert_eq!(RatFun::from_i64(3).to_string(), "3/1");
        assert_eq!(f(&[1, 0, 1], &[-1, 1]).to_string(), "(alpha^2 + 1)/(alpha - 1)");
        assert_eq!(RatFun::x().to_string(), "(alpha)/(1)");
    }
}
