//! Generalized binomial coefficients, bracket symbols, and brute-force
//! evaluators for the combinatorial identities the deformed product rests on.
//!
//! Every `check_*` function evaluates both sides of an identity exactly and
//! compares them; nothing here is symbolic.

use num_traits::{One, Zero};

use crate::arith::{int, Poly, Rat};
use crate::error::{invalid, Result};

/// `[a, b]_k = a(a − b)(a − 2b)⋯(a − (k−1)b)`, with `[a, b]_0 = 1`.
pub fn bracket(a: &Rat, b: &Rat, k: u32) -> Rat {
    let mut acc = Rat::one();
    let mut factor = a.clone();
    for _ in 0..k {
        if factor.is_zero() {
            return Rat::zero();
        }
        acc *= &factor;
        factor -= b;
    }
    acc
}

/// Falling factorial `[a]_k = [a, 1]_k`.
pub fn falling(a: &Rat, k: u32) -> Rat {
    bracket(a, &Rat::one(), k)
}

/// `C(a, k) = [a]_k / k!` for rational `a`.
pub fn gen_binom(a: &Rat, k: u32) -> Rat {
    let mut acc = Rat::one();
    let mut factor = a.clone();
    for i in 1..=k {
        if factor.is_zero() {
            return Rat::zero();
        }
        acc = acc * &factor / int(i as i64);
        factor -= Rat::one();
    }
    acc
}

/// `C(a, k)` extended by zero to negative `k`.
pub fn binom(a: &Rat, k: i64) -> Rat {
    if k < 0 {
        Rat::zero()
    } else {
        gen_binom(a, k as u32)
    }
}

/// `C(n, k)` for an integer top entry (which may be negative).
pub fn binom_int(n: i64, k: i64) -> Rat {
    binom(&int(n), k)
}

fn sign(e: i64) -> Rat {
    if e.rem_euclid(2) == 0 {
        Rat::one()
    } else {
        -Rat::one()
    }
}

/// `Σ_{j=0}^{m} (−1)^j C(a, j) C(a − j, t) = (−1)^m C(a, t) C(a − t − 1, m)`.
pub fn check_vandermonde_shift(a: &Rat, m: u32, t: u32) -> bool {
    let lhs =
        (0..=m).fold(Rat::zero(), |acc, j| acc + sign(j as i64) * gen_binom(a, j) * gen_binom(&(a - int(j as i64)), t));
    let rhs = sign(m as i64) * gen_binom(a, t) * gen_binom(&(a - int(t as i64) - Rat::one()), m);
    lhs == rhs
}

/// `Σ_{t=0}^{l} (−1)^{l−t} C(z, t) C(z − 1 − t, l − t) p(t) = p(z)` for `deg p ≤ l`.
pub fn check_poly_interpolation(l: u32, p: &Poly, z: &Rat) -> Result<bool> {
    if p.degree_usize().is_some_and(|d| d > l as usize) {
        return invalid(format!("polynomial degree exceeds l = {l}"));
    }
    let lhs = (0..=l).fold(Rat::zero(), |acc, t| {
        let t_rat = int(t as i64);
        acc + sign((l - t) as i64) * gen_binom(z, t) * gen_binom(&(z - Rat::one() - &t_rat), l - t) * p.eval(&t_rat)
    });
    Ok(lhs == p.eval(z))
}

/// All compositions of `total` into `parts` positive integers, in
/// lexicographic order. `compositions(0, 0)` is the single empty composition.
pub fn compositions(total: u32, parts: u32) -> Vec<Vec<u32>> {
    fn rec(remaining: u32, parts: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 0 {
            if remaining == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        // each later part needs at least 1
        for first in 1..=remaining.saturating_sub(parts - 1) {
            prefix.push(first);
            rec(remaining - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, parts, &mut Vec::new(), &mut out);
    out
}

fn check_phi_args(i: i64, l: i64, nu: i64) -> Result<()> {
    if i < 1 || l < i || nu < 1 {
        return invalid(format!("need 1 ≤ i ≤ l and ν ≥ 1, got i={i}, l={l}, ν={nu}"));
    }
    Ok(())
}

/// `φ(i, l) = Σ_{(j₁..j_i) ⊨ l} Π C(1/ν, j_t)`, summed over every composition
/// of `l` into `i` positive parts.
pub fn phi_composition_sum(i: i64, l: i64, nu: i64) -> Result<Rat> {
    check_phi_args(i, l, nu)?;
    let inv_nu = Rat::new(1.into(), nu.into());
    Ok(compositions(l as u32, i as u32)
        .into_iter()
        .map(|parts| parts.iter().fold(Rat::one(), |acc, &j| acc * gen_binom(&inv_nu, j)))
        .fold(Rat::zero(), |acc, x| acc + x))
}

/// Inclusion–exclusion form `Σ_{j=0}^{i−1} (−1)^j C(i, j) C((i−j)/ν, l)`.
pub fn phi_closed_form(i: i64, l: i64, nu: i64) -> Result<Rat> {
    check_phi_args(i, l, nu)?;
    Ok((0..i).fold(Rat::zero(), |acc, j| {
        acc + sign(j) * binom_int(i, j) * gen_binom(&Rat::new((i - j).into(), nu.into()), l as u32)
    }))
}

/// `Σ_{t=0}^{u} (−1)^{u−t} C(1 − lν, t) C(−lν − t, u − t) C(t/ν, u) = C(1/ν − l, u)`.
pub fn check_f12(l: i64, u: u32, nu: i64) -> bool {
    let lnu = l * nu;
    let lhs = (0..=u).fold(Rat::zero(), |acc, t| {
        acc + sign((u - t) as i64)
            * binom_int(1 - lnu, t as i64)
            * binom_int(-lnu - t as i64, (u - t) as i64)
            * gen_binom(&Rat::new((t as i64).into(), nu.into()), u)
    });
    let rhs = gen_binom(&(Rat::new(1.into(), nu.into()) - int(l)), u);
    lhs == rhs
}

/// `φ₀(j₁..j_k; t) = Σ_{i=0}^{t} C(m, k+i) C(k+i, k) C(J, t−i)` with `J = Σ j`.
pub fn phi0_closed_form(m: i64, j_list: &[i64], t: u32) -> Rat {
    let k = j_list.len() as i64;
    let total: i64 = j_list.iter().sum();
    (0..=t as i64)
        .fold(Rat::zero(), |acc, i| acc + binom_int(m, k + i) * binom_int(k + i, k) * binom_int(total, t as i64 - i))
}

/// `Σ_{q=0}^{t} C(n, q) φ₀(j; t − q)`, the coefficient that collapses to
/// `C(m, k) C(m + n − k + J, t)` when the product is associative.
pub fn phi_collapsed_sum(m: i64, n: i64, j_list: &[i64], t: u32) -> Rat {
    (0..=t).fold(Rat::zero(), |acc, q| acc + binom_int(n, q as i64) * phi0_closed_form(m, j_list, t - q))
}

/// Right-hand side of [`phi_collapsed_sum`].
pub fn phi_collapsed_closed(m: i64, n: i64, j_list: &[i64], t: u32) -> Rat {
    let k = j_list.len() as i64;
    let total: i64 = j_list.iter().sum();
    binom_int(m, k) * binom_int(m + n - k + total, t as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use proptest::prelude::*;

    #[test]
    fn bracket_values() {
        assert_eq!(bracket(&rat(5, 3), &rat(2, 7), 0), Rat::one());
        assert_eq!(bracket(&int(3), &int(1), 2), int(6));
        // 1·(1−2)·(1−4) = 3
        assert_eq!(bracket(&int(1), &int(2), 3), int(3));
    }

    #[test]
    fn binomial_values() {
        assert_eq!(gen_binom(&rat(7, 5), 0), Rat::one());
        assert_eq!(gen_binom(&int(-1), 2), int(1));
        assert_eq!(gen_binom(&rat(1, 2), 2), rat(-1, 8));
        assert_eq!(binom_int(0, 1), Rat::zero());
        assert_eq!(binom_int(-1, 2), int(1));
        assert_eq!(binom(&int(4), -1), Rat::zero());
    }

    #[test]
    fn vandermonde_shift_examples() {
        assert!(check_vandermonde_shift(&int(5), 2, 1));
        assert!(check_vandermonde_shift(&rat(1, 2), 3, 2));
        assert!(check_vandermonde_shift(&rat(-13, 4), 0, 0));
    }

    #[test]
    fn interpolation_examples() {
        assert!(check_poly_interpolation(0, &Poly::one(), &int(7)).unwrap());
        assert!(check_poly_interpolation(2, &Poly::from_ints(&[0, 0, 1]), &int(5)).unwrap());
        assert!(check_poly_interpolation(3, &Poly::from_ints(&[0, -1, 0, 1]), &int(-2)).unwrap());
        assert!(check_poly_interpolation(1, &Poly::from_ints(&[0, 0, 1]), &int(2)).is_err());
    }

    #[test]
    fn composition_enumeration() {
        assert_eq!(compositions(3, 2), vec![vec![1, 2], vec![2, 1]]);
        assert_eq!(compositions(0, 0), vec![Vec::<u32>::new()]);
        assert!(compositions(2, 3).is_empty());
        assert_eq!(compositions(6, 3).len(), 10); // C(5, 2)
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi_composition_sum(1, 3, 2).unwrap(), rat(1, 16));
        for nu in 1..=4 {
            let inv = Rat::new(1.into(), nu.into());
            assert_eq!(phi_composition_sum(4, 4, nu).unwrap(), crate::arith::rat::pow(&inv, 4));
        }
        // T(2,3) = {(1,2),(2,1)}: 2·C(1/2,1)C(1/2,2) = 2·(1/2)(−1/8) = −1/8
        assert_eq!(phi_composition_sum(2, 3, 2).unwrap(), rat(-1, 8));
        assert_eq!(phi_closed_form(2, 3, 2).unwrap(), rat(-1, 8));
        assert!(phi_composition_sum(3, 2, 1).is_err());
        assert!(phi_closed_form(1, 1, 0).is_err());
    }

    #[test]
    fn f12_examples() {
        assert!(check_f12(1, 1, 1));
        assert!(check_f12(2, 3, 2));
        assert!(check_f12(1, 1, 1000));
    }

    #[test]
    fn phi0_examples() {
        for m in -3..=4 {
            for t in 0..4 {
                assert_eq!(phi0_closed_form(m, &[], t), binom_int(m, t as i64));
            }
            assert_eq!(phi0_closed_form(m, &[-2], 0), binom_int(m, 1));
        }
        // m=3, j=[−1,−2], t=1: C(3,2)C(2,2)C(−3,1) + C(3,3)C(3,2)C(−3,0) = −9 + 3
        assert_eq!(phi0_closed_form(3, &[-1, -2], 1), int(-6));
    }

    fn small_rat() -> impl Strategy<Value = Rat> {
        (-40i64..40, 1i64..9).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn pascal_step(a in small_rat(), k in 0u32..12) {
            prop_assert_eq!(
                gen_binom(&a, k + 1),
                gen_binom(&a, k) * (&a - int(k as i64)) / int(k as i64 + 1)
            );
        }

        #[test]
        fn product_of_binomials(a in small_rat(), v in 0u32..6, w in 0u32..6) {
            prop_assert_eq!(
                gen_binom(&a, v + w) * binom_int((v + w) as i64, w as i64),
                gen_binom(&a, v) * gen_binom(&(&a - int(v as i64)), w)
            );
        }

        #[test]
        fn alternating_partial_sum(a in small_rat(), n in 0u32..12) {
            let lhs = (0..=n).fold(Rat::zero(), |acc, j| acc + sign(j as i64) * gen_binom(&a, j));
            prop_assert_eq!(lhs, sign(n as i64) * gen_binom(&(&a - Rat::one()), n));
        }

        #[test]
        fn associativity_coefficient_collapses(
            m in -5i64..6, n in -5i64..6, j_list in proptest::collection::vec(-4i64..=0, 0..4), t in 0u32..5
        ) {
            prop_assert_eq!(phi_collapsed_sum(m, n, &j_list, t), phi_collapsed_closed(m, n, &j_list, t));
        }
    }
}
