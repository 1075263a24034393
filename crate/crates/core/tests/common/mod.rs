//! Seeded generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use dlaurent::deformation::{make_spec, DeformationSpec};
use dlaurent::series::DeformedSeries;
use dlaurent::weyl::WeylElement;
use dlaurent::{Poly, Rat, RatFun};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub const SPECS: [(i64, i64); 6] = [(0, 1), (1, 1), (1, 2), (2, 1), (2, -1), (-1, 3)];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn spec(r: i64, s: i64) -> Arc<DeformationSpec> {
    Arc::new(make_spec(r, s).unwrap())
}

pub fn poly(rng: &mut ChaCha8Rng, max_deg: usize) -> Poly {
    let deg = rng.gen_range(0..=max_deg);
    let mut coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-9..=9)).collect();
    if coeffs[deg] == 0 {
        coeffs[deg] = 1;
    }
    Poly::from_ints(&coeffs)
}

/// Nonzero rational function with numerator and denominator of degree at
/// most `max_deg` and integer coefficients in `[−9, 9]`.
pub fn ratfun(rng: &mut ChaCha8Rng, max_deg: usize) -> RatFun {
    loop {
        let num = poly(rng, max_deg);
        let den = poly(rng, max_deg);
        if num.is_zero() || den.is_zero() {
            continue;
        }
        return RatFun::new(num, den).unwrap();
    }
}

/// Nonconstant rational function.
pub fn nonconstant_ratfun(rng: &mut ChaCha8Rng, max_deg: usize) -> RatFun {
    loop {
        let f = ratfun(rng, max_deg.max(1));
        if f.as_constant().is_none() {
            return f;
        }
    }
}

pub fn small_rat(rng: &mut ChaCha8Rng) -> Rat {
    Rat::new(rng.gen_range(-9..=9).into(), rng.gen_range(1..=5).into())
}

/// One to four terms with degrees in `[−3, 3]`.
pub fn series(rng: &mut ChaCha8Rng, spec: &Arc<DeformationSpec>, max_deg: usize, floor: i64) -> DeformedSeries {
    loop {
        let n = rng.gen_range(1..=4);
        let terms: Vec<(i64, RatFun)> = (0..n).map(|_| (rng.gen_range(-3..=3), ratfun(rng, max_deg))).collect();
        let z = DeformedSeries::from_terms(spec, terms, floor);
        if z.leading().is_some() {
            return z;
        }
    }
}

/// One to `max_terms` PBW monomials with exponents at most `max_exp`.
pub fn weyl(rng: &mut ChaCha8Rng, max_terms: usize, max_exp: u32) -> WeylElement {
    loop {
        let n = rng.gen_range(1..=max_terms);
        let z = WeylElement::from_terms(
            (0..n).map(|_| ((rng.gen_range(0..=max_exp), rng.gen_range(0..=max_exp)), small_rat(rng))),
        );
        if !z.is_zero() {
            return z;
        }
    }
}

/// A word in `p`, `q` of length at most `max_len`, as a list of letters.
pub fn word(rng: &mut ChaCha8Rng, max_len: usize) -> Vec<u8> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| if rng.gen_bool(0.5) { b'p' } else { b'q' }).collect()
}

/// Normal ordering by repeated rewriting `qp → pq + 1`, entirely on words.
pub fn normal_order(words: &[(Vec<u8>, Rat)]) -> WeylElement {
    let mut pending: Vec<(Vec<u8>, Rat)> = words.to_vec();
    let mut done: BTreeMap<Vec<u8>, Rat> = BTreeMap::new();
    while let Some((w, c)) = pending.pop() {
        match w.windows(2).position(|pair| pair == b"qp") {
            Some(k) => {
                let mut swapped = w.clone();
                swapped.swap(k, k + 1);
                let mut dropped = w.clone();
                dropped.drain(k..k + 2);
                pending.push((swapped, c.clone()));
                pending.push((dropped, c));
            }
            None => *done.entry(w).or_insert_with(|| Rat::from_integer(0.into())) += c,
        }
    }
    WeylElement::from_terms(done.into_iter().map(|(w, c)| {
        let i = w.iter().filter(|&&l| l == b'p').count() as u32;
        ((i, w.len() as u32 - i), c)
    }))
}
