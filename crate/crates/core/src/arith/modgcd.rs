//! Modular gcd of integer polynomials: gcds modulo word-size primes,
//! recombined by the Chinese remainder theorem and confirmed by trial
//! division.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

const PRIME_COUNT: usize = 512;

/// Primes below 2³¹ in descending order, so products fit in a `u64`.
fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(PRIME_COUNT);
        let mut n: u64 = (1 << 31) - 1;
        while out.len() < PRIME_COUNT {
            if is_prime(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

/// Deterministic Miller–Rabin for `n < 2³²`.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2, 3, 5, 7] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let (mut d, mut r) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 7, 61] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = x * x % n;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn reduce(c: &BigInt, p: u64) -> u64 {
    c.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Monic gcd over `𝔽_p`.
fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let inv = inv_mod(*b.last().expect("nonempty"), p);
        while a.len() >= b.len() {
            let q = a.last().expect("nonempty") * inv % p;
            let shift = a.len() - b.len();
            for (i, bc) in b.iter().enumerate() {
                a[i + shift] = (a[i + shift] + p - q * bc % p) % p;
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&lead) = a.last() {
        let inv = inv_mod(lead, p);
        for c in a.iter_mut() {
            *c = *c * inv % p;
        }
    }
    a
}

/// Whether `g` divides `a` over ℤ, for primitive `g`.
fn divides(a: &[BigInt], g: &[BigInt]) -> bool {
    let lead = g.last().expect("nonzero divisor");
    let mut r = a.to_vec();
    while r.len() >= g.len() {
        let (q, rem) = r.last().expect("nonempty").div_rem(lead);
        if !rem.is_zero() {
            return false;
        }
        let shift = r.len() - g.len();
        for (i, gc) in g.iter().enumerate() {
            r[i + shift] -= &q * gc;
        }
        debug_assert!(r.last().is_some_and(Zero::is_zero));
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r.is_empty()
}

fn make_primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let content = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let content = if v.last().is_some_and(Signed::is_negative) { -content } else { content };
    if !content.is_one() {
        for c in v.iter_mut() {
            *c /= &content;
        }
    }
    v
}

/// Primitive gcd with positive leading coefficient of two nonzero integer
/// polynomials (ascending coefficients, no trailing zeros).
pub(crate) fn gcd_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (lead_a, lead_b) = (a.last().expect("nonzero"), b.last().expect("nonzero"));
    let gamma = lead_a.gcd(lead_b);
    // (coefficients mod m, m, last symmetric image)
    let mut image: Option<(Vec<BigInt>, BigInt, Vec<BigInt>)> = None;
    for &p in primes() {
        let big_p = BigInt::from(p);
        if (lead_a % &big_p).is_zero() || (lead_b % &big_p).is_zero() {
            continue;
        }
        let g = gcd_mod(a.iter().map(|c| reduce(c, p)).collect(), b.iter().map(|c| reduce(c, p)).collect(), p);
        if g.len() == 1 {
            return vec![BigInt::one()];
        }
        let gamma_p = reduce(&gamma, p);
        let g: Vec<u64> = g.into_iter().map(|c| c * gamma_p % p).collect();
        let (coeffs, modulus) = match image.take() {
            Some((h, m, sym)) if h.len() == g.len() => {
                // h + m·((g − h)·m⁻¹ mod p)
                let m_inv = inv_mod(reduce(&m, p), p);
                let coeffs: Vec<BigInt> = h
                    .iter()
                    .zip(&g)
                    .map(|(hc, &gc)| {
                        let t = (gc + p - reduce(hc, p)) % p * m_inv % p;
                        hc + &m * t
                    })
                    .collect();
                let modulus = &m * &big_p;
                let new_sym = symmetric(&coeffs, &modulus);
                if new_sym == sym {
                    let candidate = make_primitive(new_sym.clone());
                    if divides(a, &candidate) && divides(b, &candidate) {
                        return candidate;
                    }
                }
                image = Some((coeffs, modulus, new_sym));
                continue;
            }
            // keep the lower-degree image; a higher degree marks an unlucky prime
            Some(kept) if kept.0.len() < g.len() => {
                image = Some(kept);
                continue;
            }
            _ => (g.into_iter().map(BigInt::from).collect::<Vec<_>>(), big_p),
        };
        let sym = symmetric(&coeffs, &modulus);
        image = Some((coeffs, modulus, sym));
    }
    unreachable!("prime supply exhausted in modular gcd")
}

fn symmetric(coeffs: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half: BigInt = m >> 1;
    coeffs.iter().map(|c| if c > &half { c - m } else { c.clone() }).collect()
}
