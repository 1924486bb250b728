//! Exact arithmetic: small number theory, integer lattices, rational matrices.

pub mod qmat;
pub mod zmat;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use qmat::QMatrix;

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorisation by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut k = 0;
            while n.is_multiple_of(d) {
                n /= d;
                k += 1;
            }
            out.push((d, k));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n.sqrt()).filter(|d| n.is_multiple_of(*d)).collect();
    let mut big: Vec<u64> = out.iter().rev().map(|d| n / d).collect();
    if let (Some(a), Some(b)) = (out.last(), big.first()) {
        if a == b {
            big.remove(0);
        }
    }
    out.extend(big);
    out
}

/// p-adic valuation of a positive integer.
pub fn val_u64(mut n: u64, p: u64) -> u32 {
    let mut k = 0;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        k += 1;
    }
    k
}

pub fn is_prime_power(n: u64) -> bool {
    n > 1 && factorize(n).len() == 1
}

pub fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    r
}

/// Inverse modulo a prime.
pub fn mod_inv(a: u64, p: u64) -> u64 {
    mod_pow(a % p, p - 2, p)
}

pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let qs = prime_divisors(p - 1);
    (2..p)
        .find(|&g| qs.iter().all(|&q| mod_pow(g, (p - 1) / q, p) != 1))
        .expect("prime has a primitive root")
}

/// Multiplicative order of `a` modulo `m` (gcd(a,m)=1).
pub fn mult_order(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 1;
    }
    let mut x = a % m;
    let mut k = 1;
    while x != 1 {
        x = x * a % m;
        k += 1;
    }
    k
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(1, |acc, (p, k)| acc * (p - 1) * p.pow(k - 1))
}

pub fn moebius(n: u64) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, k)| k > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Ramanujan sum `Σ_{j ∈ (Z/d)^×} ζ_d^{jk}`.
pub fn ramanujan_sum(d: u64, k: u64) -> i64 {
    let g = d.gcd(&k);
    let q = d / g;
    moebius(q) * (euler_phi(d) / euler_phi(q)) as i64
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// True when a nonzero rational is a square in Q.
pub fn is_rational_square(r: &BigRational) -> bool {
    !r.is_zero() && is_perfect_square(r.numer()) && is_perfect_square(r.denom())
}

/// ord_p of a nonzero rational.
pub fn rational_val(r: &BigRational, p: u64) -> i64 {
    let bp = BigInt::from(p);
    let count = |x: &BigInt| {
        let mut x = x.abs();
        let mut k = 0i64;
        while !x.is_zero() && (&x % &bp).is_zero() {
            x /= &bp;
            k += 1;
        }
        k
    };
    count(r.numer()) - count(r.denom())
}

const TRIAL_BOUND: u64 = 1_000_000;

/// Squarefree part of |n| for n ≠ 0. Trial division up to 10^6; the remaining
/// cofactor must be 1, a square, or below 10^12 (hence prime).
pub fn squarefree_part(n: &BigInt) -> crate::Result<BigUint> {
    let mut m = n.abs().to_biguint().unwrap_or_default();
    if m.is_zero() {
        return Err(crate::Error::Factorization("0".into()));
    }
    let mut out = BigUint::one();
    let mut d = 2u64;
    while d <= TRIAL_BOUND {
        let bd = BigUint::from(d);
        if &bd * &bd > m {
            break;
        }
        let mut k = 0;
        while (&m % &bd).is_zero() {
            m /= &bd;
            k += 1;
        }
        if k % 2 == 1 {
            out *= &bd;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m.is_one() {
        return Ok(out);
    }
    let r = m.sqrt();
    if &r * &r == m {
        return Ok(out);
    }
    let bound = BigUint::from(TRIAL_BOUND) * BigUint::from(TRIAL_BOUND);
    if m < bound || d <= TRIAL_BOUND {
        out *= m;
        return Ok(out);
    }
    Err(crate::Error::Factorization(n.to_string()))
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_i64(n: &BigInt) -> Option<i64> {
    n.to_i64()
}

pub fn sign_of(n: &BigInt) -> i8 {
    match n.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Rational power with integer exponent.
pub fn rat_pow(r: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        num_traits::pow(r.clone(), e as usize)
    } else {
        num_traits::pow(r.recip(), (-e) as usize)
    }
}

/// Legendre symbol (a/p) for odd prime p and a coprime to p.
pub fn legendre(a: i64, p: u64) -> i8 {
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    if mod_pow(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}
