//! Exact rational arithmetic helpers: primality, factorization, p-adic
//! exponents and the gcd of two rationals.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational numbers.
pub type Q = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cannot factor {0}: magnitude exceeds 64 bits")]
    TooLarge(String),
    #[error("zero has no prime factorization")]
    Zero,
    #[error("invalid rational literal `{0}`")]
    Parse(String),
}

pub fn q(numer: i64, denom: i64) -> Q {
    Q::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Parses `n`, `-n` or `n/d`.
pub fn parse_q(s: &str) -> Result<Q, RationalError> {
    let bad = || RationalError::Parse(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// Pollard-Brent; n is odd, composite and not a prime power of a tiny prime.
fn pollard_rho(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn factor_into(n: u64, out: &mut BTreeMap<u64, i64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        *out.entry(n).or_insert(0) += 1;
        return;
    }
    for p in [2u64, 3, 5, 7, 11, 13] {
        if n.is_multiple_of(p) {
            *out.entry(p).or_insert(0) += 1;
            factor_into(n / p, out);
            return;
        }
    }
    let d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

/// Prime factorization of a positive integer that fits in 64 bits.
pub fn factor_integer(n: &BigInt) -> Result<BTreeMap<u64, i64>, RationalError> {
    let m = n.abs();
    if m.is_zero() {
        return Err(RationalError::Zero);
    }
    let m = m
        .to_u64()
        .ok_or_else(|| RationalError::TooLarge(n.to_string()))?;
    let mut out = BTreeMap::new();
    factor_into(m, &mut out);
    Ok(out)
}

/// Exponent vector of a nonzero rational: numerator primes positive,
/// denominator primes negative.
pub fn factor_rational(x: &Q) -> Result<BTreeMap<u64, i64>, RationalError> {
    let mut out = factor_integer(x.numer())?;
    for (p, e) in factor_integer(x.denom())? {
        *out.entry(p).or_insert(0) -= e;
    }
    out.retain(|_, e| *e != 0);
    Ok(out)
}

fn int_exponent(n: &BigInt, p: &BigInt) -> i64 {
    let mut n = n.clone();
    let mut e = 0;
    loop {
        let (quot, rem) = n.div_rem(p);
        if !rem.is_zero() {
            return e;
        }
        n = quot;
        e += 1;
    }
}

/// Exponent of `p` in a nonzero rational; `None` for zero. `p` is assumed prime.
pub fn padic_exponent(x: &Q, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    Some(int_exponent(x.numer(), &p) - int_exponent(x.denom(), &p))
}

/// gcd of two rationals over the common denominator `bd`: gcd(ad, cb) / bd.
/// Always nonnegative; gcd(0, x) = |x|.
pub fn rational_gcd(x: &Q, y: &Q) -> Q {
    let (a, b) = (x.numer(), x.denom());
    let (c, d) = (y.numer(), y.denom());
    let num = (a * d).gcd(&(c * b));
    Q::new(num, b * d)
}
