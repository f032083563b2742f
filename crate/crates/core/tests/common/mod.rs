//! Brute-force oracles written against raw tables and integers only, so
//! they share no code paths with the library routines they check.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use valuon::ring::FiniteRing;

/// The additive subgroup generated by the members of `mask`, by closing
/// `{0} ∪ mask` under addition.
pub fn span_mask(r: &FiniteRing, mask: u64) -> u64 {
    let mut set = mask | (1 << r.zero_index());
    loop {
        let mut next = set;
        for a in 0..r.size() {
            if set >> a & 1 == 0 {
                continue;
            }
            for b in 0..r.size() {
                if set >> b & 1 == 1 {
                    next |= 1 << r.add_idx(a, b);
                }
            }
        }
        if next == set {
            return set;
        }
        set = next;
    }
}

pub fn members(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

/// Exponent of `p` in `x` by repeated division; `None` for zero.
pub fn padic(p: u64, x: &BigRational) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let count = |mut n: BigInt| {
        let mut k = 0i64;
        while (&n % &p).is_zero() {
            n /= &p;
            k += 1;
        }
        k
    };
    Some(count(x.numer().abs()) - count(x.denom().abs()))
}

/// gcd of two nonnegative rationals over the common denominator `bd`.
pub fn rational_gcd(x: &BigRational, y: &BigRational) -> BigRational {
    let (a, b) = (x.numer().abs(), x.denom().abs());
    let (c, d) = (y.numer().abs(), y.denom().abs());
    BigRational::new((&a * &d).gcd(&(&c * &b)), b * d)
}

/// Least bottleneck weight over simple paths, `None` for ∞.
pub fn minimax_paths(d: &[Vec<Option<u64>>]) -> Vec<Vec<Option<u64>>> {
    let n = d.len();
    let mut best = vec![vec![None; n]; n];
    for (s, row) in best.iter_mut().enumerate() {
        let mut visited = vec![false; n];
        visited[s] = true;
        walk(d, s, Some(0), &mut visited, row);
    }
    best
}

fn better(a: Option<u64>, b: Option<u64>) -> bool {
    match (a, b) {
        (Some(x), Some(y)) => x < y,
        (Some(_), None) => true,
        _ => false,
    }
}

fn walk(d: &[Vec<Option<u64>>], at: usize, bottleneck: Option<u64>, visited: &mut [bool], row: &mut [Option<u64>]) {
    if better(bottleneck, row[at]) {
        row[at] = bottleneck;
    }
    for next in 0..d.len() {
        if visited[next] {
            continue;
        }
        let Some(w) = d[at][next] else { continue };
        let b = bottleneck.map(|x| x.max(w));
        visited[next] = true;
        walk(d, next, b, visited, row);
        visited[next] = false;
    }
}
