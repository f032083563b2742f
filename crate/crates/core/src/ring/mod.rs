//! Finite rings as explicit tables, plus exact ℚ.
//!
//! Elements of a [`FiniteRing`] are dense indices `0..n`. Every constructor
//! runs the ring laws exhaustively before handing the ring out.

use std::fmt::Debug;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use thiserror::Error;

use crate::rational::Q;

mod closure;
mod construct;
mod format;
mod hom;

pub use closure::{Ideal, Subgroup};
pub use construct::{builtin_field_modulus, RingSpec, BUILTIN_FIELDS};
pub use format::RingTables;
pub use hom::RingHom;

/// Largest ring accepted by exhaustive constructions.
pub const MAX_RING_SIZE: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("ring law `{law}` fails at ({})", join(.witness))]
    Law {
        law: &'static str,
        witness: Vec<usize>,
    },
    #[error("polynomial {0} is reducible")]
    Reducible(String),
    #[error("index {index} out of range for a ring with {size} elements")]
    OutOfRange { index: usize, size: usize },
    #[error("elements belong to different rings")]
    ParentMismatch,
    #[error("ring of size {size} exceeds the bound {bound}")]
    TooLarge { size: usize, bound: usize },
    #[error("{0}")]
    Format(String),
    #[error("{0}")]
    Unsupported(String),
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

/// A (possibly infinite, possibly non-commutative) ring with unit.
pub trait Ring {
    type Elem: Clone + Eq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    /// The image of an integer, `n · 1`.
    fn from_int(&self, n: i64) -> Self::Elem {
        let mut acc = self.zero();
        let mut base = self.one();
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            k >>= 1;
        }
        if n < 0 {
            self.neg(&acc)
        } else {
            acc
        }
    }

    /// Every element, for finite rings.
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        None
    }

    fn label(&self, a: &Self::Elem) -> String {
        format!("{a:?}")
    }
}

/// Random elements of an infinite ring.
pub trait RingSample: Ring {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
}

/// ℚ with exact arithmetic.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

/// Numerator and denominator bound for sampled rationals.
pub const RATIONAL_SAMPLE_BOUND: i64 = 1_000_000;

impl Ring for Rationals {
    type Elem = Q;

    fn zero(&self) -> Q {
        Q::zero()
    }
    fn one(&self) -> Q {
        Q::one()
    }
    fn add(&self, a: &Q, b: &Q) -> Q {
        a + b
    }
    fn mul(&self, a: &Q, b: &Q) -> Q {
        a * b
    }
    fn neg(&self, a: &Q) -> Q {
        -a
    }
    fn from_int(&self, n: i64) -> Q {
        Q::from_integer(BigInt::from(n))
    }
    fn label(&self, a: &Q) -> String {
        a.to_string()
    }
}

impl RingSample for Rationals {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Q {
        if rng.gen_bool(0.05) {
            return Q::zero();
        }
        let n = rng.gen_range(-RATIONAL_SAMPLE_BOUND..=RATIONAL_SAMPLE_BOUND);
        let d = rng.gen_range(1..=RATIONAL_SAMPLE_BOUND);
        Q::new(BigInt::from(n), BigInt::from(d))
    }
}

static NEXT_RING_ID: AtomicU64 = AtomicU64::new(1);

/// A finite ring with unit given by addition and multiplication tables.
#[derive(Debug, Clone)]
pub struct FiniteRing {
    id: u64,
    n: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
    neg: Vec<usize>,
    zero: usize,
    one: usize,
    labels: Vec<String>,
}

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.add == other.add
            && self.mul == other.mul
            && self.zero == other.zero
            && self.one == other.one
            && self.labels == other.labels
    }
}

impl Eq for FiniteRing {}

impl FiniteRing {
    /// Validates every ring law exhaustively and derives negation.
    pub fn from_tables(
        n: usize,
        add: Vec<usize>,
        mul: Vec<usize>,
        zero: usize,
        one: usize,
        labels: Option<Vec<String>>,
    ) -> Result<Self, RingError> {
        if n == 0 {
            return Err(RingError::Format("a ring needs at least one element".into()));
        }
        if n > MAX_RING_SIZE {
            return Err(RingError::TooLarge {
                size: n,
                bound: MAX_RING_SIZE,
            });
        }
        if add.len() != n * n || mul.len() != n * n {
            return Err(RingError::Format(format!("tables must be {n}x{n}")));
        }
        for &x in add.iter().chain(&mul).chain([&zero, &one]) {
            if x >= n {
                return Err(RingError::OutOfRange { index: x, size: n });
            }
        }
        let labels = match labels {
            Some(l) if l.len() == n => l,
            Some(l) => {
                return Err(RingError::Format(format!("{} labels for {n} elements", l.len())));
            }
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        let neg = derive_negation(n, &add, zero)?;
        let ring = FiniteRing {
            id: NEXT_RING_ID.fetch_add(1, Ordering::Relaxed),
            n,
            add,
            mul,
            neg,
            zero,
            one,
            labels,
        };
        ring.validate()?;
        Ok(ring)
    }

    fn validate(&self) -> Result<(), RingError> {
        match law_verdicts(self.n, &self.add, &self.mul, self.zero, self.one)
            .into_iter()
            .find_map(|(law, w)| w.map(|w| (law, w)))
        {
            Some((law, witness)) => Err(RingError::Law { law, witness }),
            None => Ok(()),
        }
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn zero_index(&self) -> usize {
        self.zero
    }

    pub fn one_index(&self) -> usize {
        self.one
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_of(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn add_idx(&self, a: usize, b: usize) -> usize {
        self.add[a * self.n + b]
    }

    pub fn mul_idx(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b]
    }

    pub fn neg_idx(&self, a: usize) -> usize {
        self.neg[a]
    }

    pub fn check_index(&self, a: usize) -> Result<usize, RingError> {
        if a < self.n {
            Ok(a)
        } else {
            Err(RingError::OutOfRange {
                index: a,
                size: self.n,
            })
        }
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.mul_idx(a, b) == self.mul_idx(b, a)))
    }

    /// Element order for display: 0 and 1 first, then by the number of
    /// `+`-separated terms in the label, then by index.
    pub fn display_order(&self) -> Vec<usize> {
        let mut rest: Vec<usize> = (0..self.n).filter(|&a| a != self.zero && a != self.one).collect();
        rest.sort_by_key(|&a| (self.labels[a].matches('+').count(), a));
        let mut out = vec![self.zero];
        if self.one != self.zero {
            out.push(self.one);
        }
        out.extend(rest);
        out
    }
}

/// Every ring law checked on raw tables, each with its first
/// counterexample. Out-of-range entries fail the first law and skip the rest.
pub fn law_verdicts(
    n: usize,
    add: &[usize],
    mul: &[usize],
    zero: usize,
    one: usize,
) -> Vec<(&'static str, Option<Vec<usize>>)> {
    let in_range = add.len() == n * n && mul.len() == n * n && zero < n && one < n;
    let bad = add.iter().chain(mul).position(|&x| x >= n);
    if !in_range || bad.is_some() {
        let w = bad.map(|k| vec![(k % (n * n)) / n.max(1), k % n.max(1)]).unwrap_or_default();
        return vec![("indices in range", Some(w))];
    }
    let a2 = |a: usize, b: usize| add[a * n + b];
    let m2 = |a: usize, b: usize| mul[a * n + b];
    let unary = |p: &dyn Fn(usize) -> bool| (0..n).find(|&a| !p(a)).map(|a| vec![a]);
    let binary = |p: &dyn Fn(usize, usize) -> bool| {
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| !p(a, b))
            .map(|(a, b)| vec![a, b])
    };
    let ternary = |p: &dyn Fn(usize, usize, usize) -> bool| {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if !p(a, b, c) {
                        return Some(vec![a, b, c]);
                    }
                }
            }
        }
        None
    };
    vec![
        ("indices in range", None),
        ("additive identity", unary(&|a| a2(a, zero) == a && a2(zero, a) == a)),
        ("additive inverse", unary(&|a| (0..n).any(|b| a2(a, b) == zero))),
        ("addition commutative", binary(&|a, b| a2(a, b) == a2(b, a))),
        ("addition associative", ternary(&|a, b, c| a2(a2(a, b), c) == a2(a, a2(b, c)))),
        ("multiplicative identity", unary(&|a| m2(a, one) == a && m2(one, a) == a)),
        ("zero annihilates", unary(&|a| m2(a, zero) == zero && m2(zero, a) == zero)),
        ("multiplication associative", ternary(&|a, b, c| m2(m2(a, b), c) == m2(a, m2(b, c)))),
        ("left distributive", ternary(&|a, b, c| m2(a, a2(b, c)) == a2(m2(a, b), m2(a, c)))),
        ("right distributive", ternary(&|a, b, c| m2(a2(a, b), c) == a2(m2(a, c), m2(b, c)))),
    ]
}

fn derive_negation(n: usize, add: &[usize], zero: usize) -> Result<Vec<usize>, RingError> {
    (0..n)
        .map(|a| {
            (0..n).find(|&b| add[a * n + b] == zero).ok_or(RingError::Law {
                law: "additive inverse",
                witness: vec![a],
            })
        })
        .collect()
}

impl Ring for FiniteRing {
    type Elem = usize;

    fn zero(&self) -> usize {
        self.zero
    }
    fn one(&self) -> usize {
        self.one
    }
    fn add(&self, a: &usize, b: &usize) -> usize {
        self.add_idx(*a, *b)
    }
    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.mul_idx(*a, *b)
    }
    fn neg(&self, a: &usize) -> usize {
        self.neg[*a]
    }
    fn elements(&self) -> Option<Vec<usize>> {
        Some((0..self.n).collect())
    }
    fn label(&self, a: &usize) -> String {
        self.labels[*a].clone()
    }
}
