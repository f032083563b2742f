use std::fmt;

use num_bigint::BigInt;

use crate::gamma::GammaSemiring;
use crate::rational::{parse_q, Q};
use crate::ring::{FiniteRing, Rationals, Ring};
use crate::semiring::{Semiring, Tropical, TropicalValue};

/// What an expression's coefficients live in: a ring or a semiring, with a
/// way to read and print its elements.
pub trait Coefficients {
    type Elem: Clone + Eq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Additive inverse; `None` over a semiring.
    fn neg(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// The element an integer literal denotes.
    fn integer(&self, digits: &str) -> Option<Self::Elem>;
    /// The element a label, `p/q` literal or bracketed name denotes.
    fn element(&self, label: &str) -> Option<Self::Elem>;
    fn label(&self, a: &Self::Elem) -> String;

    fn is_idempotent(&self) -> bool {
        false
    }

    fn has_negation(&self) -> bool {
        self.neg(&self.one()).is_some()
    }
}

/// `digits` read in base ten inside the ring, so literals never overflow.
fn horner<C: Coefficients + ?Sized>(c: &C, digits: &str) -> Option<C::Elem> {
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let one = c.one();
    let mut ten = c.zero();
    for _ in 0..10 {
        ten = c.add(&ten, &one);
    }
    let mut small = vec![c.zero()];
    for d in 1..10 {
        small.push(c.add(&small[d - 1], &one));
    }
    let mut acc = c.zero();
    for b in digits.bytes() {
        acc = c.add(&c.mul(&acc, &ten), &small[(b - b'0') as usize]);
    }
    Some(acc)
}

impl Coefficients for FiniteRing {
    type Elem = usize;

    fn zero(&self) -> usize {
        self.zero_index()
    }
    fn one(&self) -> usize {
        self.one_index()
    }
    fn add(&self, a: &usize, b: &usize) -> usize {
        self.add_idx(*a, *b)
    }
    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.mul_idx(*a, *b)
    }
    fn neg(&self, a: &usize) -> Option<usize> {
        Some(self.neg_idx(*a))
    }
    fn integer(&self, digits: &str) -> Option<usize> {
        horner(self, digits)
    }
    fn element(&self, label: &str) -> Option<usize> {
        self.index_of(label)
    }
    fn label(&self, a: &usize) -> String {
        self.label_of(*a).to_string()
    }
}

impl Coefficients for Rationals {
    type Elem = Q;

    fn zero(&self) -> Q {
        Ring::zero(self)
    }
    fn one(&self) -> Q {
        Ring::one(self)
    }
    fn add(&self, a: &Q, b: &Q) -> Q {
        a + b
    }
    fn mul(&self, a: &Q, b: &Q) -> Q {
        a * b
    }
    fn neg(&self, a: &Q) -> Option<Q> {
        Some(-a)
    }
    fn integer(&self, digits: &str) -> Option<Q> {
        if !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        digits.parse::<BigInt>().ok().map(Q::from_integer)
    }
    fn element(&self, label: &str) -> Option<Q> {
        parse_q(label).ok()
    }
    fn label(&self, a: &Q) -> String {
        a.to_string()
    }
}

/// Γ_R, with elements as indices into its tables.
impl Coefficients for GammaSemiring {
    type Elem = usize;

    fn zero(&self) -> usize {
        self.zero_index()
    }
    fn one(&self) -> usize {
        self.one_index()
    }
    fn add(&self, a: &usize, b: &usize) -> usize {
        self.add_idx(*a, *b)
    }
    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.mul_idx(*a, *b)
    }
    fn neg(&self, _: &usize) -> Option<usize> {
        None
    }
    fn integer(&self, digits: &str) -> Option<usize> {
        self.parse_name(digits)
    }
    fn element(&self, label: &str) -> Option<usize> {
        self.parse_name(label)
    }
    fn label(&self, a: &usize) -> String {
        self.name(*a)
    }
    fn is_idempotent(&self) -> bool {
        true
    }
}

impl Coefficients for Tropical {
    type Elem = TropicalValue;

    fn zero(&self) -> TropicalValue {
        Semiring::zero(self)
    }
    fn one(&self) -> TropicalValue {
        Semiring::one(self)
    }
    fn add(&self, a: &TropicalValue, b: &TropicalValue) -> TropicalValue {
        Semiring::add(self, a, b)
    }
    fn mul(&self, a: &TropicalValue, b: &TropicalValue) -> TropicalValue {
        Semiring::mul(self, a, b)
    }
    fn neg(&self, _: &TropicalValue) -> Option<TropicalValue> {
        None
    }
    fn integer(&self, digits: &str) -> Option<TropicalValue> {
        digits.parse().ok()
    }
    fn element(&self, label: &str) -> Option<TropicalValue> {
        label.parse().ok()
    }
    fn label(&self, a: &TropicalValue) -> String {
        a.to_string()
    }
    fn is_idempotent(&self) -> bool {
        true
    }
}
