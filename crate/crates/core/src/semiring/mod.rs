//! Idempotent semirings under the min-convention order `a ≤ b ⟺ a + b = a`.
//!
//! A [`Semiring`] is an *instance* object: the carrier of Γ_R, of a powerset
//! semiring or of a matrix semiring depends on runtime data, so operations
//! take `&self` and elements are plain values. Finite instances expose their
//! whole carrier through [`Semiring::carrier`], which turns every law check
//! into an exhaustive scan.

use std::fmt::Debug;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

mod congruence;
mod instances;

pub use congruence::{
    congruence_closure, congruence_closure_indices, quotient_semiring, FiniteCongruence,
};
pub(crate) use instances::{parse_assignment, parse_header, parse_row};
pub use instances::{
    BoolValue, Boolean, FiniteMonoid, GcdRational, GcdRationals, MinMax, PadicVector, PadicVectors,
    Powerset, TableSemiring, Tropical, TropicalValue,
};

/// Seed used by every randomized check unless `VALUON_SEED` overrides it.
pub const DEFAULT_SEED: u64 = 0x7_a10e_5eed;

/// Cases per law for randomized checks on infinite carriers.
pub const SAMPLED_CASES: usize = 1000;

/// The property-test seed, honoring the `VALUON_SEED` environment variable.
pub fn seed_from_env() -> u64 {
    std::env::var("VALUON_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub trait Semiring {
    type Elem: Clone + Eq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Whether `a` belongs to this instance's carrier.
    fn contains(&self, _a: &Self::Elem) -> bool {
        true
    }

    /// The whole carrier, for finite instances.
    fn carrier(&self) -> Option<Vec<Self::Elem>> {
        None
    }
}

/// Random element generation for infinite carriers.
pub trait Sample: Semiring {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemiringError {
    #[error("element {0} does not belong to this semiring instance")]
    DomainMismatch(String),
    #[error("1 + 1 = 1 holds but {0} + {0} differs from {0}")]
    IdempotencyMismatch(String),
    #[error("not a congruence: {0}")]
    InvalidCongruence(String),
    #[error("the semiring is infinite; this operation needs a finite carrier")]
    Infinite,
    #[error("carrier of size {size} exceeds the bound {bound}")]
    TooLarge { size: usize, bound: usize },
    #[error("{0}")]
    Format(String),
}

fn member<S: Semiring>(s: &S, a: &S::Elem) -> Result<(), SemiringError> {
    if s.contains(a) {
        Ok(())
    } else {
        Err(SemiringError::DomainMismatch(format!("{a:?}")))
    }
}

/// `a ≤ b` in the natural order, i.e. `a + b = a`.
pub fn leq<S: Semiring>(s: &S, a: &S::Elem, b: &S::Elem) -> Result<bool, SemiringError> {
    member(s, a)?;
    member(s, b)?;
    Ok(s.add(a, b) == *a)
}

/// Infimum of a finite list; the empty infimum is `zero`, the top of the order.
pub fn inf_of<S: Semiring>(s: &S, xs: &[S::Elem]) -> Result<S::Elem, SemiringError> {
    let mut acc = s.zero();
    for x in xs {
        member(s, x)?;
        acc = s.add(&acc, x);
    }
    Ok(acc)
}

/// `1 + 1 = 1`. On finite carriers every `a + a = a` is cross-checked too,
/// and a disagreement is reported with the offending element.
pub fn check_idempotent<S: Semiring>(s: &S) -> Result<bool, SemiringError> {
    let one = s.one();
    let verdict = s.add(&one, &one) == one;
    if let Some(carrier) = s.carrier() {
        let first_bad = carrier.iter().find(|a| s.add(a, a) != **a);
        match (verdict, first_bad) {
            (true, Some(a)) => return Err(SemiringError::IdempotencyMismatch(format!("{a:?}"))),
            (false, None) => {
                return Err(SemiringError::IdempotencyMismatch(format!("{one:?}")));
            }
            _ => {}
        }
    }
    Ok(verdict)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Law {
    AddAssociative,
    AddCommutative,
    AddIdentity,
    MulAssociative,
    MulIdentity,
    LeftDistributive,
    RightDistributive,
    ZeroAnnihilates,
    Idempotent,
    OrderAntisymmetric,
    OrderTransitive,
    AddIsMeet,
}

/// A failed law together with the elements that witness the failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawViolation {
    pub law: Law,
    pub witness: Vec<String>,
}

impl std::fmt::Display for LawViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?} fails at ({})", self.law, self.witness.join(", "))
    }
}

fn violation<E: Debug>(law: Law, elems: &[&E]) -> LawViolation {
    LawViolation {
        law,
        witness: elems.iter().map(|e| format!("{e:?}")).collect(),
    }
}

/// Checks the identity, annihilation and idempotency laws at `a`.
fn check_unary<S: Semiring>(s: &S, a: &S::Elem) -> Result<(), LawViolation> {
    let (zero, one) = (s.zero(), s.one());
    if s.add(a, &zero) != *a || s.add(&zero, a) != *a {
        return Err(violation(Law::AddIdentity, &[a]));
    }
    if s.mul(a, &one) != *a || s.mul(&one, a) != *a {
        return Err(violation(Law::MulIdentity, &[a]));
    }
    if s.mul(a, &zero) != zero || s.mul(&zero, a) != zero {
        return Err(violation(Law::ZeroAnnihilates, &[a]));
    }
    if s.add(a, a) != *a {
        return Err(violation(Law::Idempotent, &[a]));
    }
    Ok(())
}

fn check_triple<S: Semiring>(
    s: &S,
    a: &S::Elem,
    b: &S::Elem,
    c: &S::Elem,
) -> Result<(), LawViolation> {
    let ab = s.add(a, b);
    if ab != s.add(b, a) {
        return Err(violation(Law::AddCommutative, &[a, b]));
    }
    if s.add(&ab, c) != s.add(a, &s.add(b, c)) {
        return Err(violation(Law::AddAssociative, &[a, b, c]));
    }
    if s.mul(&s.mul(a, b), c) != s.mul(a, &s.mul(b, c)) {
        return Err(violation(Law::MulAssociative, &[a, b, c]));
    }
    if s.mul(a, &s.add(b, c)) != s.add(&s.mul(a, b), &s.mul(a, c)) {
        return Err(violation(Law::LeftDistributive, &[a, b, c]));
    }
    if s.mul(&s.add(a, b), c) != s.add(&s.mul(a, c), &s.mul(b, c)) {
        return Err(violation(Law::RightDistributive, &[a, b, c]));
    }
    Ok(())
}

/// All idempotent-semiring laws over every triple drawn from `elems`.
pub fn check_laws<S: Semiring>(s: &S, elems: &[S::Elem]) -> Result<(), LawViolation> {
    for a in elems {
        check_unary(s, a)?;
    }
    for a in elems {
        for b in elems {
            for c in elems {
                check_triple(s, a, b, c)?;
            }
        }
    }
    Ok(())
}

/// Exhaustive law check on a finite instance.
pub fn check_laws_exhaustive<S: Semiring>(s: &S) -> Result<(), LawViolation> {
    let carrier = s
        .carrier()
        .expect("check_laws_exhaustive requires a finite carrier");
    check_laws(s, &carrier)
}

/// Randomized law check: `cases` independent triples per law.
pub fn check_laws_sampled<S: Sample>(s: &S, seed: u64, cases: usize) -> Result<(), LawViolation> {
    let mut rng = seeded_rng(seed);
    for _ in 0..cases {
        let a = s.sample(&mut rng);
        let b = s.sample(&mut rng);
        let c = s.sample(&mut rng);
        check_unary(s, &a)?;
        check_triple(s, &a, &b, &c)?;
        check_order_triple(s, &a, &b, &c)?;
    }
    Ok(())
}

fn le<S: Semiring>(s: &S, a: &S::Elem, b: &S::Elem) -> bool {
    s.add(a, b) == *a
}

fn check_order_triple<S: Semiring>(
    s: &S,
    a: &S::Elem,
    b: &S::Elem,
    x: &S::Elem,
) -> Result<(), LawViolation> {
    if le(s, a, b) && le(s, b, a) && a != b {
        return Err(violation(Law::OrderAntisymmetric, &[a, b]));
    }
    let ab = s.add(a, b);
    if le(s, x, a) && le(s, a, b) && !le(s, x, b) {
        return Err(violation(Law::OrderTransitive, &[x, a, b]));
    }
    if (le(s, x, a) && le(s, x, b)) != le(s, x, &ab) {
        return Err(violation(Law::AddIsMeet, &[x, a, b]));
    }
    Ok(())
}

/// Natural order is a partial order and `a + b` is the meet of `a` and `b`.
pub fn check_order_laws<S: Semiring>(s: &S, elems: &[S::Elem]) -> Result<(), LawViolation> {
    for a in elems {
        if !le(s, a, a) {
            return Err(violation(Law::Idempotent, &[a]));
        }
        for b in elems {
            for x in elems {
                check_order_triple(s, a, b, x)?;
            }
        }
    }
    Ok(())
}

/// Outcome of checking a map between two semirings on a sample set.
/// Each field holds the first counterexample found for that law.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HomReport {
    pub add: Option<(String, String)>,
    pub mul: Option<(String, String)>,
    pub zero: Option<String>,
    pub one: Option<String>,
    pub order: Option<(String, String)>,
}

impl HomReport {
    pub fn preserves_add(&self) -> bool {
        self.add.is_none()
    }
    pub fn preserves_mul(&self) -> bool {
        self.mul.is_none()
    }
    pub fn preserves_zero(&self) -> bool {
        self.zero.is_none()
    }
    pub fn preserves_one(&self) -> bool {
        self.one.is_none()
    }
    pub fn preserves_order(&self) -> bool {
        self.order.is_none()
    }

    /// A unital semiring homomorphism on the checked samples.
    pub fn is_homomorphism(&self) -> bool {
        self.preserves_add()
            && self.preserves_mul()
            && self.preserves_zero()
            && self.preserves_one()
    }
}

/// Checks `f: S → T` on every pair of `samples` (pass the whole carrier for
/// an exhaustive check). Order preservation is checked independently of the
/// algebraic laws.
pub fn check_homomorphism<S, T, F>(f: F, s: &S, t: &T, samples: &[S::Elem]) -> HomReport
where
    S: Semiring,
    T: Semiring,
    F: Fn(&S::Elem) -> T::Elem,
{
    let mut report = HomReport::default();
    if f(&s.zero()) != t.zero() {
        report.zero = Some(format!("{:?}", f(&s.zero())));
    }
    if f(&s.one()) != t.one() {
        report.one = Some(format!("{:?}", f(&s.one())));
    }
    let images: Vec<T::Elem> = samples.iter().map(&f).collect();
    let pair = |a: &S::Elem, b: &S::Elem| (format!("{a:?}"), format!("{b:?}"));
    for (a, fa) in samples.iter().zip(&images) {
        for (b, fb) in samples.iter().zip(&images) {
            if report.add.is_none() && f(&s.add(a, b)) != t.add(fa, fb) {
                report.add = Some(pair(a, b));
            }
            if report.mul.is_none() && f(&s.mul(a, b)) != t.mul(fa, fb) {
                report.mul = Some(pair(a, b));
            }
            if report.order.is_none() && le(s, a, b) && !le(t, fa, fb) {
                report.order = Some(pair(a, b));
            }
        }
    }
    report
}
