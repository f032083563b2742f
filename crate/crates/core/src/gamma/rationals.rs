use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use super::GammaError;
use crate::rational::{is_prime, padic_exponent, RationalError, Q};
use crate::semiring::{GcdRational, PadicVector, TropicalValue};

/// ν_p(q): the exponent of `p` in `q`, ∞ for zero.
pub fn nu_padic(p: u64, x: &Q) -> Result<TropicalValue, GammaError> {
    if !is_prime(p) {
        return Err(RationalError::NotPrime(p).into());
    }
    Ok(match padic_exponent(x, p) {
        Some(e) => TropicalValue::int(e),
        None => TropicalValue::Infinity,
    })
}

/// An element of Γ_ℚ: the class of `x_q`, shown as `|q|` together with its
/// exponent vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaQElement {
    pub value: GcdRational,
    pub vector: PadicVector,
}

impl fmt::Display for GammaQElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.value, self.vector)
    }
}

pub fn nu_gamma_q(x: &Q) -> Result<GammaQElement, GammaError> {
    let value = GcdRational::new(x.abs()).expect("absolute value is nonnegative");
    let vector = value.to_vector()?;
    Ok(GammaQElement { value, vector })
}

/// Which defining relation of ℤ^ω an assignment breaks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InvalidRelation {
    /// gcd(p, q) = 1, so φ(1_p) ⊓ φ(1_q) must be φ(0⃗) = 0.
    TwoPrimes(u64, u64),
    /// 1_p ⊓ 0⃗ = 0⃗, so min(φ(1_p), 0) must be 0.
    Negative(u64),
}

impl InvalidRelation {
    /// Evaluates the relation under `assignment`; true when it is violated.
    pub fn is_violated(&self, assignment: &BTreeMap<u64, Q>) -> bool {
        let c = |p: &u64| assignment.get(p).cloned().unwrap_or_else(Q::zero);
        match self {
            InvalidRelation::TwoPrimes(p, q) => !c(p).min(c(q)).is_zero(),
            InvalidRelation::Negative(p) => !c(p).min(Q::zero()).is_zero(),
        }
    }
}

impl fmt::Display for InvalidRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvalidRelation::TwoPrimes(p, q) => write!(f, "min(c_{p},c_{q}) must be 0"),
            InvalidRelation::Negative(p) => write!(f, "min(c_{p},0) must be 0"),
        }
    }
}

/// A candidate homomorphism ℤ^ω ∪ {∞} → 𝕋, given by `c_p = φ(1_p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomClassification {
    Trivial,
    PAdic { p: u64, scale: Q },
    Invalid(InvalidRelation),
}

impl fmt::Display for HomClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomClassification::Trivial => write!(f, "trivial"),
            HomClassification::PAdic { p, scale } => write!(f, "p-adic p={p} scale={scale}"),
            HomClassification::Invalid(w) => write!(f, "invalid: {w}"),
        }
    }
}

/// Classifies `φ` from its values on the generators `1_p`; primes outside
/// the map are sent to 0.
pub fn classify_trop_hom(assignment: &BTreeMap<u64, Q>) -> Result<HomClassification, GammaError> {
    if let Some(&p) = assignment.keys().find(|&&p| !is_prime(p)) {
        return Err(RationalError::NotPrime(p).into());
    }
    if let Some((&p, _)) = assignment.iter().find(|(_, c)| c.is_negative()) {
        return Ok(HomClassification::Invalid(InvalidRelation::Negative(p)));
    }
    let positive: Vec<(&u64, &Q)> = assignment.iter().filter(|(_, c)| c.is_positive()).collect();
    Ok(match positive.as_slice() {
        [] => HomClassification::Trivial,
        [(p, c)] => HomClassification::PAdic {
            p: **p,
            scale: (*c).clone(),
        },
        [(p, _), (q, _), ..] => HomClassification::Invalid(InvalidRelation::TwoPrimes(**p, **q)),
    })
}

/// φ(v) = Σ_p v_p · c_p, with ∞ ↦ ∞.
pub fn apply_trop_hom(assignment: &BTreeMap<u64, Q>, v: &PadicVector) -> TropicalValue {
    match v {
        PadicVector::Infinity => TropicalValue::Infinity,
        PadicVector::Finite(m) => TropicalValue::Finite(
            m.iter()
                .filter_map(|(p, e)| assignment.get(p).map(|c| c * Q::from_integer((*e).into())))
                .sum(),
        ),
    }
}
