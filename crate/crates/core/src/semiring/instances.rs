use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::{check_laws_exhaustive, Sample, Semiring, SemiringError};
use crate::rational::{factor_rational, parse_q, rational_gcd, Q};

/// A value of 𝕋 = (ℚ ∪ {∞}, min, +, ∞, 0). Also the carrier of the
/// (min, max) semiring on [0, ∞].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TropicalValue {
    Finite(Q),
    Infinity,
}

impl TropicalValue {
    pub fn int(n: i64) -> Self {
        TropicalValue::Finite(Q::from_integer(BigInt::from(n)))
    }

    pub fn finite(&self) -> Option<&Q> {
        match self {
            TropicalValue::Finite(q) => Some(q),
            TropicalValue::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, TropicalValue::Infinity)
    }
}

impl fmt::Display for TropicalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropicalValue::Finite(q) => write!(f, "{q}"),
            TropicalValue::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for TropicalValue {
    type Err = SemiringError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "∞" => Ok(TropicalValue::Infinity),
            other => parse_q(other)
                .map(TropicalValue::Finite)
                .map_err(|e| SemiringError::Format(e.to_string())),
        }
    }
}

fn sample_q<R: Rng + ?Sized>(rng: &mut R, lo: i64, hi: i64) -> Q {
    let n = rng.gen_range(lo..=hi);
    let d = rng.gen_range(1..=6);
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// The tropical semiring: min as addition, real addition as multiplication.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Tropical;

impl Semiring for Tropical {
    type Elem = TropicalValue;

    fn zero(&self) -> TropicalValue {
        TropicalValue::Infinity
    }
    fn one(&self) -> TropicalValue {
        TropicalValue::int(0)
    }
    fn add(&self, a: &TropicalValue, b: &TropicalValue) -> TropicalValue {
        a.min(b).clone()
    }
    fn mul(&self, a: &TropicalValue, b: &TropicalValue) -> TropicalValue {
        match (a, b) {
            (TropicalValue::Finite(x), TropicalValue::Finite(y)) => TropicalValue::Finite(x + y),
            _ => TropicalValue::Infinity,
        }
    }
}

impl Sample for Tropical {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> TropicalValue {
        if rng.gen_bool(0.1) {
            TropicalValue::Infinity
        } else {
            TropicalValue::Finite(sample_q(rng, -40, 40))
        }
    }
}

/// ([0, ∞], min, max, ∞, 0): bottleneck path weights.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MinMax;

impl Semiring for MinMax {
    type Elem = TropicalValue;

    fn zero(&self) -> TropicalValue {
        TropicalValue::Infinity
    }
    fn one(&self) -> TropicalValue {
        TropicalValue::int(0)
    }
    fn add(&self, a: &TropicalValue, b: &TropicalValue) -> TropicalValue {
        a.min(b).clone()
    }
    fn mul(&self, a: &TropicalValue, b: &TropicalValue) -> TropicalValue {
        a.max(b).clone()
    }
    fn contains(&self, a: &TropicalValue) -> bool {
        a.finite().is_none_or(|q| !q.is_negative())
    }
}

impl Sample for MinMax {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> TropicalValue {
        if rng.gen_bool(0.1) {
            TropicalValue::Infinity
        } else {
            TropicalValue::Finite(sample_q(rng, 0, 40))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BoolValue {
    /// ⊥, the additive identity.
    Bottom,
    /// ⊤, the multiplicative identity.
    Top,
}

impl fmt::Display for BoolValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoolValue::Bottom => "bot",
            BoolValue::Top => "top",
        })
    }
}

impl FromStr for BoolValue {
    type Err = SemiringError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "bot" | "⊥" => Ok(BoolValue::Bottom),
            "top" | "⊤" => Ok(BoolValue::Top),
            other => Err(SemiringError::Format(format!("not a boolean: `{other}`"))),
        }
    }
}

/// 𝔹 = ({⊥, ⊤}, ∨, ∧, ⊥, ⊤).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Boolean;

impl Semiring for Boolean {
    type Elem = BoolValue;

    fn zero(&self) -> BoolValue {
        BoolValue::Bottom
    }
    fn one(&self) -> BoolValue {
        BoolValue::Top
    }
    fn add(&self, a: &BoolValue, b: &BoolValue) -> BoolValue {
        (*a).max(*b)
    }
    fn mul(&self, a: &BoolValue, b: &BoolValue) -> BoolValue {
        (*a).min(*b)
    }
    fn carrier(&self) -> Option<Vec<BoolValue>> {
        Some(vec![BoolValue::Bottom, BoolValue::Top])
    }
}

/// A nonnegative rational, an element of (ℚ≥0, gcd, ·, 0, 1).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GcdRational(Q);

impl GcdRational {
    /// `None` for negative input.
    pub fn new(q: Q) -> Option<Self> {
        (!q.is_negative()).then_some(GcdRational(q))
    }

    pub fn value(&self) -> &Q {
        &self.0
    }

    /// The exponent-vector view, ∞ for zero.
    pub fn to_vector(&self) -> Result<PadicVector, crate::rational::RationalError> {
        if self.0.is_zero() {
            return Ok(PadicVector::Infinity);
        }
        Ok(PadicVector::from_exponents(factor_rational(&self.0)?))
    }
}

impl fmt::Display for GcdRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GcdRationals;

impl Semiring for GcdRationals {
    type Elem = GcdRational;

    fn zero(&self) -> GcdRational {
        GcdRational(Q::zero())
    }
    fn one(&self) -> GcdRational {
        GcdRational(Q::one())
    }
    fn add(&self, a: &GcdRational, b: &GcdRational) -> GcdRational {
        GcdRational(rational_gcd(&a.0, &b.0))
    }
    fn mul(&self, a: &GcdRational, b: &GcdRational) -> GcdRational {
        GcdRational(&a.0 * &b.0)
    }
    fn contains(&self, a: &GcdRational) -> bool {
        !a.0.is_negative()
    }
}

impl Sample for GcdRationals {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> GcdRational {
        if rng.gen_bool(0.1) {
            return self.zero();
        }
        let n = rng.gen_range(1..=720i64);
        let d = rng.gen_range(1..=60i64);
        GcdRational(Q::new(BigInt::from(n), BigInt::from(d)))
    }
}

/// An element of ℤ^ω ∪ {∞}: a finite-support exponent vector indexed by primes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PadicVector {
    Infinity,
    /// Zero exponents are never stored.
    Finite(BTreeMap<u64, i64>),
}

impl PadicVector {
    pub fn from_exponents(mut exps: BTreeMap<u64, i64>) -> Self {
        exps.retain(|_, e| *e != 0);
        PadicVector::Finite(exps)
    }

    /// The all-zero vector, the multiplicative identity.
    pub fn identity() -> Self {
        PadicVector::Finite(BTreeMap::new())
    }

    /// The generator 1_p.
    pub fn unit(p: u64) -> Self {
        PadicVector::Finite(BTreeMap::from([(p, 1)]))
    }

    pub fn exponent(&self, p: u64) -> Option<i64> {
        match self {
            PadicVector::Infinity => None,
            PadicVector::Finite(m) => Some(m.get(&p).copied().unwrap_or(0)),
        }
    }

    /// Projection onto the `p`-th coordinate, ∞ ↦ ∞.
    pub fn project(&self, p: u64) -> TropicalValue {
        match self.exponent(p) {
            Some(e) => TropicalValue::int(e),
            None => TropicalValue::Infinity,
        }
    }

    /// The rational ∏ p^e, with ∞ ↦ 0.
    pub fn to_gcd_rational(&self) -> GcdRational {
        match self {
            PadicVector::Infinity => GcdRational(Q::zero()),
            PadicVector::Finite(m) => {
                let mut acc = Q::one();
                for (&p, &e) in m {
                    let pe = Q::from_integer(BigInt::from(p)).pow(e as i32);
                    acc *= pe;
                }
                GcdRational(acc)
            }
        }
    }
}

impl fmt::Display for PadicVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PadicVector::Infinity => write!(f, "inf"),
            PadicVector::Finite(m) => {
                let parts: Vec<String> = m.iter().map(|(p, e)| format!("{p}:{e}")).collect();
                write!(f, "{{{}}}", parts.join(", "))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PadicVectors;

impl Semiring for PadicVectors {
    type Elem = PadicVector;

    fn zero(&self) -> PadicVector {
        PadicVector::Infinity
    }
    fn one(&self) -> PadicVector {
        PadicVector::identity()
    }
    fn add(&self, a: &PadicVector, b: &PadicVector) -> PadicVector {
        match (a, b) {
            (PadicVector::Infinity, x) | (x, PadicVector::Infinity) => x.clone(),
            (PadicVector::Finite(x), PadicVector::Finite(y)) => {
                let mut out = BTreeMap::new();
                for p in x.keys().chain(y.keys()) {
                    let e = x
                        .get(p)
                        .copied()
                        .unwrap_or(0)
                        .min(y.get(p).copied().unwrap_or(0));
                    out.insert(*p, e);
                }
                PadicVector::from_exponents(out)
            }
        }
    }
    fn mul(&self, a: &PadicVector, b: &PadicVector) -> PadicVector {
        match (a, b) {
            (PadicVector::Finite(x), PadicVector::Finite(y)) => {
                let mut out = x.clone();
                for (p, e) in y {
                    *out.entry(*p).or_insert(0) += e;
                }
                PadicVector::from_exponents(out)
            }
            _ => PadicVector::Infinity,
        }
    }
    fn contains(&self, a: &PadicVector) -> bool {
        match a {
            PadicVector::Infinity => true,
            PadicVector::Finite(m) => m
                .iter()
                .all(|(p, e)| *e != 0 && crate::rational::is_prime(*p)),
        }
    }
}

impl Sample for PadicVectors {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> PadicVector {
        if rng.gen_bool(0.1) {
            return PadicVector::Infinity;
        }
        let mut m = BTreeMap::new();
        for p in [2u64, 3, 5, 7, 11] {
            if rng.gen_bool(0.5) {
                m.insert(p, rng.gen_range(-3..=3));
            }
        }
        PadicVector::from_exponents(m)
    }
}

/// A finite monoid given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMonoid {
    n: usize,
    mul: Vec<usize>,
    one: usize,
    labels: Vec<String>,
}

impl FiniteMonoid {
    pub fn new(n: usize, mul: Vec<usize>, one: usize) -> Result<Self, SemiringError> {
        let bad = |msg: String| Err(SemiringError::Format(msg));
        if mul.len() != n * n || one >= n.max(1) || mul.iter().any(|&x| x >= n) {
            return bad(format!(
                "monoid table must be {n}x{n} with entries below {n}"
            ));
        }
        for a in 0..n {
            if mul[a * n + one] != a || mul[one * n + a] != a {
                return bad(format!("{one} is not a two-sided identity at {a}"));
            }
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a * n + b] * n + c] != mul[a * n + mul[b * n + c]] {
                        return bad(format!("multiplication not associative at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        let labels = (0..n).map(|i| i.to_string()).collect();
        Ok(FiniteMonoid {
            n,
            mul,
            one,
            labels,
        })
    }

    /// ℤ/n under addition.
    pub fn cyclic_group(n: usize) -> Self {
        let mul = (0..n * n).map(|t| (t / n + t % n) % n).collect();
        FiniteMonoid::new(n, mul, 0).expect("cyclic group table is valid")
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.one
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Text format: `monoid n=<N>`, `one=<i>`, then N `mul:` rows.
    pub fn parse(text: &str) -> Result<Self, SemiringError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().unwrap_or_default();
        let n = parse_header(header, "monoid")?;
        let one = parse_assignment(lines.next(), "one")?;
        let mut mul = Vec::with_capacity(n * n);
        for _ in 0..n {
            mul.extend(parse_row(lines.next(), "mul", n)?);
        }
        FiniteMonoid::new(n, mul, one)
    }
}

pub(crate) fn parse_header(line: &str, keyword: &str) -> Result<usize, SemiringError> {
    let rest = line
        .strip_prefix(keyword)
        .and_then(|r| r.trim().strip_prefix("n="))
        .ok_or_else(|| {
            SemiringError::Format(format!("expected `{keyword} n=<N>`, got `{line}`"))
        })?;
    rest.trim()
        .parse()
        .map_err(|_| SemiringError::Format(format!("bad size in `{line}`")))
}

pub(crate) fn parse_assignment(line: Option<&str>, key: &str) -> Result<usize, SemiringError> {
    let line = line.unwrap_or_default();
    line.strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .and_then(|r| r.trim().parse().ok())
        .ok_or_else(|| SemiringError::Format(format!("expected `{key}=<i>`, got `{line}`")))
}

pub(crate) fn parse_row(
    line: Option<&str>,
    key: &str,
    n: usize,
) -> Result<Vec<usize>, SemiringError> {
    let line = line.unwrap_or_default();
    let body = line
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix(':'))
        .ok_or_else(|| SemiringError::Format(format!("expected `{key}: <row>`, got `{line}`")))?;
    let row: Vec<usize> = body
        .split_whitespace()
        .map(|t| t.parse())
        .collect::<Result<_, _>>()
        .map_err(|_| SemiringError::Format(format!("bad entry in `{line}`")))?;
    if row.len() != n {
        return Err(SemiringError::Format(format!(
            "row `{line}` needs {n} entries"
        )));
    }
    Ok(row)
}

/// Largest monoid whose powerset carrier is enumerated.
pub const POWERSET_MAX_MONOID: usize = 16;

/// The powerset semiring 2^M: union and Minkowski product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Powerset {
    monoid: FiniteMonoid,
}

impl Powerset {
    pub fn new(monoid: FiniteMonoid) -> Result<Self, SemiringError> {
        if monoid.size() > 63 {
            return Err(SemiringError::TooLarge {
                size: monoid.size(),
                bound: 63,
            });
        }
        Ok(Powerset { monoid })
    }

    pub fn monoid(&self) -> &FiniteMonoid {
        &self.monoid
    }

    pub fn subset(&self, members: &[usize]) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.monoid.size());
        for &m in members {
            s.insert(m);
        }
        s
    }
}

impl Semiring for Powerset {
    type Elem = FixedBitSet;

    fn zero(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.monoid.size())
    }
    fn one(&self) -> FixedBitSet {
        self.subset(&[self.monoid.identity()])
    }
    fn add(&self, a: &FixedBitSet, b: &FixedBitSet) -> FixedBitSet {
        let mut out = a.clone();
        out.union_with(b);
        out
    }
    fn mul(&self, a: &FixedBitSet, b: &FixedBitSet) -> FixedBitSet {
        let mut out = self.zero();
        for x in a.ones() {
            for y in b.ones() {
                out.insert(self.monoid.op(x, y));
            }
        }
        out
    }
    fn contains(&self, a: &FixedBitSet) -> bool {
        a.len() == self.monoid.size()
    }
    fn carrier(&self) -> Option<Vec<FixedBitSet>> {
        let n = self.monoid.size();
        if n > POWERSET_MAX_MONOID {
            return None;
        }
        Some(
            (0u64..1 << n)
                .map(|mask| {
                    let members: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                    self.subset(&members)
                })
                .collect(),
        )
    }
}

/// A finite semiring given by explicit tables over indices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableSemiring {
    n: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
    zero: usize,
    one: usize,
    labels: Vec<String>,
}

impl TableSemiring {
    /// Validated construction: ranges plus every semiring law, exhaustively.
    pub fn new(
        n: usize,
        add: Vec<usize>,
        mul: Vec<usize>,
        zero: usize,
        one: usize,
    ) -> Result<Self, SemiringError> {
        if n == 0 || add.len() != n * n || mul.len() != n * n || zero >= n || one >= n {
            return Err(SemiringError::Format(format!(
                "tables must be {n}x{n} and identities below {n}"
            )));
        }
        if add.iter().chain(&mul).any(|&x| x >= n) {
            return Err(SemiringError::Format(format!(
                "table entry out of range 0..{n}"
            )));
        }
        let s = Self::from_tables_unchecked(n, add, mul, zero, one);
        check_laws_exhaustive(&s).map_err(|v| SemiringError::Format(v.to_string()))?;
        Ok(s)
    }

    pub fn from_tables_unchecked(
        n: usize,
        add: Vec<usize>,
        mul: Vec<usize>,
        zero: usize,
        one: usize,
    ) -> Self {
        let labels = (0..n).map(|i| i.to_string()).collect();
        TableSemiring {
            n,
            add,
            mul,
            zero,
            one,
            labels,
        }
    }

    /// 𝔹 with ⊥ = 0 and ⊤ = 1.
    pub fn boolean() -> Self {
        Self::from_tables_unchecked(2, vec![0, 1, 1, 1], vec![0, 0, 0, 1], 0, 1)
            .with_labels(vec!["bot".into(), "top".into()])
    }

    /// Tabulates a finite semiring; element `i` is `carrier[i]`.
    pub fn from_semiring<S: Semiring>(s: &S) -> Result<(Self, Vec<S::Elem>), SemiringError> {
        let carrier = s.carrier().ok_or(SemiringError::Infinite)?;
        let n = carrier.len();
        let index = |e: &S::Elem| carrier.iter().position(|c| c == e).expect("closed carrier");
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for a in &carrier {
            for b in &carrier {
                add.push(index(&s.add(a, b)));
                mul.push(index(&s.mul(a, b)));
            }
        }
        let t = Self::from_tables_unchecked(n, add, mul, index(&s.zero()), index(&s.one()));
        Ok((t, carrier))
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n);
        self.labels = labels;
        self
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn zero_index(&self) -> usize {
        self.zero
    }

    pub fn one_index(&self) -> usize {
        self.one
    }

    /// Semiring file format: `semiring n=<N>`, `zero=`, `one=`, N `add:` rows,
    /// N `mul:` rows, then `label <i> <name>` lines for non-numeric labels.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "semiring n={}\nzero={}\none={}\n",
            self.n, self.zero, self.one
        );
        for key in ["add", "mul"] {
            let table = if key == "add" { &self.add } else { &self.mul };
            for row in table.chunks(self.n) {
                let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                out.push_str(&format!("{key}: {}\n", cells.join(" ")));
            }
        }
        for (i, l) in self.labels.iter().enumerate() {
            if *l != i.to_string() {
                out.push_str(&format!("label {i} {l}\n"));
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, SemiringError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let n = parse_header(lines.next().unwrap_or_default(), "semiring")?;
        let zero = parse_assignment(lines.next(), "zero")?;
        let one = parse_assignment(lines.next(), "one")?;
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for _ in 0..n {
            add.extend(parse_row(lines.next(), "add", n)?);
        }
        for _ in 0..n {
            mul.extend(parse_row(lines.next(), "mul", n)?);
        }
        let mut s = Self::new(n, add, mul, zero, one)?;
        for line in lines {
            let mut parts = line.split_whitespace();
            match (parts.next(), parts.next(), parts.next()) {
                (Some("label"), Some(i), Some(name)) => {
                    let i: usize =
                        i.parse().ok().filter(|&i| i < n).ok_or_else(|| {
                            SemiringError::Format(format!("bad label line `{line}`"))
                        })?;
                    s.labels[i] = name.to_string();
                }
                _ => return Err(SemiringError::Format(format!("unexpected line `{line}`"))),
            }
        }
        Ok(s)
    }
}

impl Semiring for TableSemiring {
    type Elem = usize;

    fn zero(&self) -> usize {
        self.zero
    }
    fn one(&self) -> usize {
        self.one
    }
    fn add(&self, a: &usize, b: &usize) -> usize {
        self.add[a * self.n + b]
    }
    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.mul[a * self.n + b]
    }
    fn contains(&self, a: &usize) -> bool {
        *a < self.n
    }
    fn carrier(&self) -> Option<Vec<usize>> {
        Some((0..self.n).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};
    use crate::semiring::{check_laws_exhaustive, check_order_laws};

    #[test]
    fn tropical_arithmetic() {
        let t = TropicalValue::int;
        assert_eq!(Tropical.add(&t(2), &t(-1)), t(-1));
        assert_eq!(Tropical.mul(&t(2), &t(-1)), t(1));
        assert_eq!(
            Tropical.mul(&t(2), &TropicalValue::Infinity),
            TropicalValue::Infinity
        );
        assert_eq!(Tropical.add(&t(2), &TropicalValue::Infinity), t(2));
        assert_eq!(
            "3/6".parse::<TropicalValue>().unwrap(),
            TropicalValue::Finite(q(1, 2))
        );
        assert_eq!(
            "inf".parse::<TropicalValue>().unwrap(),
            TropicalValue::Infinity
        );
    }

    #[test]
    fn minmax_rejects_negative_weights() {
        assert!(!MinMax.contains(&TropicalValue::int(-1)));
        assert!(MinMax.contains(&TropicalValue::Infinity));
        assert_eq!(
            MinMax.mul(&TropicalValue::int(1), &TropicalValue::int(3)),
            TropicalValue::int(3)
        );
    }

    #[test]
    fn gcd_rationals_and_vectors_agree() {
        let a = GcdRational::new(qi(12)).unwrap();
        let v = a.to_vector().unwrap();
        assert_eq!(
            v,
            PadicVector::from_exponents(BTreeMap::from([(2, 2), (3, 1)]))
        );
        assert_eq!(v.to_gcd_rational(), a);
        assert!(GcdRational::new(qi(-1)).is_none());
        let zero = GcdRationals.zero();
        assert_eq!(zero.to_vector().unwrap(), PadicVector::Infinity);
        assert_eq!(GcdRationals.add(&zero, &a), a);
    }

    #[test]
    fn padic_vectors_normalize_zero_exponents() {
        let a = PadicVector::from_exponents(BTreeMap::from([(2, 1), (3, 0)]));
        let b = PadicVector::from_exponents(BTreeMap::from([(2, 1)]));
        assert_eq!(a, b);
        let prod = PadicVectors.mul(
            &PadicVector::unit(2),
            &PadicVector::from_exponents(BTreeMap::from([(2, -1)])),
        );
        assert_eq!(prod, PadicVector::identity());
        let sum = PadicVectors.add(&PadicVector::unit(2), &PadicVector::unit(3));
        assert_eq!(sum, PadicVector::identity());
    }

    #[test]
    fn powerset_of_noncommutative_monoid() {
        // Transformations of {0, 1}: id, const0, const1, swap.
        // Encoded as (f(0), f(1)): 0=id(0,1), 1=c0(0,0), 2=c1(1,1), 3=swap(1,0).
        let maps = [(0, 1), (0, 0), (1, 1), (1, 0)];
        let idx = |m: (usize, usize)| maps.iter().position(|&x| x == m).unwrap();
        let mut mul = Vec::new();
        for f in maps {
            for g in maps {
                // (f * g)(x) = f(g(x))
                let at = |x: usize| {
                    let gx = if x == 0 { g.0 } else { g.1 };
                    if gx == 0 {
                        f.0
                    } else {
                        f.1
                    }
                };
                mul.push(idx((at(0), at(1))));
            }
        }
        let m = FiniteMonoid::new(4, mul, 0).unwrap();
        let ps = Powerset::new(m).unwrap();
        check_laws_exhaustive(&ps).unwrap();
        check_order_laws(&ps, &ps.carrier().unwrap()).unwrap();
        let swap = ps.subset(&[3]);
        let c0 = ps.subset(&[1]);
        assert_ne!(ps.mul(&swap, &c0), ps.mul(&c0, &swap));
    }

    #[test]
    fn monoid_validation() {
        assert!(FiniteMonoid::new(2, vec![0, 1, 1, 1], 0).is_ok());
        assert!(FiniteMonoid::new(2, vec![0, 1, 1, 1], 1).is_err());
        let text = "monoid n=2\none=0\nmul: 0 1\nmul: 1 0\n";
        assert_eq!(
            FiniteMonoid::parse(text).unwrap(),
            FiniteMonoid::cyclic_group(2)
        );
    }

    #[test]
    fn table_semiring_text_round_trip() {
        let b = TableSemiring::boolean();
        let text = b.to_text();
        assert_eq!(
            text,
            "semiring n=2\nzero=0\none=1\nadd: 0 1\nadd: 1 1\nmul: 0 0\nmul: 0 1\nlabel 0 bot\nlabel 1 top\n"
        );
        assert_eq!(TableSemiring::parse(&text).unwrap(), b);
    }

    #[test]
    fn table_semiring_rejects_bad_tables() {
        assert!(TableSemiring::new(2, vec![0, 1, 1, 0], vec![0, 0, 0, 1], 0, 1).is_err());
        assert!(TableSemiring::new(2, vec![0, 1, 1], vec![0, 0, 0, 1], 0, 1).is_err());
        assert!(TableSemiring::new(2, vec![0, 1, 1, 1], vec![0, 0, 0, 5], 0, 1).is_err());
    }

    #[test]
    fn tabulating_a_finite_semiring() {
        let (t, carrier) = TableSemiring::from_semiring(&Boolean).unwrap();
        assert_eq!(carrier, vec![BoolValue::Bottom, BoolValue::Top]);
        check_laws_exhaustive(&t).unwrap();
        assert!(TableSemiring::from_semiring(&Tropical).is_err());
    }
}
