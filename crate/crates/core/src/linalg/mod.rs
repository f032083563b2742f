//! Square matrices over a semiring, least solutions of `X = AX + I`,
//! ultrametric checks and valuations induced by rational representations.

use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::rational::RationalError;
use crate::semiring::{BoolValue, Boolean, MinMax, Sample, Semiring, SemiringError, Tropical, TropicalValue};

mod format;
mod rep;
mod ultrametric;

pub use format::{MatrixFile, MatrixKind};
pub use rep::{rep_to_valuation, QMatrices, QMatrix, RationalRep, RepValuation, DEFAULT_WORD_LENGTH};
pub use ultrametric::{is_ultrametric, minimax_closure, UltrametricCandidate, UltrametricVerdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0} against {1}")]
    Dimension(usize, usize),
    #[error("entry ({row}, {col}) is not in the semiring")]
    Entry { row: usize, col: usize },
    #[error("entry ({row}, {col}) is negative; only nonnegative min-plus matrices are supported")]
    Negative { row: usize, col: usize },
    #[error("no fixed point within {steps} steps; entry ({row}, {col}) still changes")]
    NonConvergence { steps: usize, row: usize, col: usize },
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Format(String),
    #[error(transparent)]
    Rational(#[from] RationalError),
    #[error(transparent)]
    Semiring(#[from] SemiringError),
}

/// An `n × n` matrix, stored row by row.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TropMatrix<E> {
    n: usize,
    entries: Vec<E>,
}

impl<E: Clone> TropMatrix<E> {
    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self, LinalgError> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(LinalgError::Dimension(r.len(), n));
        }
        Ok(TropMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> E) -> Self {
        TropMatrix {
            n,
            entries: (0..n * n).map(|k| f(k / n.max(1), k % n.max(1))).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: E) {
        self.entries[i * self.n + j] = x;
    }

    pub fn rows(&self) -> Vec<Vec<E>> {
        self.entries.chunks(self.n.max(1)).take(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn entries(&self) -> &[E] {
        &self.entries
    }
}

impl<E: fmt::Display> fmt::Display for TropMatrix<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.entries[i * self.n + j].to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

fn same_dim<E>(a: &TropMatrix<E>, b: &TropMatrix<E>) -> Result<(), LinalgError> {
    if a.n != b.n {
        return Err(LinalgError::Dimension(a.n, b.n));
    }
    Ok(())
}

pub fn mat_identity<S: Semiring>(s: &S, n: usize) -> TropMatrix<S::Elem> {
    let (zero, one) = (s.zero(), s.one());
    TropMatrix::from_fn(n, |i, j| if i == j { one.clone() } else { zero.clone() })
}

pub fn mat_zero<S: Semiring>(s: &S, n: usize) -> TropMatrix<S::Elem> {
    let zero = s.zero();
    TropMatrix::from_fn(n, |_, _| zero.clone())
}

pub fn mat_add<S: Semiring>(
    s: &S,
    a: &TropMatrix<S::Elem>,
    b: &TropMatrix<S::Elem>,
) -> Result<TropMatrix<S::Elem>, LinalgError> {
    same_dim(a, b)?;
    Ok(TropMatrix {
        n: a.n,
        entries: a.entries.iter().zip(&b.entries).map(|(x, y)| s.add(x, y)).collect(),
    })
}

pub fn mat_mul<S: Semiring>(
    s: &S,
    a: &TropMatrix<S::Elem>,
    b: &TropMatrix<S::Elem>,
) -> Result<TropMatrix<S::Elem>, LinalgError> {
    same_dim(a, b)?;
    let n = a.n;
    Ok(TropMatrix::from_fn(n, |i, j| {
        (0..n).fold(s.zero(), |acc, k| s.add(&acc, &s.mul(a.get(i, k), b.get(k, j))))
    }))
}

/// M_n(S) with pointwise addition and the usual product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixSemiring<S> {
    base: S,
    n: usize,
}

/// Largest carrier `MatrixSemiring::carrier` will list.
const MATRIX_CARRIER_MAX: usize = 1 << 16;

impl<S: Semiring> MatrixSemiring<S> {
    pub fn new(base: S, n: usize) -> Self {
        MatrixSemiring { base, n }
    }

    pub fn base(&self) -> &S {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

impl<S: Semiring> Semiring for MatrixSemiring<S> {
    type Elem = TropMatrix<S::Elem>;

    fn zero(&self) -> Self::Elem {
        mat_zero(&self.base, self.n)
    }
    fn one(&self) -> Self::Elem {
        mat_identity(&self.base, self.n)
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        mat_add(&self.base, a, b).expect("matrices of this instance's size")
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        mat_mul(&self.base, a, b).expect("matrices of this instance's size")
    }
    fn contains(&self, a: &Self::Elem) -> bool {
        a.n == self.n && a.entries.iter().all(|x| self.base.contains(x))
    }
    fn carrier(&self) -> Option<Vec<Self::Elem>> {
        let base = self.base.carrier()?;
        let cells = self.n * self.n;
        let size = u32::try_from(cells).ok().and_then(|c| base.len().checked_pow(c))?;
        if size > MATRIX_CARRIER_MAX {
            return None;
        }
        let mut out = Vec::with_capacity(size);
        for mut k in 0..size {
            let mut entries = Vec::with_capacity(cells);
            for _ in 0..cells {
                entries.push(base[k % base.len()].clone());
                k /= base.len();
            }
            out.push(TropMatrix { n: self.n, entries });
        }
        Some(out)
    }
}

impl<S: Sample> Sample for MatrixSemiring<S> {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        let cells = (0..self.n * self.n).map(|_| self.base.sample(rng)).collect();
        TropMatrix { n: self.n, entries: cells }
    }
}

/// Semirings whose matrices have a least fixed point of `X = AX + I` reached
/// within `n` steps, given entries this check accepts.
pub trait StarSemiring: Semiring {
    fn check_entry(&self, _a: &Self::Elem) -> bool {
        true
    }
}

impl StarSemiring for MinMax {
    fn check_entry(&self, a: &TropicalValue) -> bool {
        self.contains(a)
    }
}

impl StarSemiring for Tropical {
    fn check_entry(&self, a: &TropicalValue) -> bool {
        MinMax.contains(a)
    }
}

impl StarSemiring for Boolean {}

/// The least `X` with `X = AX + I`, as the limit of `X₀ = I`,
/// `X_{k+1} = A X_k + I`. Fails if the iterates have not settled after
/// `n` steps.
pub fn least_fixed_point<S: StarSemiring>(
    s: &S,
    a: &TropMatrix<S::Elem>,
) -> Result<TropMatrix<S::Elem>, LinalgError> {
    let n = a.n;
    for i in 0..n {
        for j in 0..n {
            let x = a.get(i, j);
            if !s.contains(x) {
                return Err(LinalgError::Entry { row: i, col: j });
            }
            if !s.check_entry(x) {
                return Err(LinalgError::Negative { row: i, col: j });
            }
        }
    }
    let id = mat_identity(s, n);
    let step = |x: &TropMatrix<S::Elem>| mat_add(s, &mat_mul(s, a, x)?, &id);
    let mut x = id.clone();
    for _ in 0..n.max(1) {
        let next = step(&x)?;
        if next == x {
            return Ok(x);
        }
        x = next;
    }
    let next = step(&x)?;
    match (0..n * n).find(|&k| next.entries[k] != x.entries[k]) {
        None => Ok(x),
        Some(k) => Err(LinalgError::NonConvergence {
            steps: n,
            row: k / n,
            col: k % n,
        }),
    }
}

/// A Boolean matrix from truth values.
pub fn bool_matrix(rows: Vec<Vec<bool>>) -> Result<TropMatrix<BoolValue>, LinalgError> {
    TropMatrix::from_rows(
        rows.into_iter()
            .map(|r| r.into_iter().map(|b| if b { BoolValue::Top } else { BoolValue::Bottom }).collect())
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::{check_idempotent, check_laws_exhaustive, check_laws_sampled, TableSemiring, DEFAULT_SEED};

    fn t(n: i64) -> TropicalValue {
        TropicalValue::int(n)
    }

    const INF: TropicalValue = TropicalValue::Infinity;

    #[test]
    fn small_products() {
        let a = TropMatrix::from_rows(vec![vec![t(0), t(1)], vec![INF, t(0)]]).unwrap();
        let sq = mat_mul(&Tropical, &a, &a).unwrap();
        assert_eq!(sq.get(0, 1), &t(1));
        let id = mat_identity(&Tropical, 2);
        assert_eq!(mat_mul(&Tropical, &id, &a).unwrap(), a);
        let b = TropMatrix::from_rows(vec![vec![t(0)]]).unwrap();
        assert_eq!(mat_mul(&Tropical, &a, &b), Err(LinalgError::Dimension(2, 1)));
        assert!(TropMatrix::from_rows(vec![vec![t(0)], vec![t(1), t(2)]]).is_err());
    }

    #[test]
    fn matrix_semirings_satisfy_the_laws() {
        let b = TableSemiring::boolean();
        for n in 1..=2 {
            let m = MatrixSemiring::new(b.clone(), n);
            assert!(check_laws_exhaustive(&m).is_ok());
            assert!(check_idempotent(&m).unwrap());
        }
        for n in 1..=3 {
            assert!(check_laws_sampled(&MatrixSemiring::new(Tropical, n), DEFAULT_SEED, 200).is_ok());
            assert!(check_laws_sampled(&MatrixSemiring::new(MinMax, n), DEFAULT_SEED, 200).is_ok());
        }
        assert!(check_idempotent(&MatrixSemiring::new(Tropical, 3)).unwrap());
    }

    #[test]
    fn star_examples() {
        let zero = mat_zero(&MinMax, 3);
        assert_eq!(least_fixed_point(&MinMax, &zero).unwrap(), mat_identity(&MinMax, 3));

        let mut a = mat_zero(&MinMax, 3);
        for (i, j, w) in [(0, 1, 1), (1, 2, 2), (0, 2, 5)] {
            a.set(i, j, t(w));
            a.set(j, i, t(w));
        }
        let x = least_fixed_point(&MinMax, &a).unwrap();
        assert_eq!(x.get(0, 2), &t(2));
        let check = mat_add(&MinMax, &mat_mul(&MinMax, &a, &x).unwrap(), &mat_identity(&MinMax, 3)).unwrap();
        assert_eq!(check, x);
    }

    #[test]
    fn star_preconditions() {
        let a = TropMatrix::from_rows(vec![vec![t(0), t(-1)], vec![INF, t(0)]]).unwrap();
        assert_eq!(least_fixed_point(&Tropical, &a), Err(LinalgError::Negative { row: 0, col: 1 }));
        assert_eq!(least_fixed_point(&MinMax, &a), Err(LinalgError::Entry { row: 0, col: 1 }));
        let shortest = TropMatrix::from_rows(vec![vec![INF, t(3), t(10)], vec![INF, INF, t(4)], vec![INF, INF, INF]]).unwrap();
        let x = least_fixed_point(&Tropical, &shortest).unwrap();
        assert_eq!(x.get(0, 2), &t(7));
        assert_eq!(x.get(2, 0), &INF);
    }

    #[test]
    fn boolean_closure_is_reachability() {
        let a = bool_matrix(vec![vec![false, true, false], vec![false, false, true], vec![false, false, false]]).unwrap();
        let x = least_fixed_point(&Boolean, &a).unwrap();
        assert_eq!(x.get(0, 2), &BoolValue::Top);
        assert_eq!(x.get(2, 0), &BoolValue::Bottom);
    }
}
