use num_traits::{One, Zero};

use super::{LinalgError, MatrixSemiring, TropMatrix};
use crate::gamma::{check_valuation, nu_padic, ValuationMode, ValuationReport, ValuationSample};
use crate::rational::{is_prime, RationalError, Q};
use crate::ring::Ring;
use crate::semiring::{Tropical, TropicalValue};

pub type QMatrix = TropMatrix<Q>;

/// Generator words up to this length are checked by `rep_to_valuation`.
pub const DEFAULT_WORD_LENGTH: usize = 3;

/// The ring of `n × n` rational matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QMatrices {
    pub n: usize,
}

impl Ring for QMatrices {
    type Elem = QMatrix;

    fn zero(&self) -> QMatrix {
        TropMatrix::from_fn(self.n, |_, _| Q::zero())
    }
    fn one(&self) -> QMatrix {
        TropMatrix::from_fn(self.n, |i, j| if i == j { Q::one() } else { Q::zero() })
    }
    fn add(&self, a: &QMatrix, b: &QMatrix) -> QMatrix {
        TropMatrix::from_fn(self.n, |i, j| a.get(i, j) + b.get(i, j))
    }
    fn mul(&self, a: &QMatrix, b: &QMatrix) -> QMatrix {
        TropMatrix::from_fn(self.n, |i, j| (0..self.n).map(|k| a.get(i, k) * b.get(k, j)).sum())
    }
    fn neg(&self, a: &QMatrix) -> QMatrix {
        TropMatrix::from_fn(self.n, |i, j| -a.get(i, j))
    }
    fn label(&self, a: &QMatrix) -> String {
        let rows: Vec<String> = a
            .rows()
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        format!("[{}]", rows.join("; "))
    }
}

/// Named rational matrices standing for the images of ring elements, with
/// the prime whose absolute value measures them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalRep {
    n: usize,
    p: u64,
    generators: Vec<(String, QMatrix)>,
}

impl RationalRep {
    pub fn new(p: u64, generators: Vec<(String, QMatrix)>) -> Result<Self, LinalgError> {
        if !is_prime(p) {
            return Err(RationalError::NotPrime(p).into());
        }
        let n = generators.first().map_or(0, |(_, m)| m.n());
        if let Some((_, m)) = generators.iter().find(|(_, m)| m.n() != n) {
            return Err(LinalgError::Dimension(m.n(), n));
        }
        Ok(RationalRep { n, p, generators })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn generators(&self) -> &[(String, QMatrix)] {
        &self.generators
    }

    /// Entrywise p-adic exponents, ∞ for zero entries.
    pub fn nu(&self, m: &QMatrix) -> TropMatrix<TropicalValue> {
        TropMatrix::from_fn(m.n(), |i, j| nu_padic(self.p, m.get(i, j)).expect("p was checked prime"))
    }

    /// Every product of at most `len` generators, the empty product first.
    pub fn words(&self, len: usize) -> Vec<QMatrix> {
        let r = QMatrices { n: self.n };
        let mut layer = vec![r.one()];
        let mut out = layer.clone();
        for _ in 0..len {
            layer = layer
                .iter()
                .flat_map(|w| self.generators.iter().map(|(_, g)| r.mul(w, g)).collect::<Vec<_>>())
                .collect();
            out.extend(layer.iter().cloned());
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepValuation {
    pub images: Vec<(String, TropMatrix<TropicalValue>)>,
    /// Number of generator words the axioms were checked on.
    pub words: usize,
    pub report: ValuationReport,
}

/// The entrywise p-adic valuation of each generator, and the valuation
/// axioms in supermultiplicative mode over all pairs of generator words up
/// to `word_length`.
pub fn rep_to_valuation(rep: &RationalRep, word_length: usize) -> RepValuation {
    let images = rep.generators.iter().map(|(l, m)| (l.clone(), rep.nu(m))).collect();
    let words = rep.words(word_length);
    let count = words.len();
    let sample = ValuationSample::exhaustive(words);
    let report = check_valuation(
        &QMatrices { n: rep.n },
        &MatrixSemiring::new(Tropical, rep.n),
        |m| rep.nu(m),
        &sample,
        ValuationMode::Supermultiplicative,
    );
    RepValuation {
        images,
        words: count,
        report,
    }
}
