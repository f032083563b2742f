use super::{least_fixed_point, LinalgError, TropMatrix};
use crate::semiring::{MinMax, Semiring, TropicalValue};

/// A symmetric matrix of distances in [0, ∞] with zero diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UltrametricCandidate {
    d: TropMatrix<TropicalValue>,
}

impl UltrametricCandidate {
    pub fn new(d: TropMatrix<TropicalValue>) -> Result<Self, LinalgError> {
        let n = d.n();
        for i in 0..n {
            if *d.get(i, i) != TropicalValue::int(0) {
                return Err(LinalgError::Invalid(format!("diagonal entry ({i}, {i}) is not 0")));
            }
            for j in 0..n {
                if !MinMax.contains(d.get(i, j)) {
                    return Err(LinalgError::Invalid(format!("entry ({i}, {j}) is negative")));
                }
                if d.get(i, j) != d.get(j, i) {
                    return Err(LinalgError::Invalid(format!("entries ({i}, {j}) and ({j}, {i}) differ")));
                }
            }
        }
        Ok(UltrametricCandidate { d })
    }

    pub fn from_rows(rows: Vec<Vec<TropicalValue>>) -> Result<Self, LinalgError> {
        Self::new(TropMatrix::from_rows(rows)?)
    }

    pub fn matrix(&self) -> &TropMatrix<TropicalValue> {
        &self.d
    }

    pub fn n(&self) -> usize {
        self.d.n()
    }

    pub fn get(&self, i: usize, j: usize) -> &TropicalValue {
        self.d.get(i, j)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UltrametricVerdict {
    pub ultrametric: bool,
    /// The first `(i, j, k)` with `d(i,k) > max(d(i,j), d(j,k))`.
    pub witness: Option<(usize, usize, usize)>,
}

pub fn is_ultrametric(d: &UltrametricCandidate) -> UltrametricVerdict {
    let n = d.n();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if d.get(i, k) > d.get(i, j).max(d.get(j, k)) {
                    return UltrametricVerdict {
                        ultrametric: false,
                        witness: Some((i, j, k)),
                    };
                }
            }
        }
    }
    UltrametricVerdict {
        ultrametric: true,
        witness: None,
    }
}

/// Least bottleneck weights: the least fixed point of `X = DX + I` over
/// (min, max).
pub fn minimax_closure(d: &UltrametricCandidate) -> Result<UltrametricCandidate, LinalgError> {
    let x = least_fixed_point(&MinMax, &d.d)?;
    UltrametricCandidate::new(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cand(rows: &[&[i64]]) -> UltrametricCandidate {
        UltrametricCandidate::from_rows(rows.iter().map(|r| r.iter().map(|&x| TropicalValue::int(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn verdicts() {
        assert!(is_ultrametric(&cand(&[&[0, 1], &[1, 0]])).ultrametric);
        assert!(is_ultrametric(&cand(&[&[0, 1, 2], &[1, 0, 2], &[2, 2, 0]])).ultrametric);
        let v = is_ultrametric(&cand(&[&[0, 1, 3], &[1, 0, 2], &[3, 2, 0]]));
        assert_eq!(v.witness, Some((0, 1, 2)));
    }

    #[test]
    fn closure() {
        let d = cand(&[&[0, 1, 3], &[1, 0, 2], &[3, 2, 0]]);
        let c = minimax_closure(&d).unwrap();
        assert_eq!(c, cand(&[&[0, 1, 2], &[1, 0, 2], &[2, 2, 0]]));
        assert_eq!(minimax_closure(&c).unwrap(), c);
        assert!(is_ultrametric(&c).ultrametric);
    }

    #[test]
    fn validation() {
        let t = TropicalValue::int;
        assert!(UltrametricCandidate::from_rows(vec![vec![t(0), t(1)], vec![t(2), t(0)]]).is_err());
        assert!(UltrametricCandidate::from_rows(vec![vec![t(1)]]).is_err());
        assert!(UltrametricCandidate::from_rows(vec![vec![t(0), t(-1)], vec![t(-1), t(0)]]).is_err());
        let inf = TropicalValue::Infinity;
        let split = UltrametricCandidate::from_rows(vec![vec![t(0), inf.clone()], vec![inf, t(0)]]).unwrap();
        assert!(is_ultrametric(&split).ultrametric);
    }
}
