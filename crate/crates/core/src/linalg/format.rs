//! `matrix n=<N> semiring=<minmax|tropical|boolean>` followed by N rows of
//! space-separated entries: rationals as `p/q`, `inf` for ∞, `top`/`bot`
//! for Booleans. Blank lines and lines starting with `#` are skipped.

use std::fmt;
use std::str::FromStr;

use super::{LinalgError, TropMatrix};
use crate::semiring::{BoolValue, MinMax, Semiring, TropicalValue};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixKind {
    MinMax,
    Tropical,
    Boolean,
}

impl fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatrixKind::MinMax => "minmax",
            MatrixKind::Tropical => "tropical",
            MatrixKind::Boolean => "boolean",
        })
    }
}

impl FromStr for MatrixKind {
    type Err = LinalgError;

    fn from_str(s: &str) -> Result<Self, LinalgError> {
        match s {
            "minmax" => Ok(MatrixKind::MinMax),
            "tropical" => Ok(MatrixKind::Tropical),
            "boolean" => Ok(MatrixKind::Boolean),
            other => Err(LinalgError::Format(format!("unknown semiring `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixFile {
    MinMax(TropMatrix<TropicalValue>),
    Tropical(TropMatrix<TropicalValue>),
    Boolean(TropMatrix<BoolValue>),
}

fn parse_rows<E: FromStr + Clone>(lines: &[&str], n: usize) -> Result<TropMatrix<E>, LinalgError>
where
    E::Err: fmt::Display,
{
    if lines.len() != n {
        return Err(LinalgError::Format(format!("expected {n} rows, found {}", lines.len())));
    }
    let rows = lines
        .iter()
        .enumerate()
        .map(|(i, line)| {
            let row = line
                .split_whitespace()
                .map(|t| t.parse::<E>().map_err(|e| LinalgError::Format(format!("row {i}: {e}"))))
                .collect::<Result<Vec<E>, _>>()?;
            if row.len() != n {
                return Err(LinalgError::Format(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>, _>>()?;
    TropMatrix::from_rows(rows)
}

impl MatrixFile {
    pub fn kind(&self) -> MatrixKind {
        match self {
            MatrixFile::MinMax(_) => MatrixKind::MinMax,
            MatrixFile::Tropical(_) => MatrixKind::Tropical,
            MatrixFile::Boolean(_) => MatrixKind::Boolean,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            MatrixFile::MinMax(m) | MatrixFile::Tropical(m) => m.n(),
            MatrixFile::Boolean(m) => m.n(),
        }
    }

    pub fn parse(text: &str) -> Result<Self, LinalgError> {
        let lines: Vec<&str> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect();
        let Some((header, body)) = lines.split_first() else {
            return Err(LinalgError::Format("empty matrix file".into()));
        };
        let mut words = header.split_whitespace();
        if words.next() != Some("matrix") {
            return Err(LinalgError::Format("expected a `matrix` header".into()));
        }
        let (mut n, mut kind) = (None, None);
        for w in words {
            match w.split_once('=') {
                Some(("n", v)) => {
                    n = Some(v.parse::<usize>().map_err(|_| LinalgError::Format(format!("bad size `{v}`")))?)
                }
                Some(("semiring", v)) => kind = Some(v.parse::<MatrixKind>()?),
                _ => return Err(LinalgError::Format(format!("unexpected `{w}` in header"))),
            }
        }
        let n = n.ok_or_else(|| LinalgError::Format("header lacks n=".into()))?;
        let kind = kind.ok_or_else(|| LinalgError::Format("header lacks semiring=".into()))?;
        Ok(match kind {
            MatrixKind::MinMax => {
                let m: TropMatrix<TropicalValue> = parse_rows(body, n)?;
                if let Some(k) = m.entries().iter().position(|x| !MinMax.contains(x)) {
                    return Err(LinalgError::Format(format!(
                        "entry ({}, {}) is negative; minmax entries lie in [0, inf]",
                        k / n,
                        k % n
                    )));
                }
                MatrixFile::MinMax(m)
            }
            MatrixKind::Tropical => MatrixFile::Tropical(parse_rows(body, n)?),
            MatrixKind::Boolean => MatrixFile::Boolean(parse_rows(body, n)?),
        })
    }

    pub fn to_text(&self) -> String {
        let body = match self {
            MatrixFile::MinMax(m) | MatrixFile::Tropical(m) => m.to_string(),
            MatrixFile::Boolean(m) => m.to_string(),
        };
        format!("matrix n={} semiring={}\n{body}", self.n(), self.kind())
    }
}
