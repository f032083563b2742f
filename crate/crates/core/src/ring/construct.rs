use std::fmt;

use super::{FiniteRing, Ideal, RingError, RingHom, MAX_RING_SIZE};
use crate::rational::is_prime;

/// Irreducible moduli for the non-prime fields up to 16 elements, as
/// `(order, p, k, coefficients low to high)`.
pub const BUILTIN_FIELDS: [(usize, usize, usize, &[usize]); 4] = [
    (4, 2, 2, &[1, 1, 1]),
    (8, 2, 3, &[1, 1, 0, 1]),
    (9, 3, 2, &[1, 0, 1]),
    (16, 2, 4, &[1, 1, 0, 0, 1]),
];

pub fn builtin_field_modulus(q: usize) -> Option<(usize, usize, &'static [usize])> {
    BUILTIN_FIELDS
        .iter()
        .find(|f| f.0 == q)
        .map(|&(_, p, k, poly)| (p, k, poly))
}

fn too_large(size: usize) -> RingError {
    RingError::TooLarge {
        size,
        bound: MAX_RING_SIZE,
    }
}

fn checked_pow(base: usize, exp: usize) -> Result<usize, RingError> {
    let size = (base as u128).saturating_pow(exp as u32);
    if size > MAX_RING_SIZE as u128 {
        return Err(too_large(usize::try_from(size).unwrap_or(usize::MAX)));
    }
    Ok(size as usize)
}

fn digits(mut x: usize, base: usize, len: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(x % base);
        x /= base;
    }
    out
}

fn undigits(ds: &[usize], base: usize) -> usize {
    ds.iter().rev().fold(0, |acc, &d| acc * base + d)
}

fn poly_label(coeffs: &[usize]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(e, &c)| {
            let c = if c == 1 && e > 0 { String::new() } else { c.to_string() };
            match e {
                0 => c,
                1 => format!("{c}w"),
                _ => format!("{c}w^{e}"),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

impl FiniteRing {
    /// ℤ/n; `cyclic(1)` is the zero ring.
    pub fn cyclic(n: usize) -> Result<Self, RingError> {
        if n == 0 {
            return Err(RingError::Format("cyclic ring needs n >= 1".into()));
        }
        if n > MAX_RING_SIZE {
            return Err(too_large(n));
        }
        let add = (0..n * n).map(|t| (t / n + t % n) % n).collect();
        let mul = (0..n * n).map(|t| (t / n) * (t % n) % n).collect();
        FiniteRing::from_tables(n, add, mul, 0, 1 % n, None)
    }

    /// 𝔽_p[w] / (modulus), `modulus` monic of degree `k` with coefficients
    /// listed from the constant term up. Element `Σ c_e p^e` is `Σ c_e w^e`.
    pub fn finite_field(p: usize, k: usize, modulus: &[usize]) -> Result<Self, RingError> {
        if !is_prime(p as u64) {
            return Err(RingError::Format(format!("{p} is not prime")));
        }
        if k == 0 || modulus.len() != k + 1 || modulus[k] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(RingError::Format(format!(
                "modulus must be monic of degree {k} with coefficients below {p}"
            )));
        }
        let q = checked_pow(p, k)?;
        let reduce = |mut prod: Vec<usize>| {
            for e in (k..prod.len()).rev() {
                let c = prod[e];
                if c != 0 {
                    for (i, &m) in modulus.iter().enumerate() {
                        let at = e - k + i;
                        prod[at] = (prod[at] + p * p - c * m % p) % p;
                    }
                }
            }
            prod.truncate(k);
            prod
        };
        let mut add = Vec::with_capacity(q * q);
        let mut mul = Vec::with_capacity(q * q);
        for a in 0..q {
            let da = digits(a, p, k);
            for b in 0..q {
                let db = digits(b, p, k);
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add.push(undigits(&sum, p));
                let mut prod = vec![0; 2 * k - 1];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                mul.push(undigits(&reduce(prod), p));
            }
        }
        let labels = (0..q).map(|a| poly_label(&digits(a, p, k))).collect();
        let ring = FiniteRing::from_tables(q, add, mul, 0, 1, Some(labels))?;
        for a in 1..q {
            if !(0..q).any(|b| ring.mul_idx(a, b) == 1) {
                return Err(RingError::Reducible(poly_label(modulus)));
            }
        }
        Ok(ring)
    }

    /// 𝔽_q from the built-in list; prime `q` gives ℤ/q.
    pub fn builtin_field(q: usize) -> Result<Self, RingError> {
        if is_prime(q as u64) {
            return Self::cyclic(q);
        }
        let (p, k, poly) = builtin_field_modulus(q).ok_or_else(|| {
            RingError::Unsupported(format!("no built-in field with {q} elements"))
        })?;
        Self::finite_field(p, k, poly)
    }

    /// n×n matrices over `base`.
    pub fn matrix_ring(base: &FiniteRing, n: usize) -> Result<Self, RingError> {
        let positions = (0..n).flat_map(|r| (0..n).map(move |c| (r, c))).collect();
        Self::matrices(base, n, positions)
    }

    /// Upper triangular n×n matrices over `base`. Over ℤ/2 with n = 2 the
    /// matrix units e00, e01, e11 are named i, j, k.
    pub fn upper_triangular(base: &FiniteRing, n: usize) -> Result<Self, RingError> {
        let positions = (0..n).flat_map(|r| (r..n).map(move |c| (r, c))).collect();
        Self::matrices(base, n, positions)
    }

    fn matrices(base: &FiniteRing, n: usize, positions: Vec<(usize, usize)>) -> Result<Self, RingError> {
        if n == 0 {
            return Err(RingError::Format("matrix size must be at least 1".into()));
        }
        let m = base.size();
        let size = checked_pow(m, positions.len())?;
        let slot = |r: usize, c: usize| positions.iter().position(|&p| p == (r, c));
        let decode = |x: usize| digits(x, m, positions.len());
        let encode = |d: &[usize]| undigits(d, m);
        let mut add = Vec::with_capacity(size * size);
        let mut mul = Vec::with_capacity(size * size);
        for a in 0..size {
            let da = decode(a);
            for b in 0..size {
                let db = decode(b);
                let sum: Vec<usize> = da.iter().zip(&db).map(|(&x, &y)| base.add_idx(x, y)).collect();
                add.push(encode(&sum));
                let prod: Vec<usize> = positions
                    .iter()
                    .map(|&(r, c)| {
                        (0..n).fold(base.zero_index(), |acc, t| match (slot(r, t), slot(t, c)) {
                            (Some(i), Some(j)) => base.add_idx(acc, base.mul_idx(da[i], db[j])),
                            _ => acc,
                        })
                    })
                    .collect();
                mul.push(encode(&prod));
            }
        }
        let identity: Vec<usize> = positions
            .iter()
            .map(|&(r, c)| if r == c { base.one_index() } else { base.zero_index() })
            .collect();
        let one = encode(&identity);
        let zero = encode(&vec![base.zero_index(); positions.len()]);
        let ijk_names = m == 2 && base.is_commutative() && n == 2 && positions.len() == 3;
        let unit_name = |(r, c): (usize, usize)| {
            if ijk_names {
                ["i", "j", "k"][positions.iter().position(|&p| p == (r, c)).unwrap()].to_string()
            } else {
                format!("e{r}{c}")
            }
        };
        let labels = (0..size)
            .map(|x| {
                if x == zero {
                    return "0".to_string();
                }
                if x == one {
                    return "1".to_string();
                }
                let terms: Vec<String> = decode(x)
                    .iter()
                    .zip(&positions)
                    .filter(|(&d, _)| d != base.zero_index())
                    .map(|(&d, &p)| {
                        let coeff = if d == base.one_index() { "" } else { base.label_of(d) };
                        format!("{coeff}{}", unit_name(p))
                    })
                    .collect();
                terms.join("+")
            })
            .collect();
        FiniteRing::from_tables(size, add, mul, zero, one, Some(labels))
    }

    /// R × S with componentwise operations; `(a, b)` has index `a·|S| + b`.
    pub fn product(a: &FiniteRing, b: &FiniteRing) -> Result<Self, RingError> {
        let (na, nb) = (a.size(), b.size());
        let size = na * nb;
        if size > MAX_RING_SIZE {
            return Err(too_large(size));
        }
        let split = |x: usize| (x / nb, x % nb);
        let mut add = Vec::with_capacity(size * size);
        let mut mul = Vec::with_capacity(size * size);
        for x in 0..size {
            let (x1, x2) = split(x);
            for y in 0..size {
                let (y1, y2) = split(y);
                add.push(a.add_idx(x1, y1) * nb + b.add_idx(x2, y2));
                mul.push(a.mul_idx(x1, y1) * nb + b.mul_idx(x2, y2));
            }
        }
        let labels = (0..size)
            .map(|x| {
                let (x1, x2) = split(x);
                format!("({},{})", a.label_of(x1), b.label_of(x2))
            })
            .collect();
        FiniteRing::from_tables(
            size,
            add,
            mul,
            a.zero_index() * nb + b.zero_index(),
            a.one_index() * nb + b.one_index(),
            Some(labels),
        )
    }

    /// R / I. Each coset is represented by its smallest index, which also
    /// supplies its label; cosets are numbered in order of representative.
    pub fn quotient(&self, ideal: &Ideal) -> Result<(FiniteRing, RingHom), RingError> {
        if ideal.subgroup().bits().len() != self.size() || !self.is_ideal(ideal.subgroup()) {
            return Err(RingError::ParentMismatch);
        }
        let mut class = vec![usize::MAX; self.size()];
        let mut reps = Vec::new();
        for x in 0..self.size() {
            if class[x] != usize::MAX {
                continue;
            }
            for i in ideal.elements() {
                class[self.add_idx(x, i)] = reps.len();
            }
            reps.push(x);
        }
        let m = reps.len();
        let mut add = Vec::with_capacity(m * m);
        let mut mul = Vec::with_capacity(m * m);
        for &x in &reps {
            for &y in &reps {
                add.push(class[self.add_idx(x, y)]);
                mul.push(class[self.mul_idx(x, y)]);
            }
        }
        let labels = reps.iter().map(|&x| self.label_of(x).to_string()).collect();
        let q = FiniteRing::from_tables(
            m,
            add,
            mul,
            class[self.zero_index()],
            class[self.one_index()],
            Some(labels),
        )?;
        let pi = RingHom::new_unchecked(self, &q, class);
        Ok((q, pi))
    }
}

/// A ring descriptor: `z<n>`, `f<q>`, `ut<n>(<base>)`, `m<n>(<base>)`,
/// `prod(<a>,<b>)`, or `r8` for upper triangular 2×2 matrices over ℤ/2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingSpec {
    Cyclic(usize),
    Field(usize),
    UpperTriangular(Box<RingSpec>, usize),
    Matrix(Box<RingSpec>, usize),
    Product(Box<RingSpec>, Box<RingSpec>),
}

impl RingSpec {
    pub fn build(&self) -> Result<FiniteRing, RingError> {
        match self {
            RingSpec::Cyclic(n) => FiniteRing::cyclic(*n),
            RingSpec::Field(q) => FiniteRing::builtin_field(*q),
            RingSpec::UpperTriangular(base, n) => FiniteRing::upper_triangular(&base.build()?, *n),
            RingSpec::Matrix(base, n) => FiniteRing::matrix_ring(&base.build()?, *n),
            RingSpec::Product(a, b) => FiniteRing::product(&a.build()?, &b.build()?),
        }
    }

    pub fn parse(s: &str) -> Result<Self, RingError> {
        let s = s.trim();
        let bad = || RingError::Format(format!("unknown ring descriptor `{s}`"));
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
        if s == "r8" {
            return Ok(RingSpec::UpperTriangular(Box::new(RingSpec::Cyclic(2)), 2));
        }
        if let Some(inner) = s.strip_prefix("prod(").and_then(|r| r.strip_suffix(')')) {
            let split = split_top_level(inner).ok_or_else(bad)?;
            return Ok(RingSpec::Product(
                Box::new(Self::parse(&inner[..split])?),
                Box::new(Self::parse(&inner[split + 1..])?),
            ));
        }
        for (prefix, upper) in [("ut", true), ("m", false)] {
            if let Some(rest) = s.strip_prefix(prefix) {
                if let Some((n, base)) = rest.split_once('(') {
                    let base = base.strip_suffix(')').ok_or_else(bad)?;
                    let base = Box::new(Self::parse(base)?);
                    let n = num(n)?;
                    return Ok(if upper {
                        RingSpec::UpperTriangular(base, n)
                    } else {
                        RingSpec::Matrix(base, n)
                    });
                }
            }
        }
        if let Some(n) = s.strip_prefix('z') {
            return Ok(RingSpec::Cyclic(num(n)?));
        }
        if let Some(q) = s.strip_prefix('f') {
            return Ok(RingSpec::Field(num(q)?));
        }
        Err(bad())
    }
}

fn split_top_level(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Cyclic(n) => write!(f, "z{n}"),
            RingSpec::Field(q) => write!(f, "f{q}"),
            RingSpec::UpperTriangular(b, n) => write!(f, "ut{n}({b})"),
            RingSpec::Matrix(b, n) => write!(f, "m{n}({b})"),
            RingSpec::Product(a, b) => write!(f, "prod({a},{b})"),
        }
    }
}
