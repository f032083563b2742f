use fixedbitset::FixedBitSet;
use rand::Rng;

use super::{Coefficients, Expression, Monomial, PolyError, Token};

/// Largest number of points `roots` and `power_domain` will enumerate.
pub const MAX_ROOT_DOMAIN: usize = 1 << 16;

/// A tropicalized expression. `degenerate` is set when some nonzero
/// coefficient was sent to zero and its monomial dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tropicalized<E> {
    pub expr: Expression<E>,
    pub degenerate: bool,
}

/// Replaces each coefficient `c` by `nu(c)`, keeping token order and
/// repeated monomials. Merging repeats would lose crease points: `x + x`
/// creases everywhere, `x` nowhere but at zero.
pub fn tropicalize<E, S, F>(f: &Expression<E>, s: &S, nu: F) -> Tropicalized<S::Elem>
where
    E: Clone + Eq + std::fmt::Debug,
    S: Coefficients,
    F: Fn(&E) -> S::Elem,
{
    let zero = s.zero();
    let mut degenerate = false;
    let mut monomials = Vec::with_capacity(f.len());
    for m in f.monomials() {
        let word: Vec<Token<S::Elem>> = m
            .tokens()
            .iter()
            .map(|t| match t {
                Token::Coef(x) => Token::Coef(nu(x)),
                Token::Var(v) => Token::Var(*v),
            })
            .collect();
        if word.iter().any(|t| matches!(t, Token::Coef(y) if *y == zero)) {
            degenerate = true;
            continue;
        }
        monomials.extend(Monomial::normalize(s, &word));
    }
    Tropicalized {
        expr: Expression::from_monomials_raw(f.vars().to_vec(), monomials),
        degenerate,
    }
}

/// The evaluation of an expression at a point, monomial by monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CreaseReport<E> {
    pub total: E,
    pub values: Vec<E>,
    /// Entry `k` is the sum with monomial `k` left out.
    pub deletion_sums: Vec<E>,
    pub verdict: bool,
    /// How many monomial values equal the total; over a totally ordered
    /// semiring this is the multiplicity of the minimum.
    pub attained: usize,
}

/// Whether deleting any single monomial leaves the value at `z` unchanged.
/// The sum over no monomials is zero.
pub fn is_crease_point<S: Coefficients>(
    s: &S,
    f: &Expression<S::Elem>,
    z: &[S::Elem],
) -> Result<CreaseReport<S::Elem>, PolyError> {
    f.evaluate(s, z)?;
    let values: Vec<S::Elem> = f.monomials().iter().map(|m| m.evaluate(s, z)).collect();
    let n = values.len();
    let mut prefix = vec![s.zero(); n + 1];
    for k in 0..n {
        prefix[k + 1] = s.add(&prefix[k], &values[k]);
    }
    let mut suffix = vec![s.zero(); n + 1];
    for k in (0..n).rev() {
        suffix[k] = s.add(&values[k], &suffix[k + 1]);
    }
    let total = prefix[n].clone();
    let deletion_sums: Vec<S::Elem> = (0..n).map(|k| s.add(&prefix[k], &suffix[k + 1])).collect();
    let verdict = deletion_sums.iter().all(|d| *d == total);
    let attained = values.iter().filter(|v| **v == total).count();
    Ok(CreaseReport {
        total,
        values,
        deletion_sums,
        verdict,
        attained,
    })
}

/// The points of `domain` that are crease points, in domain order.
pub fn crease_points<S: Coefficients>(
    s: &S,
    f: &Expression<S::Elem>,
    domain: &[Vec<S::Elem>],
) -> Result<Vec<Vec<S::Elem>>, PolyError> {
    let mut out = Vec::new();
    for z in domain {
        if is_crease_point(s, f, z)?.verdict {
            out.push(z.clone());
        }
    }
    Ok(out)
}

/// All `n`-tuples over `elements`, last coordinate varying fastest.
pub fn power_domain<E: Clone>(elements: &[E], n: usize) -> Result<Vec<Vec<E>>, PolyError> {
    let size = u32::try_from(n)
        .ok()
        .and_then(|n| elements.len().checked_pow(n))
        .unwrap_or(usize::MAX);
    if size > MAX_ROOT_DOMAIN {
        return Err(PolyError::TooLarge {
            size,
            bound: MAX_ROOT_DOMAIN,
        });
    }
    let mut out: Vec<Vec<E>> = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                elements.iter().map(move |e| {
                    let mut q = p.clone();
                    q.push(e.clone());
                    q
                })
            })
            .collect();
    }
    Ok(out)
}

/// The zero set of `f` over `elements^n`, by exhaustive evaluation.
pub fn roots<C: Coefficients>(
    c: &C,
    f: &Expression<C::Elem>,
    elements: &[C::Elem],
) -> Result<Vec<Vec<C::Elem>>, PolyError> {
    let zero = c.zero();
    let mut out = Vec::new();
    for x in power_domain(elements, f.vars().len())? {
        if f.evaluate(c, &x)? == zero {
            out.push(x);
        }
    }
    Ok(out)
}

/// The zero set as a bitset over the points of `power_domain`.
pub fn solution_set<C: Coefficients>(
    c: &C,
    f: &Expression<C::Elem>,
    elements: &[C::Elem],
) -> Result<FixedBitSet, PolyError> {
    let zero = c.zero();
    let domain = power_domain(elements, f.vars().len())?;
    let mut set = FixedBitSet::with_capacity(domain.len());
    for (k, x) in domain.iter().enumerate() {
        if f.evaluate(c, x)? == zero {
            set.insert(k);
        }
    }
    Ok(set)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootCreaseReport<A, B> {
    pub trop: Tropicalized<B>,
    pub roots: Vec<Vec<A>>,
    /// Roots whose valuation is not a crease point.
    pub violations: Vec<Vec<A>>,
}

impl<A, B> RootCreaseReport<A, B> {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For every root `x` of `f`, checks that `nu(x)` is a crease point of the
/// tropicalization of `f`.
pub fn root_crease_check<R, S, F>(
    r: &R,
    s: &S,
    f: &Expression<R::Elem>,
    nu: F,
    elements: &[R::Elem],
) -> Result<RootCreaseReport<R::Elem, S::Elem>, PolyError>
where
    R: Coefficients,
    S: Coefficients,
    F: Fn(&R::Elem) -> S::Elem,
{
    let trop = tropicalize(f, s, &nu);
    let found = roots(r, f, elements)?;
    let mut violations = Vec::new();
    for x in &found {
        let z: Vec<S::Elem> = x.iter().map(&nu).collect();
        if !is_crease_point(s, &trop.expr, &z)?.verdict {
            violations.push(x.clone());
        }
    }
    Ok(RootCreaseReport {
        trop,
        roots: found,
        violations,
    })
}

/// A random expression with `1..=max_monomials` monomials, each a word of
/// at most `max_degree` variables with coefficients from `pool` scattered
/// between them.
pub fn random_expression<C, G>(
    rng: &mut G,
    c: &C,
    pool: &[C::Elem],
    vars: &[String],
    max_monomials: usize,
    max_degree: usize,
) -> Expression<C::Elem>
where
    C: Coefficients,
    G: Rng + ?Sized,
{
    assert!(!pool.is_empty() && !vars.is_empty() && max_monomials > 0);
    let pick = |rng: &mut G| Token::Coef(pool[rng.gen_range(0..pool.len())].clone());
    let count = rng.gen_range(1..=max_monomials);
    let words = (0..count)
        .map(|_| {
            let degree = rng.gen_range(0..=max_degree);
            let mut w = Vec::new();
            if degree == 0 || rng.gen_bool(0.5) {
                w.push(pick(rng));
            }
            for _ in 0..degree {
                w.push(Token::Var(rng.gen_range(0..vars.len())));
                if rng.gen_bool(0.3) {
                    w.push(pick(rng));
                }
            }
            w
        })
        .collect();
    Expression::from_words(c, vars.to_vec(), words)
}
