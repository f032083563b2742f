//! Non-commutative polynomial expressions over rings and idempotent
//! semirings: parsing, evaluation, tropicalization and crease points.
//!
//! A monomial is a word of coefficient and variable tokens; `12*x` and
//! `x*12` are different monomials. Over a ring an expression is a multiset of
//! monomials; over an idempotent semiring repeated monomials collapse.

use std::collections::BTreeMap;

use thiserror::Error;

mod coeff;
mod crease;
mod parse;
mod ring;

pub use coeff::Coefficients;
pub use crease::{
    crease_points, is_crease_point, power_domain, random_expression, root_crease_check, roots,
    solution_set, tropicalize, CreaseReport, RootCreaseReport, Tropicalized, MAX_ROOT_DOMAIN,
};
pub use parse::{parse_expression, parse_with_repeats, MAX_EXPANDED_MONOMIALS};
pub use ring::ExpressionRing;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown symbol `{name}` at {pos}")]
    UnknownSymbol { pos: usize, name: String },
    #[error("`-` at {pos} needs ring coefficients")]
    Negation { pos: usize },
    #[error("no value for variable `{0}`")]
    MissingBinding(String),
    #[error("domain of {size} points exceeds the bound {bound}")]
    TooLarge { size: usize, bound: usize },
    #[error("expressions use different variables")]
    VariableMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Token<E> {
    Coef(E),
    Var(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial<E> {
    tokens: Vec<Token<E>>,
}

impl<E: Clone + Eq + std::fmt::Debug> Monomial<E> {
    /// Merges adjacent coefficients, drops units and returns `None` when
    /// the monomial is zero.
    pub fn normalize<C>(c: &C, tokens: &[Token<E>]) -> Option<Self>
    where
        C: Coefficients<Elem = E>,
    {
        let (zero, one) = (c.zero(), c.one());
        let mut out: Vec<Token<E>> = Vec::with_capacity(tokens.len());
        for t in tokens {
            match (out.last_mut(), t) {
                (Some(Token::Coef(prev)), Token::Coef(x)) => *prev = c.mul(prev, x),
                _ => out.push(t.clone()),
            }
        }
        if out.iter().any(|t| matches!(t, Token::Coef(x) if *x == zero)) {
            return None;
        }
        out.retain(|t| !matches!(t, Token::Coef(x) if *x == one));
        if out.is_empty() {
            out.push(Token::Coef(one));
        }
        Some(Monomial { tokens: out })
    }

    pub fn tokens(&self) -> &[Token<E>] {
        &self.tokens
    }

    pub fn is_constant(&self) -> bool {
        self.tokens.iter().all(|t| matches!(t, Token::Coef(_)))
    }

    pub fn evaluate<C: Coefficients<Elem = E>>(&self, c: &C, point: &[E]) -> E {
        self.tokens.iter().fold(c.one(), |acc, t| match t {
            Token::Coef(x) => c.mul(&acc, x),
            Token::Var(v) => c.mul(&acc, &point[*v]),
        })
    }

    /// Negation folded into the first coefficient, or a leading `-1`.
    fn negate<C: Coefficients<Elem = E>>(&self, c: &C) -> Option<Self> {
        let mut tokens = self.tokens.clone();
        match tokens.iter_mut().find_map(|t| match t {
            Token::Coef(x) => Some(x),
            Token::Var(_) => None,
        }) {
            Some(x) => *x = c.neg(x)?,
            None => tokens.insert(0, Token::Coef(c.neg(&c.one())?)),
        }
        Some(Monomial::normalize(c, &tokens).unwrap_or(Monomial { tokens }))
    }

    /// Coefficient product in order and exponent vector.
    fn commute<C: Coefficients<Elem = E>>(&self, c: &C, nvars: usize) -> (E, Vec<u32>) {
        let mut coef = c.one();
        let mut exps = vec![0u32; nvars];
        for t in &self.tokens {
            match t {
                Token::Coef(x) => coef = c.mul(&coef, x),
                Token::Var(v) => exps[*v] += 1,
            }
        }
        (coef, exps)
    }

    fn text<C: Coefficients<Elem = E>>(&self, c: &C, vars: &[String]) -> String {
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.tokens.len() {
            match &self.tokens[i] {
                Token::Coef(x) => parts.push(coefficient_text(&c.label(x), i == 0)),
                Token::Var(v) => {
                    let mut k = 1;
                    while matches!(self.tokens.get(i + k), Some(Token::Var(w)) if w == v) {
                        k += 1;
                    }
                    parts.push(if k == 1 { vars[*v].clone() } else { format!("{}^{k}", vars[*v]) });
                    i += k - 1;
                }
            }
            i += 1;
        }
        parts.join("*")
    }
}

/// Wraps labels the expression grammar would split, such as `j+k`.
fn coefficient_text(label: &str, first: bool) -> String {
    if label.starts_with('[') && label.ends_with(']') {
        return label.to_string();
    }
    let mut depth = 0i32;
    let mut plain = true;
    for (i, ch) in label.char_indices() {
        match ch {
            '{' => depth += 1,
            '}' => depth -= 1,
            '-' if i == 0 && first => {}
            c if depth > 0 || c.is_alphanumeric() || c == '_' || c == '/' => {}
            _ => plain = false,
        }
    }
    if plain && !(label.starts_with('-') && !first) {
        label.to_string()
    } else {
        format!("({label})")
    }
}

/// A finite sum of monomials over a fixed list of variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Expression<E> {
    vars: Vec<String>,
    monomials: Vec<Monomial<E>>,
}

impl<E: Clone + Eq + std::fmt::Debug> Expression<E> {
    pub fn zero(vars: Vec<String>) -> Self {
        Expression {
            vars,
            monomials: Vec::new(),
        }
    }

    pub fn constant<C: Coefficients<Elem = E>>(c: &C, vars: Vec<String>, x: E) -> Self {
        Self::from_words(c, vars, vec![vec![Token::Coef(x)]])
    }

    pub fn variable(vars: Vec<String>, v: usize) -> Self {
        assert!(v < vars.len(), "variable index out of range");
        Expression {
            vars,
            monomials: vec![Monomial {
                tokens: vec![Token::Var(v)],
            }],
        }
    }

    /// Builds a normalized expression from raw token words.
    pub fn from_words<C: Coefficients<Elem = E>>(c: &C, vars: Vec<String>, words: Vec<Vec<Token<E>>>) -> Self {
        let monomials = words.iter().filter_map(|w| Monomial::normalize(c, w)).collect();
        Expression { vars, monomials }.collapse(c)
    }

    /// Keeps every monomial as given, repeats included.
    pub(crate) fn from_monomials_raw(vars: Vec<String>, monomials: Vec<Monomial<E>>) -> Self {
        Expression { vars, monomials }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn monomials(&self) -> &[Monomial<E>] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    /// The same sum over only the variables it mentions, kept in order.
    pub fn drop_unused_vars(&self) -> Self {
        let mut used = vec![false; self.vars.len()];
        for m in &self.monomials {
            for t in &m.tokens {
                if let Token::Var(v) = t {
                    used[*v] = true;
                }
            }
        }
        let mut new_index = vec![usize::MAX; self.vars.len()];
        let mut vars = Vec::new();
        for (v, name) in self.vars.iter().enumerate() {
            if used[v] {
                new_index[v] = vars.len();
                vars.push(name.clone());
            }
        }
        let monomials = self
            .monomials
            .iter()
            .map(|m| Monomial {
                tokens: m
                    .tokens
                    .iter()
                    .map(|t| match t {
                        Token::Var(v) => Token::Var(new_index[*v]),
                        Token::Coef(x) => Token::Coef(x.clone()),
                    })
                    .collect(),
            })
            .collect();
        Expression { vars, monomials }
    }

    pub fn normalize<C: Coefficients<Elem = E>>(&self, c: &C) -> Self {
        Self::from_words(c, self.vars.clone(), self.monomials.iter().map(|m| m.tokens.clone()).collect())
    }

    fn collapse<C: Coefficients<Elem = E>>(mut self, c: &C) -> Self {
        if c.is_idempotent() {
            let mut kept: Vec<Monomial<E>> = Vec::with_capacity(self.monomials.len());
            for m in self.monomials {
                if !kept.contains(&m) {
                    kept.push(m);
                }
            }
            self.monomials = kept;
        }
        self
    }

    fn same_vars(&self, other: &Self) -> Result<(), PolyError> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(PolyError::VariableMismatch)
        }
    }

    pub fn add<C: Coefficients<Elem = E>>(&self, c: &C, other: &Self) -> Result<Self, PolyError> {
        self.same_vars(other)?;
        let mut monomials = self.monomials.clone();
        monomials.extend(other.monomials.iter().cloned());
        Ok(Expression {
            vars: self.vars.clone(),
            monomials,
        }
        .collapse(c))
    }

    pub fn mul<C: Coefficients<Elem = E>>(&self, c: &C, other: &Self) -> Result<Self, PolyError> {
        self.same_vars(other)?;
        let mut words = Vec::with_capacity(self.len() * other.len());
        for m in &self.monomials {
            for n in &other.monomials {
                let mut w = m.tokens.clone();
                w.extend(n.tokens.iter().cloned());
                words.push(w);
            }
        }
        Ok(Self::from_words(c, self.vars.clone(), words))
    }

    /// `None` over a semiring.
    pub fn neg<C: Coefficients<Elem = E>>(&self, c: &C) -> Option<Self> {
        let monomials = self.monomials.iter().map(|m| m.negate(c)).collect::<Option<Vec<_>>>()?;
        Some(Expression {
            vars: self.vars.clone(),
            monomials,
        })
    }

    /// Substitutes `point[v]` for variable `v` and folds, keeping token order.
    pub fn evaluate<C: Coefficients<Elem = E>>(&self, c: &C, point: &[E]) -> Result<E, PolyError> {
        if point.len() < self.vars.len() {
            return Err(PolyError::MissingBinding(self.vars[point.len()].clone()));
        }
        Ok(self
            .monomials
            .iter()
            .fold(c.zero(), |acc, m| c.add(&acc, &m.evaluate(c, point))))
    }

    /// Evaluates with values bound by variable name.
    pub fn evaluate_named<C: Coefficients<Elem = E>>(&self, c: &C, binding: &[(&str, E)]) -> Result<E, PolyError> {
        let point = self
            .vars
            .iter()
            .map(|v| {
                binding
                    .iter()
                    .find(|(name, _)| name == v)
                    .map(|(_, x)| x.clone())
                    .ok_or_else(|| PolyError::MissingBinding(v.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.evaluate(c, &point)
    }

    /// Merges monomials that agree after their leading coefficient by adding
    /// those coefficients, so `2*x + 3*x` becomes `5*x`. Order of first
    /// appearance is kept.
    pub fn combine_like_terms<C: Coefficients<Elem = E>>(&self, c: &C) -> Self {
        let mut keys: Vec<Vec<Token<E>>> = Vec::new();
        let mut coefs: Vec<E> = Vec::new();
        for m in &self.monomials {
            let (lead, rest) = match m.tokens.split_first() {
                Some((Token::Coef(x), rest)) => (x.clone(), rest.to_vec()),
                _ => (c.one(), m.tokens.clone()),
            };
            match keys.iter().position(|k| *k == rest) {
                Some(i) => coefs[i] = c.add(&coefs[i], &lead),
                None => {
                    keys.push(rest);
                    coefs.push(lead);
                }
            }
        }
        let words = keys
            .into_iter()
            .zip(coefs)
            .map(|(rest, lead)| std::iter::once(Token::Coef(lead)).chain(rest).collect())
            .collect();
        Self::from_words(c, self.vars.clone(), words)
    }

    /// The image in the commutative polynomial structure: coefficients
    /// multiplied in order and moved to the front, variables sorted, like
    /// terms combined.
    pub fn commutative_quotient<C: Coefficients<Elem = E>>(&self, c: &C) -> Self {
        let mut terms: BTreeMap<Vec<u32>, E> = BTreeMap::new();
        for m in &self.monomials {
            let (coef, exps) = m.commute(c, self.vars.len());
            let slot = terms.entry(exps).or_insert_with(|| c.zero());
            *slot = c.add(slot, &coef);
        }
        Self::from_exponent_map(c, self.vars.clone(), terms)
    }

    /// Canonical commutative form: highest exponent vectors first.
    pub(crate) fn from_exponent_map<C: Coefficients<Elem = E>>(
        c: &C,
        vars: Vec<String>,
        terms: BTreeMap<Vec<u32>, E>,
    ) -> Self {
        let words = terms
            .into_iter()
            .rev()
            .map(|(exps, coef)| {
                let mut w = vec![Token::Coef(coef)];
                for (v, &e) in exps.iter().enumerate() {
                    w.extend(std::iter::repeat_n(Token::Var(v), e as usize));
                }
                w
            })
            .collect();
        Self::from_words(c, vars, words)
    }

    /// Printed with explicit `*` between tokens; the empty sum prints as
    /// the additive identity.
    pub fn to_text<C: Coefficients<Elem = E>>(&self, c: &C) -> String {
        if self.monomials.is_empty() {
            return c.label(&c.zero());
        }
        self.monomials
            .iter()
            .map(|m| m.text(c, &self.vars))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}
