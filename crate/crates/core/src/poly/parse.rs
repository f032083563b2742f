//! Expression grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := '-' term | factor ('*'? factor)*
//! factor := atom ('^' UINT)*
//! atom   := INT | INT '/' INT | LABEL | VAR | '[' ... ']' | '(' expr ')'
//! ```
//!
//! Identifiers that are neither variables nor labels are read one character
//! at a time, so `zk` is `z*k`. A parenthesized group is first tried as a
//! label, so product-ring labels such as `(0,1)` are accepted. Variable-free
//! factors and parenthesized groups are evaluated to one coefficient, while
//! top-level summands are kept as written.

use std::collections::BTreeMap;

use super::{Coefficients, Expression, Monomial, PolyError, Token};

/// Upper bound on the number of monomials an expansion may produce.
pub const MAX_EXPANDED_MONOMIALS: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Lexeme {
    Int(String),
    Rat(String),
    Ident(String),
    Bracket(String),
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
    Other(char),
}

#[derive(Debug, Clone)]
struct Lexed {
    lex: Lexeme,
    /// Byte offsets into the source.
    start: usize,
    end: usize,
}

fn lex(text: &str) -> Result<Vec<Lexed>, PolyError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let at = |i: usize| chars.get(i).map(|&(_, c)| c);
    let offset = |i: usize| chars.get(i).map_or(text.len(), |&(o, _)| o);
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i].1;
        let start = i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let lex = if c.is_ascii_digit() {
            while at(i).is_some_and(|c| c.is_ascii_digit()) {
                i += 1;
            }
            if at(i) == Some('/') && at(i + 1).is_some_and(|c| c.is_ascii_digit()) {
                i += 1;
                while at(i).is_some_and(|c| c.is_ascii_digit()) {
                    i += 1;
                }
                Lexeme::Rat(text[offset(start)..offset(i)].to_string())
            } else {
                Lexeme::Int(text[offset(start)..offset(i)].to_string())
            }
        } else if c.is_alphabetic() {
            while at(i).is_some_and(|c| c.is_alphanumeric()) {
                i += 1;
            }
            while at(i) == Some('_') {
                i += 1;
                if at(i) == Some('{') {
                    i = closing(&chars, i, '{', '}').ok_or(PolyError::Syntax {
                        pos: offset(i),
                        msg: "unclosed `{`".into(),
                    })? + 1;
                } else {
                    while at(i).is_some_and(|c| c.is_alphanumeric()) {
                        i += 1;
                    }
                }
            }
            Lexeme::Ident(text[offset(start)..offset(i)].to_string())
        } else if c == '[' {
            i = closing(&chars, i, '[', ']').ok_or(PolyError::Syntax {
                pos: offset(i),
                msg: "unclosed `[`".into(),
            })? + 1;
            Lexeme::Bracket(text[offset(start)..offset(i)].to_string())
        } else {
            i += 1;
            match c {
                '+' => Lexeme::Plus,
                '-' => Lexeme::Minus,
                '*' => Lexeme::Star,
                '^' => Lexeme::Caret,
                '(' => Lexeme::Open,
                ')' => Lexeme::Close,
                other => Lexeme::Other(other),
            }
        };
        out.push(Lexed {
            lex,
            start: offset(start),
            end: offset(i),
        });
    }
    Ok(out)
}

/// Index of the delimiter closing the one at `i`.
fn closing(chars: &[(usize, char)], i: usize, open: char, close: char) -> Option<usize> {
    let mut depth = 0;
    for (k, &(_, c)) in chars.iter().enumerate().skip(i) {
        if c == open {
            depth += 1;
        } else if c == close {
            depth -= 1;
            if depth == 0 {
                return Some(k);
            }
        }
    }
    None
}

#[derive(Debug, Clone)]
enum Node<E> {
    Const(E),
    Var(usize),
    Neg(Box<Node<E>>),
    Sum(Vec<Node<E>>),
    Prod(Vec<Node<E>>),
    Pow(Box<Node<E>>, u32),
}

struct Parser<'a, C: Coefficients> {
    text: &'a str,
    toks: Vec<Lexed>,
    i: usize,
    c: &'a C,
    vars: &'a [String],
}

impl<'a, C: Coefficients> Parser<'a, C> {
    fn peek(&self) -> Option<&Lexeme> {
        self.toks.get(self.i).map(|t| &t.lex)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.text.len(), |t| t.start)
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<Node<C::Elem>, PolyError> {
        let mut terms = vec![self.term()?];
        loop {
            match self.peek() {
                Some(Lexeme::Plus) => {
                    self.i += 1;
                    terms.push(self.term()?);
                }
                Some(Lexeme::Minus) => {
                    let pos = self.pos();
                    self.i += 1;
                    let t = self.term()?;
                    terms.push(self.negate(t, pos)?);
                }
                _ => break,
            }
        }
        Ok(if terms.len() == 1 { terms.pop().expect("one term") } else { Node::Sum(terms) })
    }

    fn negate(&self, n: Node<C::Elem>, pos: usize) -> Result<Node<C::Elem>, PolyError> {
        if !self.c.has_negation() {
            return Err(PolyError::Negation { pos });
        }
        Ok(Node::Neg(Box::new(n)))
    }

    fn term(&mut self) -> Result<Node<C::Elem>, PolyError> {
        if self.peek() == Some(&Lexeme::Minus) {
            let pos = self.pos();
            self.i += 1;
            let t = self.term()?;
            return self.negate(t, pos);
        }
        let mut factors = vec![self.factor()?];
        loop {
            match self.peek() {
                Some(Lexeme::Star) => {
                    self.i += 1;
                    if self.peek() == Some(&Lexeme::Minus) {
                        let pos = self.pos();
                        self.i += 1;
                        let f = self.factor()?;
                        factors.push(self.negate(f, pos)?);
                    } else {
                        factors.push(self.factor()?);
                    }
                }
                Some(Lexeme::Int(_) | Lexeme::Rat(_) | Lexeme::Ident(_) | Lexeme::Bracket(_) | Lexeme::Open) => {
                    factors.push(self.factor()?)
                }
                _ => break,
            }
        }
        Ok(if factors.len() == 1 { factors.pop().expect("one factor") } else { Node::Prod(factors) })
    }

    fn factor(&mut self) -> Result<Node<C::Elem>, PolyError> {
        let mut base = self.atom()?;
        while self.peek() == Some(&Lexeme::Caret) {
            self.i += 1;
            let Some(Lexeme::Int(digits)) = self.peek().cloned() else {
                return self.syntax("expected a nonnegative integer exponent");
            };
            let Ok(k) = digits.parse::<u32>() else {
                return self.syntax("exponent too large");
            };
            self.i += 1;
            base = Node::Pow(Box::new(base), k);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Node<C::Elem>, PolyError> {
        let Some(t) = self.toks.get(self.i).cloned() else {
            return self.syntax("unexpected end of input");
        };
        let unknown = |name: &str| PolyError::UnknownSymbol {
            pos: t.start,
            name: name.to_string(),
        };
        self.i += 1;
        match &t.lex {
            Lexeme::Int(d) => self.c.integer(d).map(Node::Const).ok_or_else(|| unknown(d)),
            Lexeme::Rat(s) | Lexeme::Bracket(s) => self.c.element(s).map(Node::Const).ok_or_else(|| unknown(s)),
            Lexeme::Ident(s) => self.symbol(s).ok_or_else(|| unknown(s)),
            Lexeme::Open => {
                if let Some(k) = self.matching_close(self.i - 1) {
                    let raw = &self.text[t.start..self.toks[k].end];
                    if let Some(x) = self.c.element(raw) {
                        self.i = k + 1;
                        return Ok(Node::Const(x));
                    }
                }
                let inner = self.expr()?;
                if self.peek() != Some(&Lexeme::Close) {
                    return self.syntax("expected `)`");
                }
                self.i += 1;
                Ok(value(self.c, &inner).map_or(inner, Node::Const))
            }
            other => {
                self.i -= 1;
                self.syntax(format!("unexpected {}", describe(other)))
            }
        }
    }

    fn matching_close(&self, open: usize) -> Option<usize> {
        let mut depth = 0;
        for (k, t) in self.toks.iter().enumerate().skip(open) {
            match t.lex {
                Lexeme::Open => depth += 1,
                Lexeme::Close => {
                    depth -= 1;
                    if depth == 0 {
                        return Some(k);
                    }
                }
                _ => {}
            }
        }
        None
    }

    /// A variable, a label, or failing both a product of single characters.
    fn symbol(&self, s: &str) -> Option<Node<C::Elem>> {
        let whole = |s: &str| {
            if let Some(v) = self.vars.iter().position(|v| v == s) {
                return Some(Node::Var(v));
            }
            self.c
                .element(s)
                .or_else(|| self.c.integer(s))
                .map(Node::Const)
        };
        if let Some(n) = whole(s) {
            return Some(n);
        }
        if s.chars().count() < 2 || s.contains('_') {
            return None;
        }
        let mut buf = [0u8; 4];
        s.chars()
            .map(|ch| whole(ch.encode_utf8(&mut buf)))
            .collect::<Option<Vec<_>>>()
            .map(Node::Prod)
    }
}

fn describe(l: &Lexeme) -> String {
    match l {
        Lexeme::Plus => "`+`".into(),
        Lexeme::Minus => "`-`".into(),
        Lexeme::Star => "`*`".into(),
        Lexeme::Caret => "`^`".into(),
        Lexeme::Open => "`(`".into(),
        Lexeme::Close => "`)`".into(),
        Lexeme::Other(c) => format!("`{c}`"),
        Lexeme::Int(s) | Lexeme::Rat(s) | Lexeme::Ident(s) | Lexeme::Bracket(s) => format!("`{s}`"),
    }
}

/// The value of a variable-free subtree.
fn value<C: Coefficients>(c: &C, n: &Node<C::Elem>) -> Option<C::Elem> {
    match n {
        Node::Const(x) => Some(x.clone()),
        Node::Var(_) => None,
        Node::Neg(m) => c.neg(&value(c, m)?),
        Node::Sum(ms) => ms.iter().try_fold(c.zero(), |acc, m| Some(c.add(&acc, &value(c, m)?))),
        Node::Prod(ms) => ms.iter().try_fold(c.one(), |acc, m| Some(c.mul(&acc, &value(c, m)?))),
        Node::Pow(m, k) => {
            let x = value(c, m)?;
            Some((0..*k).fold(c.one(), |acc, _| c.mul(&acc, &x)))
        }
    }
}

type SignedWord<E> = (bool, Vec<Token<E>>);

/// Distributes products over sums, keeping token order. Variable-free
/// factors become a single coefficient. Summands outside any product stay
/// separate monomials, so printed expressions read back unchanged.
fn expand<C: Coefficients>(c: &C, n: &Node<C::Elem>, outer: bool) -> Result<Vec<SignedWord<C::Elem>>, PolyError> {
    if !(outer && matches!(n, Node::Sum(_) | Node::Neg(_))) {
        if let Some(x) = value(c, n) {
            return Ok(vec![(false, vec![Token::Coef(x)])]);
        }
    }
    let product = |parts: Vec<Vec<SignedWord<C::Elem>>>| -> Result<Vec<SignedWord<C::Elem>>, PolyError> {
        let mut acc: Vec<SignedWord<C::Elem>> = vec![(false, Vec::new())];
        for part in parts {
            let size = acc.len().saturating_mul(part.len());
            if size > MAX_EXPANDED_MONOMIALS {
                return Err(PolyError::TooLarge {
                    size,
                    bound: MAX_EXPANDED_MONOMIALS,
                });
            }
            let mut next = Vec::with_capacity(size);
            for (s, w) in &acc {
                for (t, v) in &part {
                    let mut word = w.clone();
                    word.extend(v.iter().cloned());
                    next.push((s ^ t, word));
                }
            }
            acc = next;
        }
        Ok(acc)
    };
    Ok(match n {
        Node::Const(x) => vec![(false, vec![Token::Coef(x.clone())])],
        Node::Var(v) => vec![(false, vec![Token::Var(*v)])],
        Node::Neg(m) => expand(c, m, outer)?.into_iter().map(|(s, w)| (!s, w)).collect(),
        Node::Sum(ms) => {
            let mut out = Vec::new();
            for m in ms {
                out.extend(expand(c, m, outer)?);
                if out.len() > MAX_EXPANDED_MONOMIALS {
                    return Err(PolyError::TooLarge {
                        size: out.len(),
                        bound: MAX_EXPANDED_MONOMIALS,
                    });
                }
            }
            out
        }
        Node::Prod(ms) => product(ms.iter().map(|m| expand(c, m, false)).collect::<Result<_, _>>()?)?,
        Node::Pow(m, k) => {
            let one = expand(c, m, false)?;
            product(vec![one; *k as usize])?
        }
    })
}

type Terms<E> = BTreeMap<Vec<u32>, E>;

/// The same tree read directly in the commutative polynomial structure.
fn commutative<C: Coefficients>(c: &C, n: &Node<C::Elem>, nvars: usize) -> Terms<C::Elem> {
    let constant = |x: C::Elem| {
        let mut t = Terms::new();
        if x != c.zero() {
            t.insert(vec![0; nvars], x);
        }
        t
    };
    let add = |mut a: Terms<C::Elem>, b: Terms<C::Elem>| {
        for (e, x) in b {
            let slot = a.entry(e).or_insert_with(|| c.zero());
            *slot = c.add(slot, &x);
        }
        a.retain(|_, x| *x != c.zero());
        a
    };
    let mul = |a: &Terms<C::Elem>, b: &Terms<C::Elem>| {
        let mut out = Terms::new();
        for (e, x) in a {
            for (f, y) in b {
                let exps: Vec<u32> = e.iter().zip(f).map(|(p, q)| p + q).collect();
                out = add(out, Terms::from([(exps, c.mul(x, y))]));
            }
        }
        out
    };
    match n {
        Node::Const(x) => constant(x.clone()),
        Node::Var(v) => {
            let mut e = vec![0; nvars];
            e[*v] = 1;
            Terms::from([(e, c.one())])
        }
        Node::Neg(m) => commutative(c, m, nvars)
            .into_iter()
            .map(|(e, x)| (e, c.neg(&x).expect("negation was checked while parsing")))
            .collect(),
        Node::Sum(ms) => ms.iter().fold(Terms::new(), |acc, m| add(acc, commutative(c, m, nvars))),
        Node::Prod(ms) => ms
            .iter()
            .fold(constant(c.one()), |acc, m| mul(&acc, &commutative(c, m, nvars))),
        Node::Pow(m, k) => {
            let base = commutative(c, m, nvars);
            (0..*k).fold(constant(c.one()), |acc, _| mul(&acc, &base))
        }
    }
}

/// Parses `text` over coefficients `c` with the given variable names. With
/// `commutative` set, the result is the canonical form in the commutative
/// polynomial structure.
pub fn parse_expression<C: Coefficients>(
    text: &str,
    c: &C,
    vars: &[String],
    commutative_mode: bool,
) -> Result<Expression<C::Elem>, PolyError> {
    let tree = parse_tree(text, c, vars)?;
    if commutative_mode {
        return Ok(Expression::from_exponent_map(c, vars.to_vec(), commutative(c, &tree, vars.len())));
    }
    let words = expand_words(c, &tree)?;
    Ok(Expression::from_words(c, vars.to_vec(), words.into_iter().map(|m| m.tokens).collect()))
}

/// Parses a sum whose repeated monomials must survive, as printed for a
/// tropicalization. Over idempotent coefficients `parse_expression` would
/// merge them.
pub fn parse_with_repeats<C: Coefficients>(
    text: &str,
    c: &C,
    vars: &[String],
) -> Result<Expression<C::Elem>, PolyError> {
    let tree = parse_tree(text, c, vars)?;
    Ok(Expression::from_monomials_raw(vars.to_vec(), expand_words(c, &tree)?))
}

fn parse_tree<C: Coefficients>(text: &str, c: &C, vars: &[String]) -> Result<Node<C::Elem>, PolyError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(PolyError::Syntax {
            pos: 0,
            msg: "empty expression".into(),
        });
    }
    let mut p = Parser {
        text,
        toks,
        i: 0,
        c,
        vars,
    };
    let tree = p.expr()?;
    if let Some(t) = p.peek() {
        return p.syntax(format!("unexpected {}", describe(t)));
    }
    Ok(tree)
}

fn expand_words<C: Coefficients>(c: &C, tree: &Node<C::Elem>) -> Result<Vec<Monomial<C::Elem>>, PolyError> {
    let mut words = Vec::new();
    for (negative, w) in expand(c, tree, true)? {
        let Some(m) = Monomial::normalize(c, &w) else { continue };
        words.push(if negative { m.negate(c).expect("negation was checked while parsing") } else { m });
    }
    Ok(words)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;
    use crate::ring::{FiniteRing, Rationals};
    use crate::semiring::{Tropical, TropicalValue};

    fn v(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn r8() -> FiniteRing {
        FiniteRing::upper_triangular(&FiniteRing::cyclic(2).unwrap(), 2).unwrap()
    }

    #[test]
    fn word_order_is_kept() {
        let f = parse_expression("x^3 * 12 * x - 2*x + x*2", &Rationals, &v(&["x"]), false).unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(f.to_text(&Rationals), "x^3*12*x + -2*x + x*2");
        let t = |s: &str| parse_expression(s, &Rationals, &v(&["x"]), false).unwrap();
        assert_ne!(t("12x"), t("x12"));
    }

    #[test]
    fn small_cases() {
        let x = v(&["x"]);
        assert!(parse_expression("0", &Rationals, &x, false).unwrap().is_zero());
        let f = parse_expression("2*3*x", &Rationals, &x, false).unwrap();
        assert_eq!(f.monomials()[0].tokens(), &[Token::Coef(qi(6)), Token::Var(0)]);
        let g = parse_expression("1/2 x - -x", &Rationals, &x, false).unwrap();
        assert_eq!(g.to_text(&Rationals), "1/2*x + x");
        assert_eq!(g.evaluate(&Rationals, &[qi(2)]).unwrap(), qi(3));
        assert_eq!(parse_expression("(x+1)^0", &Rationals, &x, false).unwrap().to_text(&Rationals), "1");
    }

    #[test]
    fn ring_labels_and_splitting() {
        let r = r8();
        let f = parse_expression("(j+k)z^2 + zk + j", &r, &v(&["z"]), false).unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(f.to_text(&r), "(j+k)*z^2 + z*k + j");
        let again = parse_expression(&f.to_text(&r), &r, &v(&["z"]), false).unwrap();
        assert_eq!(again, f);
        let p = FiniteRing::product(&FiniteRing::cyclic(2).unwrap(), &FiniteRing::cyclic(3).unwrap()).unwrap();
        let g = parse_expression("(1,2)*x", &p, &v(&["x"]), false).unwrap();
        assert_eq!(g.to_text(&p), "((1,2))*x");
    }

    #[test]
    fn integer_literals_are_multiples_of_one() {
        let z4 = FiniteRing::cyclic(4).unwrap();
        let f = parse_expression("6x + 4", &z4, &v(&["x"]), false).unwrap();
        assert_eq!(f.to_text(&z4), "2*x");
    }

    #[test]
    fn errors() {
        let x = v(&["x"]);
        let err = parse_expression("x + * 2", &Rationals, &x, false).unwrap_err();
        assert_eq!(err, PolyError::Syntax { pos: 4, msg: "unexpected `*`".into() });
        assert_eq!(
            parse_expression("x + q", &Rationals, &x, false).unwrap_err(),
            PolyError::UnknownSymbol { pos: 4, name: "q".into() }
        );
        assert_eq!(
            parse_expression("x - 1", &Tropical, &x, false).unwrap_err(),
            PolyError::Negation { pos: 2 }
        );
        assert!(matches!(parse_expression("(x", &Rationals, &x, false), Err(PolyError::Syntax { .. })));
        assert!(matches!(parse_expression("", &Rationals, &x, false), Err(PolyError::Syntax { .. })));
        assert!(matches!(parse_expression("x^", &Rationals, &x, false), Err(PolyError::Syntax { .. })));
        assert!(matches!(
            parse_expression("(x+1)^40", &Rationals, &x, false),
            Err(PolyError::TooLarge { .. })
        ));
    }

    #[test]
    fn semiring_coefficients() {
        let f = parse_expression("x^3*2*x + 1*x + x*1 + 1x", &Tropical, &v(&["x"]), false).unwrap();
        assert_eq!(f.to_text(&Tropical), "x^3*2*x + 1*x + x*1");
        assert_eq!(f.evaluate(&Tropical, &[TropicalValue::int(0)]).unwrap(), TropicalValue::int(1));
        let g = parse_expression("inf*x + 0", &Tropical, &v(&["x"]), false).unwrap();
        assert_eq!(g.to_text(&Tropical), "0");
        assert_eq!(g.len(), 1);
        assert_eq!(parse_expression("inf", &Tropical, &v(&["x"]), false).unwrap().to_text(&Tropical), "inf");
    }

    #[test]
    fn commutative_mode() {
        let xy = v(&["x", "y"]);
        let f = parse_expression("y*2*x + x*y*3 - 5yx + x^2", &Rationals, &xy, true).unwrap();
        assert!(f.is_zero() || f.len() == 1);
        assert_eq!(f.to_text(&Rationals), "x^2");
        let g = parse_expression("(x+y)^2", &Rationals, &xy, true).unwrap();
        assert_eq!(g.to_text(&Rationals), "x^2 + 2*x*y + y^2");
        let h = parse_expression("(x+y)^2", &Rationals, &xy, false).unwrap();
        assert_eq!(h.len(), 4);
        assert_eq!(h.commutative_quotient(&Rationals), g);
    }
}
