//! The universal valuation semiring Γ_R of a finite ring.
//!
//! Two finite sums of generators `x_a` are equal in Γ_R exactly when the
//! additive subgroups spanned by their indices agree, so every element is
//! stored as that subgroup. Addition is the span of the union, multiplication
//! the span of the elementwise products, and the order is reverse inclusion.

use std::collections::HashMap;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::rational::RationalError;
use crate::ring::{FiniteRing, RingError, Subgroup};
use crate::semiring::{Semiring, SemiringError, TableSemiring};

mod functor;
mod rationals;
mod valuation;

pub use functor::{abelianization_correspondence, gamma_functor_map, AbelianizationReport, GammaMap};
pub use rationals::{
    apply_trop_hom, classify_trop_hom, nu_gamma_q, nu_padic, GammaQElement, HomClassification,
    InvalidRelation,
};
pub use valuation::{
    check_valuation, ideal_semiring, meet_of_sum_check, solution_set_semiring, IdealSemiring,
    SolutionSetSemiring, ValuationMode, ValuationReport, ValuationSample,
};

/// Largest number of subgroups `enumerate_gamma` will build tables for.
pub const MAX_GAMMA_ELEMENTS: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GammaError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Semiring(#[from] SemiringError),
    #[error(transparent)]
    Rational(#[from] RationalError),
    #[error("elements belong to Γ of different rings")]
    ParentMismatch,
    #[error("{what} has {size} elements, above the bound {bound}")]
    TooLarge {
        what: &'static str,
        size: usize,
        bound: usize,
    },
    #[error("{0}")]
    Argument(String),
}

/// An element of Γ_R: the additive subgroup spanned by its generators.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GammaElement {
    ring: u64,
    span: Subgroup,
}

impl GammaElement {
    pub fn span(&self) -> &Subgroup {
        &self.span
    }

    pub fn elements(&self) -> Vec<usize> {
        self.span.elements()
    }

    pub fn ring_id(&self) -> u64 {
        self.ring
    }
}

fn wrap(r: &FiniteRing, span: Subgroup) -> GammaElement {
    GammaElement { ring: r.id(), span }
}

fn same_parent(r: &FiniteRing, xs: &[&GammaElement]) -> Result<(), GammaError> {
    if xs.iter().all(|x| x.ring == r.id()) {
        Ok(())
    } else {
        Err(GammaError::ParentMismatch)
    }
}

/// `x_r`, the span of `r`.
pub fn nu_universal(r: &FiniteRing, a: usize) -> Result<GammaElement, GammaError> {
    Ok(wrap(r, r.zspan(&[a])?))
}

/// `[Σ_{a ∈ gens} x_a]`. These additive classes are also the canonical
/// classes of generator sums in the supermultiplicative variant.
pub fn hat_gamma_add_class(r: &FiniteRing, gens: &[usize]) -> Result<GammaElement, GammaError> {
    Ok(wrap(r, r.zspan(gens)?))
}

pub fn gamma_zero(r: &FiniteRing) -> GammaElement {
    wrap(r, r.zspan(&[]).expect("empty span"))
}

pub fn gamma_one(r: &FiniteRing) -> GammaElement {
    wrap(r, r.zspan(&[r.one_index()]).expect("one is in range"))
}

pub fn gamma_add(r: &FiniteRing, a: &GammaElement, b: &GammaElement) -> Result<GammaElement, GammaError> {
    same_parent(r, &[a, b])?;
    let mut bits = a.span.bits().clone();
    bits.union_with(b.span.bits());
    Ok(wrap(r, r.zspan_bits(&bits)))
}

pub fn gamma_mul(r: &FiniteRing, a: &GammaElement, b: &GammaElement) -> Result<GammaElement, GammaError> {
    same_parent(r, &[a, b])?;
    let mut bits = FixedBitSet::with_capacity(r.size());
    for x in a.span.bits().ones() {
        for y in b.span.bits().ones() {
            bits.insert(r.mul_idx(x, y));
        }
    }
    Ok(wrap(r, r.zspan_bits(&bits)))
}

/// Every additive subgroup of `r`, sorted by size and then by member list.
/// Worklist over spans: seed with every `zspan({a})`, then adjoin one
/// element at a time until nothing new appears.
pub fn enumerate_subgroups(r: &FiniteRing, bound: usize) -> Result<Vec<Subgroup>, GammaError> {
    let mut seen: HashMap<Subgroup, ()> = HashMap::new();
    let mut work = Vec::new();
    for a in 0..r.size() {
        let s = r.zspan(&[a])?;
        if seen.insert(s.clone(), ()).is_none() {
            work.push(s);
        }
    }
    while let Some(h) = work.pop() {
        for g in 0..r.size() {
            if h.contains(g) {
                continue;
            }
            let next = r.extend_subgroup(&h, g);
            if seen.insert(next.clone(), ()).is_none() {
                if seen.len() > bound {
                    return Err(GammaError::TooLarge {
                        what: "subgroup lattice",
                        size: seen.len(),
                        bound,
                    });
                }
                work.push(next);
            }
        }
    }
    let mut out: Vec<Subgroup> = seen.into_keys().collect();
    out.sort_by_cached_key(|s| (s.len(), s.elements()));
    Ok(out)
}

/// Γ_R with full addition and multiplication tables.
#[derive(Debug, Clone)]
pub struct GammaSemiring {
    ring: FiniteRing,
    elements: Vec<GammaElement>,
    index: HashMap<Subgroup, usize>,
    add: Vec<usize>,
    mul: Vec<usize>,
    zero: usize,
    one: usize,
    names: Vec<String>,
}

pub fn enumerate_gamma(r: &FiniteRing) -> Result<GammaSemiring, GammaError> {
    let subgroups = enumerate_subgroups(r, MAX_GAMMA_ELEMENTS)?;
    let index: HashMap<Subgroup, usize> =
        subgroups.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
    let elements: Vec<GammaElement> = subgroups.into_iter().map(|s| wrap(r, s)).collect();
    let m = elements.len();
    let mut add = Vec::with_capacity(m * m);
    let mut mul = Vec::with_capacity(m * m);
    for a in &elements {
        for b in &elements {
            add.push(index[&gamma_add(r, a, b)?.span]);
            mul.push(index[&gamma_mul(r, a, b)?.span]);
        }
    }
    let zero = index[&gamma_zero(r).span];
    let one = index[&gamma_one(r).span];
    let mut g = GammaSemiring {
        ring: r.clone(),
        elements,
        index,
        add,
        mul,
        zero,
        one,
        names: Vec::new(),
    };
    g.names = (0..m).map(|k| g.compute_name(k)).collect();
    Ok(g)
}

/// Splits on `+` outside braces and brackets.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '{' | '[' | '(' => depth += 1,
            '}' | ']' | ')' => depth -= 1,
            '+' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

fn subscript(label: &str) -> String {
    if label.chars().count() == 1 {
        format!("x_{label}")
    } else {
        format!("x_{{{label}}}")
    }
}

impl GammaSemiring {
    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GammaElement] {
        &self.elements
    }

    pub fn element(&self, k: usize) -> &GammaElement {
        &self.elements[k]
    }

    pub fn index_of(&self, x: &GammaElement) -> Option<usize> {
        if x.ring != self.ring.id() {
            return None;
        }
        self.index.get(&x.span).copied()
    }

    pub fn zero_index(&self) -> usize {
        self.zero
    }

    pub fn one_index(&self) -> usize {
        self.one
    }

    pub fn add_idx(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size() + b]
    }

    pub fn mul_idx(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size() + b]
    }

    /// Index of `x_a`.
    pub fn nu_index(&self, a: usize) -> usize {
        let s = self.ring.zspan(&[a]).expect("index in range");
        self.index[&s]
    }

    pub fn nu(&self, a: usize) -> GammaElement {
        self.elements[self.nu_index(a)].clone()
    }

    /// Index of `[Σ_{a ∈ gens} x_a]`.
    pub fn sum_index(&self, gens: &[usize]) -> Result<usize, GammaError> {
        Ok(self.index[&self.ring.zspan(gens)?])
    }

    /// Indices of the classes `x_a` other than 0 and 1, ordered by the
    /// display order of their first generator.
    pub fn singletons(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for a in self.ring.display_order() {
            let k = self.nu_index(a);
            if k != self.zero && k != self.one && !out.contains(&k) {
                out.push(k);
            }
        }
        out
    }

    /// `0`, `1`, `x_a` for cyclic subgroups, otherwise `[x_a + x_b + ...]`
    /// with generators picked greedily in display order.
    pub fn name(&self, k: usize) -> String {
        self.names[k].clone()
    }

    /// Looks up an element by name. Bracketed sums need not be canonical:
    /// `[1 + x_{i+j} + x_j]` is read as the sum of its parts.
    pub fn parse_name(&self, text: &str) -> Option<usize> {
        let squeezed: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(k) = self.names.iter().position(|n| n.replace(' ', "") == squeezed) {
            return Some(k);
        }
        let inner = squeezed.strip_prefix('[')?.strip_suffix(']')?;
        let mut acc = self.zero;
        for part in split_top_level(inner) {
            acc = self.add_idx(acc, self.parse_name(part)?);
        }
        Some(acc)
    }

    fn compute_name(&self, k: usize) -> String {
        if k == self.zero {
            return "0".into();
        }
        if k == self.one {
            return "1".into();
        }
        let order = self.ring.display_order();
        let span = &self.elements[k].span;
        if let Some(&a) = order.iter().find(|&&a| self.nu_index(a) == k) {
            return subscript(self.ring.label_of(a));
        }
        let mut cur = self.ring.zspan(&[]).expect("empty span");
        let mut gens = Vec::new();
        for &a in &order {
            if span.contains(a) && !cur.contains(a) {
                cur = self.ring.extend_subgroup(&cur, a);
                gens.push(self.compute_name(self.nu_index(a)));
            }
        }
        format!("[{}]", gens.join(" + "))
    }

    pub fn to_table(&self) -> TableSemiring {
        let m = self.size();
        TableSemiring::from_tables_unchecked(m, self.add.clone(), self.mul.clone(), self.zero, self.one)
            .with_labels((0..m).map(|k| self.name(k)).collect())
    }

    pub fn table(&self) -> GammaTable {
        GammaTable {
            elements: self.elements.iter().map(|e| e.elements()).collect(),
            add: self.add.clone(),
            mul: self.mul.clone(),
        }
    }

    /// The singleton multiplication table: a header naming the columns, then
    /// one row per singleton class.
    pub fn singleton_table_text(&self) -> String {
        let s = self.singletons();
        let names: Vec<String> = s.iter().map(|&k| self.name(k)).collect();
        let mut out = format!("singletons: {}\n", names.join(" "));
        for (&a, name) in s.iter().zip(&names) {
            let row: Vec<String> = s.iter().map(|&b| self.name(self.mul_idx(a, b))).collect();
            let _ = writeln!(out, "{name}: {}", row.join(" "));
        }
        out
    }

    /// Element listing with names, followed by both tables.
    pub fn human_text(&self) -> String {
        let mut out = format!("gamma n={}\n", self.size());
        for (k, e) in self.elements.iter().enumerate() {
            let members: Vec<&str> = e.elements().iter().map(|&i| self.ring.label_of(i)).collect();
            let _ = writeln!(out, "g{k} = {}: {{{}}}", self.name(k), members.join(", "));
        }
        out.push_str(&self.table().tables_text());
        out
    }
}

impl Semiring for GammaSemiring {
    type Elem = GammaElement;

    fn zero(&self) -> GammaElement {
        self.elements[self.zero].clone()
    }
    fn one(&self) -> GammaElement {
        self.elements[self.one].clone()
    }
    fn add(&self, a: &GammaElement, b: &GammaElement) -> GammaElement {
        let (i, j) = (self.index_of(a).expect("member"), self.index_of(b).expect("member"));
        self.elements[self.add_idx(i, j)].clone()
    }
    fn mul(&self, a: &GammaElement, b: &GammaElement) -> GammaElement {
        let (i, j) = (self.index_of(a).expect("member"), self.index_of(b).expect("member"));
        self.elements[self.mul_idx(i, j)].clone()
    }
    fn contains(&self, a: &GammaElement) -> bool {
        self.index_of(a).is_some()
    }
    fn carrier(&self) -> Option<Vec<GammaElement>> {
        Some(self.elements.clone())
    }
}

/// The Γ_R table file: `gamma n=<N>`, `g<k>:` member lists, then `add:`
/// and `mul:` blocks of N rows each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaTable {
    pub elements: Vec<Vec<usize>>,
    pub add: Vec<usize>,
    pub mul: Vec<usize>,
}

impl GammaTable {
    fn tables_text(&self) -> String {
        let m = self.elements.len();
        let mut out = String::new();
        for (key, table) in [("add", &self.add), ("mul", &self.mul)] {
            let _ = writeln!(out, "{key}:");
            for row in table.chunks(m.max(1)) {
                let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                let _ = writeln!(out, "{}", cells.join(" "));
            }
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("gamma n={}\n", self.elements.len());
        for (k, e) in self.elements.iter().enumerate() {
            let members: Vec<String> = e.iter().map(|i| i.to_string()).collect();
            let _ = writeln!(out, "g{k}: {}", members.join(" "));
        }
        out.push_str(&self.tables_text());
        out
    }

    pub fn parse(text: &str) -> Result<Self, GammaError> {
        let bad = |msg: String| GammaError::Argument(msg);
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().unwrap_or_default();
        let m: usize = header
            .strip_prefix("gamma n=")
            .and_then(|n| n.parse().ok())
            .ok_or_else(|| bad(format!("expected `gamma n=<N>`, got `{header}`")))?;
        let nums = |s: &str| -> Result<Vec<usize>, GammaError> {
            s.split_whitespace()
                .map(|t| t.parse().map_err(|_| bad(format!("bad index `{t}`"))))
                .collect()
        };
        let mut elements = Vec::with_capacity(m);
        for k in 0..m {
            let line = lines.next().unwrap_or_default();
            let body = line
                .strip_prefix(&format!("g{k}:"))
                .ok_or_else(|| bad(format!("expected `g{k}:`, got `{line}`")))?;
            elements.push(nums(body)?);
        }
        let mut block = |key: &str| -> Result<Vec<usize>, GammaError> {
            let line = lines.next().unwrap_or_default();
            if line != format!("{key}:") {
                return Err(bad(format!("expected `{key}:`, got `{line}`")));
            }
            let mut out = Vec::with_capacity(m * m);
            for _ in 0..m {
                let row = nums(lines.next().unwrap_or_default())?;
                if row.len() != m || row.iter().any(|&x| x >= m) {
                    return Err(bad(format!("`{key}` rows need {m} indices below {m}")));
                }
                out.extend(row);
            }
            Ok(out)
        };
        let add = block("add")?;
        let mul = block("mul")?;
        Ok(GammaTable { elements, add, mul })
    }
}
