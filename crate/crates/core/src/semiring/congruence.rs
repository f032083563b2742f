use std::collections::HashMap;

use super::{Semiring, SemiringError, TableSemiring};

/// A partition of a finite carrier, stored as a class number per element.
/// Classes are numbered in order of their smallest member.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteCongruence {
    class_of: Vec<usize>,
    count: usize,
}

impl FiniteCongruence {
    /// Renumbers an arbitrary labelling canonically.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut seen = HashMap::new();
        let class_of = labels
            .iter()
            .map(|l| {
                let next = seen.len();
                *seen.entry(l).or_insert(next)
            })
            .collect();
        FiniteCongruence {
            class_of,
            count: seen.len(),
        }
    }

    pub fn discrete(n: usize) -> Self {
        Self::from_labels(&(0..n).collect::<Vec<_>>())
    }

    pub fn total(n: usize) -> Self {
        Self::from_labels(&vec![0; n])
    }

    pub fn size(&self) -> usize {
        self.class_of.len()
    }

    pub fn num_classes(&self) -> usize {
        self.count
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a]
    }

    pub fn same(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.count];
        for (a, &c) in self.class_of.iter().enumerate() {
            out[c].push(a);
        }
        out
    }

    /// Whether every class of `self` lies inside a class of `other`.
    pub fn refines(&self, other: &FiniteCongruence) -> bool {
        (0..self.size()).all(|a| (0..self.size()).all(|b| !self.same(a, b) || other.same(a, b)))
    }

    /// Checks that addition and multiplication are well defined on classes.
    pub fn check_compatible(&self, t: &TableSemiring) -> Result<(), SemiringError> {
        let n = t.size();
        if n != self.size() {
            return Err(SemiringError::InvalidCongruence(format!(
                "partition covers {} elements, semiring has {n}",
                self.size()
            )));
        }
        let rep: Vec<usize> = self.classes().iter().map(|c| c[0]).collect();
        for a in 0..n {
            for b in 0..n {
                let (ra, rb) = (rep[self.class_of[a]], rep[self.class_of[b]]);
                for (op, f) in [
                    ("+", TableSemiring::add as fn(&_, &_, &_) -> _),
                    ("*", TableSemiring::mul),
                ] {
                    if !self.same(f(t, &a, &b), f(t, &ra, &rb)) {
                        return Err(SemiringError::InvalidCongruence(format!(
                            "{a} {op} {b} and {ra} {op} {rb} land in different classes"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        true
    }
}

fn index_pairs<S: Semiring>(
    carrier: &[S::Elem],
    pairs: &[(S::Elem, S::Elem)],
) -> Result<Vec<(usize, usize)>, SemiringError> {
    let index = |e: &S::Elem| {
        carrier
            .iter()
            .position(|c| c == e)
            .ok_or_else(|| SemiringError::DomainMismatch(format!("{e:?}")))
    };
    pairs
        .iter()
        .map(|(a, b)| Ok((index(a)?, index(b)?)))
        .collect()
}

/// Smallest congruence of `table` identifying each pair of indices.
pub fn congruence_closure_indices(
    table: &TableSemiring,
    pairs: &[(usize, usize)],
) -> FiniteCongruence {
    let n = table.size();
    let mut uf = UnionFind::new(n);
    for &(a, b) in pairs {
        uf.union(a, b);
    }
    // a ~ rep(a) generates the relation; closing under every one-sided
    // translation by c makes it compatible with both operations.
    loop {
        let mut changed = false;
        for a in 0..n {
            let r = uf.find(a);
            if r == a {
                continue;
            }
            for c in 0..n {
                changed |= uf.union(table.add(&a, &c), table.add(&r, &c));
                changed |= uf.union(table.mul(&a, &c), table.mul(&r, &c));
                changed |= uf.union(table.mul(&c, &a), table.mul(&c, &r));
            }
        }
        if !changed {
            break;
        }
    }
    let labels: Vec<usize> = (0..n).map(|a| uf.find(a)).collect();
    FiniteCongruence::from_labels(&labels)
}

/// The congruence generated by `pairs`, indexed by position in `s.carrier()`.
pub fn congruence_closure<S: Semiring>(
    s: &S,
    pairs: &[(S::Elem, S::Elem)],
) -> Result<FiniteCongruence, SemiringError> {
    let (table, carrier) = TableSemiring::from_semiring(s)?;
    let idx = index_pairs::<S>(&carrier, pairs)?;
    Ok(congruence_closure_indices(&table, &idx))
}

/// S/C as a table semiring; class `k` is labelled by the label of its
/// smallest member in brackets.
pub fn quotient_semiring(
    table: &TableSemiring,
    c: &FiniteCongruence,
) -> Result<TableSemiring, SemiringError> {
    c.check_compatible(table)?;
    let classes = c.classes();
    let m = classes.len();
    let mut add = Vec::with_capacity(m * m);
    let mut mul = Vec::with_capacity(m * m);
    for x in &classes {
        for y in &classes {
            add.push(c.class_of(table.add(&x[0], &y[0])));
            mul.push(c.class_of(table.mul(&x[0], &y[0])));
        }
    }
    let labels = classes
        .iter()
        .map(|x| format!("[{}]", table.labels()[x[0]]))
        .collect();
    Ok(TableSemiring::from_tables_unchecked(
        m,
        add,
        mul,
        c.class_of(table.zero_index()),
        c.class_of(table.one_index()),
    )
    .with_labels(labels))
}
