use fixedbitset::FixedBitSet;

use super::{FiniteRing, RingError, RingHom};

/// An additive subgroup of a finite ring, stored as a membership bitmap.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subgroup {
    bits: FixedBitSet,
}

/// A two-sided ideal: a subgroup absorbing multiplication on both sides.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ideal(Subgroup);

impl Subgroup {
    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    pub fn contains(&self, a: usize) -> bool {
        self.bits.contains(a)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Sorted member indices.
    pub fn elements(&self) -> Vec<usize> {
        self.bits.ones().collect()
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.bits.is_subset(&other.bits)
    }
}

impl Ideal {
    pub fn subgroup(&self) -> &Subgroup {
        &self.0
    }

    pub fn contains(&self, a: usize) -> bool {
        self.0.contains(a)
    }

    pub fn elements(&self) -> Vec<usize> {
        self.0.elements()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl FiniteRing {
    fn singleton_bits(&self) -> FixedBitSet {
        let mut bits = FixedBitSet::with_capacity(self.size());
        bits.insert(self.zero_index());
        bits
    }

    /// Adds the cyclic group generated by `g` to the subgroup `h`.
    fn join_cyclic(&self, h: &mut Vec<usize>, bits: &mut FixedBitSet, g: usize) {
        if bits.contains(g) {
            return;
        }
        // H + <g> is the union of the cosets H + kg.
        let base = h.clone();
        let mut step = g;
        while !bits.contains(step) {
            for &x in &base {
                let y = self.add_idx(x, step);
                bits.insert(y);
                h.push(y);
            }
            step = self.add_idx(step, g);
        }
    }

    /// The additive subgroup generated by `gens`.
    pub fn zspan(&self, gens: &[usize]) -> Result<Subgroup, RingError> {
        for &g in gens {
            self.check_index(g)?;
        }
        let mut bits = self.singleton_bits();
        let mut members = vec![self.zero_index()];
        for &g in gens {
            self.join_cyclic(&mut members, &mut bits, g);
        }
        Ok(Subgroup { bits })
    }

    /// zspan of a membership bitmap.
    pub fn zspan_bits(&self, gens: &FixedBitSet) -> Subgroup {
        let gens: Vec<usize> = gens.ones().collect();
        self.zspan(&gens).expect("bitmap sized to the ring")
    }

    /// The subgroup `h + zspan({g})`.
    pub fn extend_subgroup(&self, h: &Subgroup, g: usize) -> Subgroup {
        let mut bits = h.bits.clone();
        let mut members = h.elements();
        self.join_cyclic(&mut members, &mut bits, g);
        Subgroup { bits }
    }

    pub fn is_subgroup(&self, bits: &FixedBitSet) -> bool {
        bits.len() == self.size()
            && bits.contains(self.zero_index())
            && bits
                .ones()
                .all(|a| bits.ones().all(|b| bits.contains(self.add_idx(a, b))))
    }

    /// Wraps a bitmap that is already closed under addition.
    pub fn subgroup_from_bits(&self, bits: FixedBitSet) -> Result<Subgroup, RingError> {
        if self.is_subgroup(&bits) {
            Ok(Subgroup { bits })
        } else {
            Err(RingError::Format("set is not an additive subgroup".into()))
        }
    }

    /// The smallest two-sided ideal containing `gens`: the additive span of
    /// every product `r·g·s`.
    pub fn two_sided_ideal(&self, gens: &[usize]) -> Result<Ideal, RingError> {
        for &g in gens {
            self.check_index(g)?;
        }
        let mut products = FixedBitSet::with_capacity(self.size());
        for &g in gens {
            for r in 0..self.size() {
                let rg = self.mul_idx(r, g);
                for s in 0..self.size() {
                    products.insert(self.mul_idx(rg, s));
                }
            }
        }
        Ok(Ideal(self.zspan_bits(&products)))
    }

    pub fn is_ideal(&self, s: &Subgroup) -> bool {
        s.bits.ones().all(|a| {
            (0..self.size()).all(|r| s.contains(self.mul_idx(r, a)) && s.contains(self.mul_idx(a, r)))
        })
    }

    /// The ideal generated by all commutators `ab − ba`.
    pub fn commutator_ideal(&self) -> Ideal {
        let mut comms = Vec::new();
        for a in 0..self.size() {
            for b in 0..self.size() {
                let c = self.add_idx(self.mul_idx(a, b), self.neg_idx(self.mul_idx(b, a)));
                if !comms.contains(&c) {
                    comms.push(c);
                }
            }
        }
        self.two_sided_ideal(&comms).expect("indices in range")
    }

    /// R / [R, R] together with the projection.
    pub fn abelianize(&self) -> (FiniteRing, RingHom) {
        let ideal = self.commutator_ideal();
        self.quotient(&ideal).expect("commutator ideal is an ideal")
    }
}
