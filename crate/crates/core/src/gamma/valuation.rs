use fixedbitset::FixedBitSet;
use rand::Rng;

use crate::ring::{FiniteRing, Ideal, Ring, RingSample};
use crate::semiring::{seeded_rng, Semiring};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValuationMode {
    Multiplicative,
    Supermultiplicative,
}

/// Where the axioms are checked: single elements for the unary laws and
/// pairs for the binary ones.
#[derive(Debug, Clone)]
pub struct ValuationSample<E> {
    pub elements: Vec<E>,
    pub pairs: Vec<(E, E)>,
}

impl<E: Clone> ValuationSample<E> {
    /// Every element and every ordered pair.
    pub fn exhaustive(elements: Vec<E>) -> Self {
        let pairs = elements
            .iter()
            .flat_map(|a| elements.iter().map(move |b| (a.clone(), b.clone())))
            .collect();
        ValuationSample { elements, pairs }
    }

    pub fn of_ring<R: Ring<Elem = E>>(r: &R) -> Option<Self> {
        r.elements().map(Self::exhaustive)
    }

    /// `count` seeded random pairs; the elements are their entries.
    pub fn sampled<R: RingSample<Elem = E>>(r: &R, seed: u64, count: usize) -> Self {
        let mut rng = seeded_rng(seed);
        let pairs: Vec<(E, E)> = (0..count).map(|_| (r.sample(&mut rng), r.sample(&mut rng))).collect();
        let elements = pairs.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect();
        ValuationSample { elements, pairs }
    }
}

/// Per-axiom verdicts; each field holds the first counterexample, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuationReport {
    pub mode: ValuationMode,
    pub unital: Option<String>,
    pub multiplicative: Option<(String, String)>,
    pub superadditive: Option<(String, String)>,
    pub supermultiplicative: Option<(String, String)>,
    pub nondegenerate: Option<String>,
}

impl ValuationReport {
    pub fn is_unital(&self) -> bool {
        self.unital.is_none()
    }
    pub fn is_multiplicative(&self) -> bool {
        self.multiplicative.is_none()
    }
    pub fn is_superadditive(&self) -> bool {
        self.superadditive.is_none()
    }
    pub fn is_supermultiplicative(&self) -> bool {
        self.supermultiplicative.is_none()
    }
    pub fn is_nondegenerate(&self) -> bool {
        self.nondegenerate.is_none()
    }

    /// Unital and superadditive, plus the multiplicative law the mode asks for.
    pub fn is_valuation(&self) -> bool {
        let mult = match self.mode {
            ValuationMode::Multiplicative => self.is_multiplicative(),
            ValuationMode::Supermultiplicative => self.is_supermultiplicative(),
        };
        self.is_unital() && self.is_superadditive() && mult
    }

    /// One `name: yes|no` line per axiom, with the counterexample on failure.
    pub fn lines(&self) -> Vec<String> {
        let pair = |w: &Option<(String, String)>| match w {
            None => "yes".to_string(),
            Some((a, b)) => format!("no at ({a}, {b})"),
        };
        let single = |w: &Option<String>| match w {
            None => "yes".to_string(),
            Some(a) => format!("no at {a}"),
        };
        vec![
            format!("unital: {}", single(&self.unital)),
            format!("multiplicative: {}", pair(&self.multiplicative)),
            format!("superadditive: {}", pair(&self.superadditive)),
            format!("supermultiplicative: {}", pair(&self.supermultiplicative)),
            format!("nondegenerate: {}", single(&self.nondegenerate)),
            format!("valuation: {}", if self.is_valuation() { "yes" } else { "no" }),
        ]
    }
}

/// Checks the valuation axioms of `nu: R → S` on `sample`. Superadditivity is
/// tested in its equational form `ν(a+b) + ν(a) + ν(b) = ν(a) + ν(b)`.
pub fn check_valuation<R, S, F>(
    r: &R,
    s: &S,
    nu: F,
    sample: &ValuationSample<R::Elem>,
    mode: ValuationMode,
) -> ValuationReport
where
    R: Ring,
    S: Semiring,
    F: Fn(&R::Elem) -> S::Elem,
{
    let (zero, one) = (s.zero(), s.one());
    let unital = [r.zero(), r.one(), r.neg(&r.one())]
        .into_iter()
        .zip([&zero, &one, &one])
        .find(|(a, want)| nu(a) != **want)
        .map(|(a, _)| r.label(&a));
    let nondegenerate = sample
        .elements
        .iter()
        .find(|a| (nu(a) == zero) != (**a == r.zero()))
        .map(|a| r.label(a));
    let mut report = ValuationReport {
        mode,
        unital,
        multiplicative: None,
        superadditive: None,
        supermultiplicative: None,
        nondegenerate,
    };
    for (a, b) in &sample.pairs {
        let (na, nb) = (nu(a), nu(b));
        let witness = || (r.label(a), r.label(b));
        let sum = s.add(&na, &nb);
        if report.superadditive.is_none() && s.add(&nu(&r.add(a, b)), &sum) != sum {
            report.superadditive = Some(witness());
        }
        let prod = s.mul(&na, &nb);
        let nab = nu(&r.mul(a, b));
        if report.multiplicative.is_none() && nab != prod {
            report.multiplicative = Some(witness());
        }
        // ν(ab) ≥ ν(a)ν(b), i.e. ν(a)ν(b) + ν(ab) = ν(a)ν(b).
        if report.supermultiplicative.is_none() && s.add(&prod, &nab) != prod {
            report.supermultiplicative = Some(witness());
        }
    }
    report
}

/// ν(a) + ν(b) = ν(a+b) + ν(a) = ν(a+b) + ν(b).
pub fn meet_of_sum_check<R, S, F>(r: &R, s: &S, nu: F, a: &R::Elem, b: &R::Elem) -> bool
where
    R: Ring,
    S: Semiring,
    F: Fn(&R::Elem) -> S::Elem,
{
    let (na, nb, nab) = (nu(a), nu(b), nu(&r.add(a, b)));
    let first = s.add(&na, &nb);
    first == s.add(&nab, &na) && first == s.add(&nab, &nb)
}

/// Two-sided ideals of a finite ring under ideal sum and ideal product,
/// with `{0}` as zero and `R` as one. Ordered by reverse inclusion.
#[derive(Debug, Clone)]
pub struct IdealSemiring {
    ring: FiniteRing,
}

pub fn ideal_semiring(r: &FiniteRing) -> IdealSemiring {
    IdealSemiring { ring: r.clone() }
}

impl IdealSemiring {
    /// The ideal valuation `a ↦ (a)`.
    pub fn nu(&self, a: usize) -> Ideal {
        self.ring.two_sided_ideal(&[a]).expect("index in range")
    }
}

impl Semiring for IdealSemiring {
    type Elem = Ideal;

    fn zero(&self) -> Ideal {
        self.ring.two_sided_ideal(&[]).expect("empty")
    }
    fn one(&self) -> Ideal {
        self.ring.two_sided_ideal(&[self.ring.one_index()]).expect("one")
    }
    fn add(&self, a: &Ideal, b: &Ideal) -> Ideal {
        let gens: Vec<usize> = a.elements().into_iter().chain(b.elements()).collect();
        self.ring.two_sided_ideal(&gens).expect("members in range")
    }
    fn mul(&self, a: &Ideal, b: &Ideal) -> Ideal {
        let mut gens = Vec::new();
        for x in a.elements() {
            for y in b.elements() {
                gens.push(self.ring.mul_idx(x, y));
            }
        }
        self.ring.two_sided_ideal(&gens).expect("members in range")
    }
    fn contains(&self, a: &Ideal) -> bool {
        a.subgroup().bits().len() == self.ring.size() && self.ring.is_ideal(a.subgroup())
    }
    fn carrier(&self) -> Option<Vec<Ideal>> {
        let mut out = vec![self.zero()];
        let mut i = 0;
        while i < out.len() {
            for g in 0..self.ring.size() {
                let mut gens = out[i].elements();
                gens.push(g);
                let next = self.ring.two_sided_ideal(&gens).expect("in range");
                if !out.contains(&next) {
                    out.push(next);
                }
            }
            i += 1;
        }
        out.sort();
        Some(out)
    }
}

/// Subsets of a finite point set under (∩, ∪): the full set is zero and the
/// empty set is one, so `X ≤ Y` iff `X ⊆ Y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolutionSetSemiring {
    points: usize,
}

/// Largest point set whose subsets are enumerated as a carrier.
const SOLUTION_CARRIER_MAX_POINTS: usize = 12;

pub fn solution_set_semiring(points: usize) -> SolutionSetSemiring {
    SolutionSetSemiring { points }
}

impl SolutionSetSemiring {
    pub fn points(&self) -> usize {
        self.points
    }

    pub fn set(&self, members: impl IntoIterator<Item = usize>) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.points);
        members.into_iter().for_each(|m| s.insert(m));
        s
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FixedBitSet {
        self.set((0..self.points).filter(|_| rng.gen_bool(0.5)))
    }
}

impl Semiring for SolutionSetSemiring {
    type Elem = FixedBitSet;

    fn zero(&self) -> FixedBitSet {
        self.set(0..self.points)
    }
    fn one(&self) -> FixedBitSet {
        self.set([])
    }
    fn add(&self, a: &FixedBitSet, b: &FixedBitSet) -> FixedBitSet {
        let mut out = a.clone();
        out.intersect_with(b);
        out
    }
    fn mul(&self, a: &FixedBitSet, b: &FixedBitSet) -> FixedBitSet {
        let mut out = a.clone();
        out.union_with(b);
        out
    }
    fn contains(&self, a: &FixedBitSet) -> bool {
        a.len() == self.points
    }
    fn carrier(&self) -> Option<Vec<FixedBitSet>> {
        (self.points <= SOLUTION_CARRIER_MAX_POINTS).then(|| {
            (0u32..1 << self.points)
                .map(|m| self.set((0..self.points).filter(|i| m >> i & 1 == 1)))
                .collect()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::enumerate_gamma;
    use crate::rational::{padic_exponent, q, qi, Q};
    use crate::ring::Rationals;
    use crate::semiring::{
        check_homomorphism, check_laws_exhaustive, seed_from_env, Tropical, TropicalValue,
        SAMPLED_CASES,
    };

    fn r8() -> FiniteRing {
        FiniteRing::upper_triangular(&FiniteRing::cyclic(2).unwrap(), 2).unwrap()
    }

    fn nu_p(p: u64) -> impl Fn(&Q) -> TropicalValue {
        move |x| match padic_exponent(x, p) {
            Some(e) => TropicalValue::int(e),
            None => TropicalValue::Infinity,
        }
    }

    #[test]
    fn universal_valuation_passes_every_axiom() {
        let r = r8();
        let g = enumerate_gamma(&r).unwrap();
        let sample = ValuationSample::of_ring(&r).unwrap();
        let report = check_valuation(&r, &g, |&a| g.nu(a), &sample, ValuationMode::Multiplicative);
        assert!(report.is_valuation() && report.is_nondegenerate(), "{report:?}");
        assert!(report.is_supermultiplicative());
    }

    #[test]
    fn two_adic_valuation_on_sampled_rationals() {
        let sample = ValuationSample::sampled(&Rationals, seed_from_env(), SAMPLED_CASES);
        let report = check_valuation(&Rationals, &Tropical, nu_p(2), &sample, ValuationMode::Multiplicative);
        assert!(report.is_valuation() && report.is_nondegenerate(), "{report:?}");
    }

    #[test]
    fn constant_one_is_not_unital() {
        let r = r8();
        let g = enumerate_gamma(&r).unwrap();
        let sample = ValuationSample::of_ring(&r).unwrap();
        let report = check_valuation(&r, &g, |_| g.one(), &sample, ValuationMode::Multiplicative);
        assert_eq!(report.unital.as_deref(), Some("0"));
        assert!(!report.is_valuation());
    }

    #[test]
    fn three_way_equality_examples() {
        assert!(meet_of_sum_check(&Rationals, &Tropical, nu_p(2), &qi(4), &qi(2)));
        assert_eq!(nu_p(2)(&qi(4)), TropicalValue::int(2));
        let r = r8();
        let g = enumerate_gamma(&r).unwrap();
        assert!(meet_of_sum_check(&r, &g, |&a| g.nu(a), &0, &0));
        assert_eq!(g.nu(0), g.zero());
        // gcd(a, b) = gcd(a − b, b) in the gcd view.
        let (a, b) = (q(7, 2), q(3, 2));
        assert_eq!(crate::rational::rational_gcd(&a, &b), q(1, 2));
        assert_eq!(crate::rational::rational_gcd(&(&a - &b), &b), q(1, 2));
    }

    #[test]
    fn ideal_valuation_is_supermultiplicative_but_not_multiplicative_on_r8() {
        let r = r8();
        let ideals = ideal_semiring(&r);
        check_laws_exhaustive(&ideals).unwrap();
        let sample = ValuationSample::of_ring(&r).unwrap();
        let report = check_valuation(&r, &ideals, |&a| ideals.nu(a), &sample, ValuationMode::Supermultiplicative);
        assert!(report.is_valuation(), "{report:?}");
        assert!(report.is_nondegenerate());
        assert_eq!(report.multiplicative, Some(("i".into(), "k".into())));
    }

    #[test]
    fn ideal_valuation_is_multiplicative_on_commutative_rings() {
        for r in [FiniteRing::cyclic(12).unwrap(), FiniteRing::builtin_field(4).unwrap()] {
            let ideals = ideal_semiring(&r);
            let sample = ValuationSample::of_ring(&r).unwrap();
            let report = check_valuation(&r, &ideals, |&a| ideals.nu(a), &sample, ValuationMode::Multiplicative);
            assert!(report.is_valuation(), "{report:?}");
        }
    }

    #[test]
    fn valuations_factor_through_gamma() {
        // [A] ↦ Σ_{a ∈ A} ν(a) is a homomorphism Γ_R → S.
        let r = FiniteRing::cyclic(12).unwrap();
        let g = enumerate_gamma(&r).unwrap();
        let ideals = ideal_semiring(&r);
        let factor = |x: &crate::gamma::GammaElement| {
            x.elements().iter().fold(ideals.zero(), |acc, &a| ideals.add(&acc, &ideals.nu(a)))
        };
        let report = check_homomorphism(factor, &g, &ideals, &g.carrier().unwrap());
        assert!(report.is_homomorphism() && report.preserves_order(), "{report:?}");
    }

    #[test]
    fn equal_ideals_are_not_a_congruence_on_subsets_of_r8() {
        use crate::semiring::{FiniteCongruence, FiniteMonoid, Powerset, TableSemiring};
        let r = r8();
        let n = r.size();
        let monoid = FiniteMonoid::new(n, (0..n * n).map(|t| r.mul_idx(t / n, t % n)).collect(), r.one_index());
        let ps = Powerset::new(monoid.unwrap()).unwrap();
        let (table, carrier) = TableSemiring::from_semiring(&ps).unwrap();
        let labels: Vec<usize> = carrier
            .iter()
            .map(|s| {
                let gens: Vec<usize> = s.ones().collect();
                r.two_sided_ideal(&gens).unwrap().elements().iter().map(|&x| 1 << x).sum()
            })
            .collect();
        let relation = FiniteCongruence::from_labels(&labels);
        assert!(relation.check_compatible(&table).is_err());
        // {k} and {j, k} generate the same ideal; multiplying by {i} separates them.
        let l = |s: &str| r.index_of(s).unwrap();
        let (k, jk, i) = (ps.subset(&[l("k")]), ps.subset(&[l("j"), l("k")]), ps.subset(&[l("i")]));
        let ideal_of = |s: &FixedBitSet| r.two_sided_ideal(&s.ones().collect::<Vec<_>>()).unwrap();
        assert_eq!(ideal_of(&k), ideal_of(&jk));
        assert_ne!(ideal_of(&ps.mul(&i, &k)), ideal_of(&ps.mul(&i, &jk)));
    }

    #[test]
    fn solution_sets_form_a_semiring() {
        let s = solution_set_semiring(3);
        check_laws_exhaustive(&s).unwrap();
        assert_eq!(s.carrier().unwrap().len(), 8);
        assert!(solution_set_semiring(20).carrier().is_none());
    }
}
