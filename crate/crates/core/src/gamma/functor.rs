use super::{enumerate_gamma, GammaError, GammaSemiring};
use crate::ring::{FiniteRing, RingHom};
use crate::semiring::{congruence_closure_indices, quotient_semiring, Semiring};

/// Γ_f as a table from indices of Γ_R to indices of Γ_{R'}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaMap {
    pub image: Vec<usize>,
}

impl GammaMap {
    pub fn apply(&self, k: usize) -> usize {
        self.image[k]
    }
}

/// `[A] ↦ [f(A)]`, extending `x_a ↦ x_{f(a)}`.
pub fn gamma_functor_map(
    f: &RingHom,
    source: &GammaSemiring,
    target: &GammaSemiring,
) -> Result<GammaMap, GammaError> {
    if f.source_id() != source.ring().id() || f.target_id() != target.ring().id() {
        return Err(GammaError::ParentMismatch);
    }
    let image = source
        .elements()
        .iter()
        .map(|e| {
            let imgs: Vec<usize> = e.elements().iter().map(|&a| f.image()[a]).collect();
            target.sum_index(&imgs)
        })
        .collect::<Result<_, _>>()?;
    Ok(GammaMap { image })
}

/// Sizes of Ab(Γ_R) and Γ_{Ab(R)} and whether `[A] ↦ [π(A)]` is an
/// isomorphism between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianizationReport {
    pub ab_gamma_size: usize,
    pub gamma_ab_size: usize,
    pub isomorphic: bool,
    pub failure: Option<String>,
}

impl AbelianizationReport {
    pub fn line(&self) -> String {
        format!(
            "{} {} isomorphic: {}",
            self.ab_gamma_size,
            self.gamma_ab_size,
            if self.isomorphic { "yes" } else { "no" }
        )
    }
}

pub fn abelianization_correspondence(r: &FiniteRing) -> Result<AbelianizationReport, GammaError> {
    let gamma = enumerate_gamma(r)?;
    let table = gamma.to_table();
    let m = gamma.size();
    let mut pairs = Vec::with_capacity(m * m);
    for a in 0..m {
        for b in 0..m {
            pairs.push((gamma.mul_idx(a, b), gamma.mul_idx(b, a)));
        }
    }
    let cong = congruence_closure_indices(&table, &pairs);
    let ab_gamma = quotient_semiring(&table, &cong)?;

    let (ab_ring, pi) = r.abelianize();
    let gamma_ab = enumerate_gamma(&ab_ring)?;
    let gamma_pi = gamma_functor_map(&pi, &gamma, &gamma_ab)?;

    let mut report = AbelianizationReport {
        ab_gamma_size: ab_gamma.size(),
        gamma_ab_size: gamma_ab.size(),
        isomorphic: false,
        failure: None,
    };
    let fail = |mut rep: AbelianizationReport, msg: String| {
        rep.failure = Some(msg);
        Ok(rep)
    };

    // The class map: every member of a class must land on the same element.
    let mut class_map = vec![usize::MAX; cong.num_classes()];
    for a in 0..m {
        let c = cong.class_of(a);
        let img = gamma_pi.apply(a);
        if class_map[c] == usize::MAX {
            class_map[c] = img;
        } else if class_map[c] != img {
            return fail(report, format!("class {c} maps to two different elements"));
        }
    }
    let mut hit = vec![false; gamma_ab.size()];
    class_map.iter().for_each(|&y| hit[y] = true);
    if class_map.len() != gamma_ab.size() || hit.iter().any(|h| !h) {
        return fail(report, "class map is not a bijection".into());
    }
    let (qz, qo) = (ab_gamma.zero(), ab_gamma.one());
    if class_map[qz] != gamma_ab.zero_index() || class_map[qo] != gamma_ab.one_index() {
        return fail(report, "class map does not preserve 0 and 1".into());
    }
    for a in 0..ab_gamma.size() {
        for b in 0..ab_gamma.size() {
            let (fa, fb) = (class_map[a], class_map[b]);
            if class_map[ab_gamma.add(&a, &b)] != gamma_ab.add_idx(fa, fb) {
                return fail(report, format!("addition differs at classes ({a}, {b})"));
            }
            if class_map[ab_gamma.mul(&a, &b)] != gamma_ab.mul_idx(fa, fb) {
                return fail(report, format!("multiplication differs at classes ({a}, {b})"));
            }
        }
    }
    report.isomorphic = true;
    Ok(report)
}
