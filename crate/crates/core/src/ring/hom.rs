use super::{FiniteRing, RingError};

/// A unital ring homomorphism between finite rings, as an image table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingHom {
    source: u64,
    target: u64,
    image: Vec<usize>,
    target_size: usize,
}

impl RingHom {
    /// Checks addition, multiplication, zero and one exhaustively.
    pub fn new(source: &FiniteRing, target: &FiniteRing, image: Vec<usize>) -> Result<Self, RingError> {
        if image.len() != source.size() {
            return Err(RingError::Format(format!(
                "image table has {} entries, source has {}",
                image.len(),
                source.size()
            )));
        }
        for &y in &image {
            target.check_index(y)?;
        }
        let fail = |law, witness: Vec<usize>| Err(RingError::Law { law, witness });
        if image[source.zero_index()] != target.zero_index() {
            return fail("hom preserves zero", vec![source.zero_index()]);
        }
        if image[source.one_index()] != target.one_index() {
            return fail("hom preserves one", vec![source.one_index()]);
        }
        for a in 0..source.size() {
            for b in 0..source.size() {
                if image[source.add_idx(a, b)] != target.add_idx(image[a], image[b]) {
                    return fail("hom preserves addition", vec![a, b]);
                }
                if image[source.mul_idx(a, b)] != target.mul_idx(image[a], image[b]) {
                    return fail("hom preserves multiplication", vec![a, b]);
                }
            }
        }
        Ok(Self::new_unchecked(source, target, image))
    }

    pub(crate) fn new_unchecked(source: &FiniteRing, target: &FiniteRing, image: Vec<usize>) -> Self {
        RingHom {
            source: source.id(),
            target: target.id(),
            image,
            target_size: target.size(),
        }
    }

    pub fn identity(r: &FiniteRing) -> Self {
        Self::new_unchecked(r, r, (0..r.size()).collect())
    }

    pub fn source_id(&self) -> u64 {
        self.source
    }

    pub fn target_id(&self) -> u64 {
        self.target
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, x: usize) -> Result<usize, RingError> {
        self.image.get(x).copied().ok_or(RingError::OutOfRange {
            index: x,
            size: self.image.len(),
        })
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &RingHom) -> Result<RingHom, RingError> {
        if self.target != other.source {
            return Err(RingError::ParentMismatch);
        }
        Ok(RingHom {
            source: self.source,
            target: other.target,
            image: self.image.iter().map(|&y| other.image[y]).collect(),
            target_size: other.target_size,
        })
    }
}
