use crate::ring::Ring;

use super::{Coefficients, Expression};

/// Expressions over ring coefficients in a fixed list of variables, as a
/// ring. Results of its operations have like terms combined.
#[derive(Debug, Clone)]
pub struct ExpressionRing<'a, C> {
    coeffs: &'a C,
    vars: Vec<String>,
}

impl<'a, C: Coefficients> ExpressionRing<'a, C> {
    /// `None` when the coefficients have no negation.
    pub fn new(coeffs: &'a C, vars: Vec<String>) -> Option<Self> {
        coeffs.has_negation().then_some(ExpressionRing { coeffs, vars })
    }

    pub fn coefficients(&self) -> &C {
        self.coeffs
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }
}

impl<C: Coefficients> Ring for ExpressionRing<'_, C> {
    type Elem = Expression<C::Elem>;

    fn zero(&self) -> Self::Elem {
        Expression::zero(self.vars.clone())
    }
    fn one(&self) -> Self::Elem {
        Expression::constant(self.coeffs, self.vars.clone(), self.coeffs.one())
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.add(self.coeffs, b).expect("expressions over the same variables").combine_like_terms(self.coeffs)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.mul(self.coeffs, b).expect("expressions over the same variables").combine_like_terms(self.coeffs)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.neg(self.coeffs).expect("ring coefficients")
    }
    fn label(&self, a: &Self::Elem) -> String {
        a.to_text(self.coeffs)
    }
}
