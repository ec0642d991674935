use std::fmt::Debug;

use super::Rational;

/// Commutative coefficient ring used by the series, operator and Lie-algebra
/// layers. Implemented for [`Rational`], [`super::ZLSeries`] and
/// [`crate::curve::CurveFn`].
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn scaled(&self, c: &Rational) -> Self;
    fn from_rational(c: Rational) -> Self;
    fn to_json(&self) -> serde_json::Value;

    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negated())
    }

    fn add_assign_ref(&mut self, rhs: &Self) {
        *self = self.plus(rhs);
    }

    fn pow(&self, n: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.times(self);
        }
        acc
    }
}

/// A ring with a derivation: `d/dz` for local series, `dF/alpha` for curve
/// functions, and zero on constants.
pub trait Differential: Ring {
    fn derivative(&self) -> Self;
}

/// `sum_i coeffs[i] * x^i` evaluated by Horner's rule.
pub fn horner<R: Ring>(coeffs: &[Rational], x: &R) -> R {
    let mut acc = R::zero();
    for c in coeffs.iter().rev() {
        acc = acc.times(x).plus(&R::from_rational(c.clone()));
    }
    acc
}
