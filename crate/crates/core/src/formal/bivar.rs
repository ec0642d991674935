//! Bivariate power series in commuting variables `U`, `V`, truncated at a
//! total degree.

use super::rational::{format_rational, Rational};
use super::ring::Ring;
use crate::error::Residual;

fn tri(i: usize, j: usize) -> usize {
    let t = i + j;
    t * (t + 1) / 2 + j
}

/// `sum c[i,j] U^i V^j` for `i + j <= degree`.
#[derive(Clone, Debug, PartialEq)]
pub struct BivarSeries<R> {
    degree: usize,
    coeffs: Vec<R>,
}

impl<R: Ring> BivarSeries<R> {
    pub fn zero(degree: usize) -> Self {
        BivarSeries {
            degree,
            coeffs: vec![R::zero(); tri(0, degree + 1)],
        }
    }

    pub fn one(degree: usize) -> Self {
        let mut s = Self::zero(degree);
        s.coeffs[0] = R::one();
        s
    }

    /// Builds the series from `f(i, j)` for every monomial within degree.
    pub fn from_fn(degree: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut s = Self::zero(degree);
        for t in 0..=degree {
            for j in 0..=t {
                s.coeffs[tri(t - j, j)] = f(t - j, j);
            }
        }
        s
    }

    /// `f(a U + b V)` for a univariate series `f` given by its coefficients.
    pub fn from_univariate_linear(f: &[R], a: &Rational, b: &Rational, degree: usize) -> Self {
        let lin = Self::from_fn(degree, |i, j| match (i, j) {
            (1, 0) => R::from_rational(a.clone()),
            (0, 1) => R::from_rational(b.clone()),
            _ => R::zero(),
        });
        let mut acc = Self::zero(degree);
        let mut power = Self::one(degree);
        for (n, c) in f.iter().enumerate().take(degree + 1) {
            if n > 0 {
                power = power.mul(&lin);
            }
            acc = acc.add(&power.scale_ring(c));
        }
        acc
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficient of `U^i V^j`; zero beyond the truncation.
    pub fn coeff(&self, i: usize, j: usize) -> R {
        if i + j > self.degree {
            R::zero()
        } else {
            self.coeffs[tri(i, j)].clone()
        }
    }

    pub fn set(&mut self, i: usize, j: usize, c: R) {
        assert!(i + j <= self.degree, "monomial beyond truncation");
        self.coeffs[tri(i, j)] = c;
    }

    pub fn truncate(&self, degree: usize) -> Self {
        Self::from_fn(degree.min(self.degree), |i, j| self.coeff(i, j))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let d = self.degree.min(rhs.degree);
        Self::from_fn(d, |i, j| self.coeff(i, j).plus(&rhs.coeff(i, j)))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let d = self.degree.min(rhs.degree);
        Self::from_fn(d, |i, j| self.coeff(i, j).minus(&rhs.coeff(i, j)))
    }

    pub fn scale_ring(&self, c: &R) -> Self {
        BivarSeries {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|x| x.times(c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let d = self.degree.min(rhs.degree);
        let mut out = Self::zero(d);
        for t1 in 0..=d {
            for j1 in 0..=t1 {
                let a = &self.coeffs[tri(t1 - j1, j1)];
                if a.is_zero() {
                    continue;
                }
                for t2 in 0..=(d - t1) {
                    for j2 in 0..=t2 {
                        let b = &rhs.coeffs[tri(t2 - j2, j2)];
                        if !b.is_zero() {
                            let k = tri(t1 - j1 + t2 - j2, j1 + j2);
                            out.coeffs[k] = out.coeffs[k].plus(&a.times(b));
                        }
                    }
                }
            }
        }
        out
    }

    /// `self(aU, bV)`.
    pub fn rescale(&self, a: &R, b: &R) -> Self {
        Self::from_fn(self.degree, |i, j| self.coeff(i, j).times(&a.pow(i)).times(&b.pow(j)))
    }

    /// Exact quotient by `aU + bV`. The result has degree one less. When the
    /// division is not exact the monomials of the remainder are returned.
    pub fn div_linear(&self, a: &Rational, b: &Rational) -> Result<Self, Vec<(usize, usize, R)>> {
        assert!(!(num_traits::Zero::is_zero(a) && num_traits::Zero::is_zero(b)));
        let d = self.degree.saturating_sub(1);
        let mut q = Self::zero(d);
        let mut residual = Vec::new();
        if !self.coeff(0, 0).is_zero() {
            residual.push((0, 0, self.coeff(0, 0)));
        }
        let br = R::from_rational(b.clone());
        if self.degree == 0 {
            return if residual.is_empty() { Ok(q) } else { Err(residual) };
        }
        // n[i,j] = a q[i-1,j] + b q[i,j-1] on each homogeneous degree t+1.
        for t in 0..=d {
            if !num_traits::Zero::is_zero(a) {
                let inv = R::from_rational(a.recip());
                for i in (1..=t + 1).rev() {
                    let j = t + 1 - i;
                    let mut n = self.coeff(i, j);
                    if j >= 1 {
                        n = n.minus(&br.times(&q.coeff(i, j - 1)));
                    }
                    q.set(i - 1, j, n.times(&inv));
                }
                let r = self.coeff(0, t + 1).minus(&br.times(&q.coeff(0, t)));
                if !r.is_zero() {
                    residual.push((0, t + 1, r));
                }
            } else {
                let inv = R::from_rational(b.recip());
                for j in 1..=t + 1 {
                    let i = t + 1 - j;
                    q.set(i, j - 1, self.coeff(i, j).times(&inv));
                }
                let r = self.coeff(t + 1, 0);
                if !r.is_zero() {
                    residual.push((t + 1, 0, r));
                }
            }
        }
        if residual.is_empty() {
            Ok(q)
        } else {
            Err(residual)
        }
    }

    /// Nonzero monomials `(i, j, c)` in graded order.
    pub fn terms(&self) -> Vec<(usize, usize, R)> {
        let mut out = Vec::new();
        for t in 0..=self.degree {
            for j in 0..=t {
                let c = &self.coeffs[tri(t - j, j)];
                if !c.is_zero() {
                    out.push((t - j, j, c.clone()));
                }
            }
        }
        out
    }
}

impl BivarSeries<Rational> {
    pub(crate) fn residual_report(res: Vec<(usize, usize, Rational)>) -> Vec<Residual> {
        res.into_iter().map(|(i, j, c)| (i, j, format_rational(&c))).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal::rational::{int, rat};

    #[test]
    fn division_round_trip() {
        let d = 6;
        let f = BivarSeries::from_fn(d - 1, |i, j| rat(i as i64 + 1, j as i64 + 2));
        let lin = BivarSeries::from_fn(d, |i, j| match (i, j) {
            (1, 0) => int(3),
            (0, 1) => int(-2),
            _ => int(0),
        });
        let n = BivarSeries::from_fn(d, |i, j| f.coeff(i, j)).mul(&lin);
        assert_eq!(n.div_linear(&int(3), &int(-2)).unwrap(), f);
        assert!(n.div_linear(&int(0), &int(1)).is_err());
    }

    #[test]
    fn univariate_substitution() {
        // (U + V)^2 from t^2
        let f = vec![int(0), int(0), int(1)];
        let s = BivarSeries::from_univariate_linear(&f, &int(1), &int(1), 3);
        assert_eq!(s.coeff(1, 1), int(2));
        assert_eq!(s.coeff(2, 0), int(1));
        assert_eq!(s.coeff(0, 1), int(0));
    }
}
