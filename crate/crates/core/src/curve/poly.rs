use std::fmt;

use crate::formal::rational::display_rational;
use crate::formal::{Rational, Ring};

/// Dense univariate polynomial in `x`, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly(Vec<Rational>);

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Ring::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c x^n`.
    pub fn monomial(c: Rational, n: usize) -> Self {
        let mut v = vec![Rational::zero(); n + 1];
        v[n] = c;
        Self::new(v)
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn coeff(&self, n: usize) -> Rational {
        self.0.get(n).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        let n = self.0.len().max(rhs.0.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        let n = self.0.len().max(rhs.0.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.0.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer((i as i64).into()))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        crate::formal::horner(&self.0, x)
    }

    /// `self(x0 + t)` as a polynomial in `t`.
    pub fn shift(&self, x0: &Rational) -> Poly {
        let t_plus = Poly::new(vec![x0.clone(), Rational::one()]);
        let mut acc = Poly::zero();
        for c in self.0.iter().rev() {
            acc = acc.mul(&t_plus).add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.0[dd].clone();
        let mut r = self.0.clone();
        let mut q = vec![Rational::zero(); self.0.len().saturating_sub(dd)];
        while r.len() > dd {
            let n = r.len() - 1;
            let c = &r[n] / &lead;
            if !c.is_zero() {
                for (i, di) in d.0.iter().enumerate() {
                    r[n - dd + i] -= &c * di;
                }
            }
            q[n - dd] = c;
            r.pop();
        }
        (Poly::new(q), Poly::new(r))
    }

    /// `self / d` when the division is exact.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(crate::formal::format_rational).collect()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rational::zero();
            let abs = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = abs == Rational::one();
            match i {
                0 => write!(f, "{}", display_rational(&abs))?,
                _ => {
                    if !unit {
                        write!(f, "{}*", display_rational(&abs))?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal::{int, rat};

    #[test]
    fn display() {
        let p = Poly::new(vec![int(-6), int(0), int(1)]);
        assert_eq!(p.to_string(), "x^2 - 6");
        let q = Poly::new(vec![int(0), rat(-1, 2)]);
        assert_eq!(q.to_string(), "-1/2*x");
    }

    #[test]
    fn division_and_shift() {
        let h = Poly::new(vec![int(0), int(-60), int(0), int(4)]);
        let p = h.mul(&Poly::new(vec![int(1), int(2)]));
        assert_eq!(p.exact_div(&h), Some(Poly::new(vec![int(1), int(2)])));
        let s = h.shift(&int(4));
        assert_eq!(s, Poly::new(vec![int(16), int(132), int(48), int(4)]));
    }
}
