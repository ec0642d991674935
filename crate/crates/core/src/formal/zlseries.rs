//! Truncated Laurent series in a local parameter `z` with polynomial
//! dependence on a formal logarithm `L = log z`.

use std::fmt;

use serde_json::{json, Value};

use super::rational::{format_rational, int, Rational};
use super::ring::{Differential, Ring};
use crate::error::{Error, Result};

/// Precision marker for series that are exact (finite sums).
pub const EXACT: i64 = i64::MAX / 4;

fn sat(x: i128) -> i64 {
    x.clamp(-(EXACT as i128), EXACT as i128) as i64
}

/// `sum c[n][j] z^n L^j`, known for every `n <= prec`.
///
/// Stored densely: `rows[j][n - low]`. The representation is normalised so
/// that equal series compare equal: no trailing zero rows, the first and last
/// columns are nonzero, nothing is stored past `prec`.
#[derive(Clone, PartialEq, Eq)]
pub struct ZLSeries {
    low: i64,
    prec: i64,
    rows: Vec<Vec<Rational>>,
}

impl ZLSeries {
    pub fn zero_with_prec(prec: i64) -> Self {
        ZLSeries {
            low: 0,
            prec,
            rows: Vec::new(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    /// `c z^n L^j`, exact.
    pub fn monomial(c: Rational, n: i64, j: usize) -> Self {
        Self::from_terms([(n, j, c)], EXACT)
    }

    /// The local parameter `z`.
    pub fn z() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    /// The formal logarithm `L`.
    pub fn log() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    /// Builds a series from `(n, j, c)` triples; terms past `prec` are dropped.
    pub fn from_terms<I>(terms: I, prec: i64) -> Self
    where
        I: IntoIterator<Item = (i64, usize, Rational)>,
    {
        let terms: Vec<_> = terms
            .into_iter()
            .filter(|(n, _, c)| *n <= prec && !c.is_zero())
            .collect();
        if terms.is_empty() {
            return Self::zero_with_prec(prec);
        }
        let low = terms.iter().map(|t| t.0).min().unwrap();
        let high = terms.iter().map(|t| t.0).max().unwrap();
        let jmax = terms.iter().map(|t| t.1).max().unwrap();
        let width = (high - low + 1) as usize;
        let mut rows = vec![vec![Rational::zero(); width]; jmax + 1];
        for (n, j, c) in terms {
            rows[j][(n - low) as usize] += c;
        }
        let mut s = ZLSeries { low, prec, rows };
        s.normalize();
        s
    }

    /// Power series `sum coeffs[k] z^(low+k)` valid through `prec`.
    pub fn from_coeffs(low: i64, coeffs: Vec<Rational>, prec: i64) -> Self {
        let mut s = ZLSeries {
            low,
            prec,
            rows: vec![coeffs],
        };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if self.prec < EXACT {
            let keep = self.prec - self.low + 1;
            if keep <= 0 {
                self.rows.clear();
            } else {
                for r in &mut self.rows {
                    r.truncate(keep as usize);
                }
            }
        }
        while self.rows.last().is_some_and(|r| r.iter().all(Ring::is_zero)) {
            self.rows.pop();
        }
        if self.rows.is_empty() {
            self.low = 0;
            return;
        }
        let width = self.rows.iter().map(Vec::len).max().unwrap_or(0);
        for r in &mut self.rows {
            r.resize(width, Rational::zero());
        }
        let col_zero = |rows: &Vec<Vec<Rational>>, k: usize| rows.iter().all(|r| r[k].is_zero());
        let mut first = 0;
        while first < width && col_zero(&self.rows, first) {
            first += 1;
        }
        let mut last = width;
        while last > first && col_zero(&self.rows, last - 1) {
            last -= 1;
        }
        if first > 0 || last < width {
            for r in &mut self.rows {
                r.truncate(last);
                r.drain(..first);
            }
            self.low += first as i64;
        }
    }

    /// Highest exponent of `z` through which coefficients are known.
    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec >= EXACT
    }

    /// Lowest exponent carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        if self.rows.is_empty() {
            None
        } else {
            Some(self.low)
        }
    }

    /// Valuation used for precision bookkeeping: a zero series counts as
    /// `O(z^(prec+1))`.
    fn eff_val(&self) -> i64 {
        self.valuation().unwrap_or(sat(self.prec as i128 + 1))
    }

    /// Highest power of `L` present (0 for log-free series).
    pub fn log_degree(&self) -> usize {
        self.rows.len().saturating_sub(1)
    }

    fn high(&self) -> i64 {
        self.low + self.rows.first().map_or(0, Vec::len) as i64 - 1
    }

    /// Coefficient of `z^n L^j`; asking past the valid order is an error.
    pub fn coeff(&self, n: i64, j: usize) -> Result<Rational> {
        if n > self.prec {
            return Err(Error::PrecisionExceeded {
                requested: n,
                valid: self.prec,
            });
        }
        Ok(self.coeff_or_zero(n, j))
    }

    fn coeff_or_zero(&self, n: i64, j: usize) -> Rational {
        if j >= self.rows.len() || n < self.low {
            return Rational::zero();
        }
        self.rows[j]
            .get((n - self.low) as usize)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Nonzero terms as `(n, j, c)`, ordered by `n` then `j`.
    pub fn terms(&self) -> Vec<(i64, usize, Rational)> {
        let mut out = Vec::new();
        if self.rows.is_empty() {
            return out;
        }
        for k in 0..self.rows[0].len() {
            for (j, r) in self.rows.iter().enumerate() {
                if !r[k].is_zero() {
                    out.push((self.low + k as i64, j, r[k].clone()));
                }
            }
        }
        out
    }

    /// Drops everything past `z^order` and lowers the precision accordingly.
    pub fn truncate(&self, order: i64) -> Self {
        let mut s = self.clone();
        s.prec = s.prec.min(order);
        s.normalize();
        s
    }

    /// The part with exponent `< 0` (the polar part), keeping the precision.
    pub fn polar_part(&self) -> Self {
        Self::from_terms(self.terms().into_iter().filter(|t| t.0 < 0), self.prec)
    }

    /// True when both series agree coefficientwise through `z^order`; both
    /// must be valid that far.
    pub fn agrees_through(&self, other: &Self, order: i64) -> bool {
        self.prec >= order && other.prec >= order && self.truncate(order).same_terms(&other.truncate(order))
    }

    fn same_terms(&self, other: &Self) -> bool {
        self.low == other.low && self.rows == other.rows
    }

    /// `d/dz` applied termwise, with `dL/dz = 1/z`.
    pub fn derivative(&self) -> Self {
        let mut terms = Vec::new();
        for (n, j, c) in self.terms() {
            if n != 0 {
                terms.push((n - 1, j, &c * int(n)));
            }
            if j > 0 {
                terms.push((n - 1, j - 1, &c * int(j as i64)));
            }
        }
        let prec = if self.is_exact() { EXACT } else { self.prec - 1 };
        Self::from_terms(terms, prec)
    }

    /// Regularized antiderivative: `dF/dz = f`, the `z^0 L^0` coefficient of
    /// `F` is zero, and `int z^-1 L^j dz = L^(j+1)/(j+1)`.
    pub fn antiderivative(&self) -> Self {
        let mut terms = Vec::new();
        for (n, j, c) in self.terms() {
            if n == -1 {
                terms.push((0, j + 1, &c / int(j as i64 + 1)));
                continue;
            }
            // int z^n L^j = z^(n+1) sum_i (-1)^i j!/(j-i)! L^(j-i) / (n+1)^(i+1)
            let m = int(n + 1);
            let mut falling = Rational::one();
            let mut denom = m.clone();
            for i in 0..=j {
                let sign = if i % 2 == 0 { int(1) } else { int(-1) };
                terms.push((n + 1, j - i, &c * &sign * &falling / &denom));
                falling *= int((j - i) as i64);
                denom *= &m;
            }
        }
        let prec = if self.is_exact() { EXACT } else { self.prec + 1 };
        Self::from_terms(terms, prec)
    }

    /// Multiplicative inverse of a log-free series with nonzero leading
    /// term. `cap` bounds the output order (needed when `self` is exact).
    pub fn inverse(&self, cap: i64) -> Result<Self> {
        if self.log_degree() > 0 {
            return Err(Error::Precondition("inverse of a series involving L".into()));
        }
        let v = self
            .valuation()
            .ok_or_else(|| Error::Precondition("inverse of zero series".into()))?;
        let natural = if self.is_exact() {
            EXACT
        } else {
            sat(self.prec as i128 - 2 * v as i128)
        };
        let prec = natural.min(cap);
        let len = (prec + v + 1).max(0) as usize;
        let a = &self.rows[0];
        let lead = a[0].clone();
        let mut b: Vec<Rational> = Vec::with_capacity(len);
        for k in 0..len {
            let mut s = if k == 0 { Rational::one() } else { Rational::zero() };
            for i in 1..=k.min(a.len() - 1) {
                s -= &a[i] * &b[k - i];
            }
            b.push(s / &lead);
        }
        Ok(Self::from_coeffs(-v, b, prec))
    }

    fn json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms()
            .into_iter()
            .map(|(n, j, c)| json!({"n": n, "j": j, "value": format_rational(&c)}))
            .collect();
        json!({
            "order": if self.is_exact() { Value::Null } else { json!(self.prec) },
            "log_bound": self.log_degree(),
            "terms": terms,
        })
    }
}

impl Ring for ZLSeries {
    fn zero() -> Self {
        Self::zero_with_prec(EXACT)
    }

    fn one() -> Self {
        Self::constant(Rational::one())
    }

    fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    fn plus(&self, rhs: &Self) -> Self {
        let prec = self.prec.min(rhs.prec);
        if self.is_zero() {
            return rhs.truncate(prec);
        }
        if rhs.is_zero() {
            return self.truncate(prec);
        }
        let low = self.low.min(rhs.low);
        let high = self.high().max(rhs.high()).min(prec);
        if high < low {
            return Self::zero_with_prec(prec);
        }
        let width = (high - low + 1) as usize;
        let nrows = self.rows.len().max(rhs.rows.len());
        let mut rows = vec![vec![Rational::zero(); width]; nrows];
        for s in [self, rhs] {
            for (j, r) in s.rows.iter().enumerate() {
                for (k, c) in r.iter().enumerate() {
                    let n = s.low + k as i64;
                    if n <= high && !c.is_zero() {
                        rows[j][(n - low) as usize] += c;
                    }
                }
            }
        }
        let mut out = ZLSeries { low, prec, rows };
        out.normalize();
        out
    }

    fn negated(&self) -> Self {
        let mut s = self.clone();
        for r in &mut s.rows {
            for c in r.iter_mut() {
                *c = -&*c;
            }
        }
        s
    }

    fn times(&self, rhs: &Self) -> Self {
        let prec = sat(self.prec as i128 + rhs.eff_val() as i128).min(sat(rhs.prec as i128 + self.eff_val() as i128));
        if self.is_zero() || rhs.is_zero() {
            return Self::zero_with_prec(prec);
        }
        let low = self.low + rhs.low;
        let high = (self.high() + rhs.high()).min(prec);
        if high < low {
            return Self::zero_with_prec(prec);
        }
        let width = (high - low + 1) as usize;
        let mut rows = vec![vec![Rational::zero(); width]; self.rows.len() + rhs.rows.len() - 1];
        for (ja, ra) in self.rows.iter().enumerate() {
            for (ia, ca) in ra.iter().enumerate() {
                if ca.is_zero() {
                    continue;
                }
                for (jb, rb) in rhs.rows.iter().enumerate() {
                    for (ib, cb) in rb.iter().enumerate() {
                        let k = ia + ib;
                        if k >= width {
                            break;
                        }
                        if !cb.is_zero() {
                            rows[ja + jb][k] += ca * cb;
                        }
                    }
                }
            }
        }
        let mut out = ZLSeries { low, prec, rows };
        out.normalize();
        out
    }

    fn scaled(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero_with_prec(self.prec);
        }
        let mut s = self.clone();
        for r in &mut s.rows {
            for x in r.iter_mut() {
                *x *= c;
            }
        }
        s
    }

    fn from_rational(c: Rational) -> Self {
        Self::constant(c)
    }

    fn to_json(&self) -> Value {
        self.json()
    }
}

impl Differential for ZLSeries {
    fn derivative(&self) -> Self {
        ZLSeries::derivative(self)
    }
}

impl fmt::Debug for ZLSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ZLSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            write!(f, "0")?;
        }
        for (i, (n, j, c)) in terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})", super::rational::display_rational(c))?;
            if *n != 0 {
                write!(f, "*z^{n}")?;
            }
            if *j != 0 {
                write!(f, "*L^{j}")?;
            }
        }
        if !self.is_exact() {
            write!(f, " + O(z^{})", self.prec + 1)?;
        }
        Ok(())
    }
}

/// `I(w_1 ... w_n)` with `dI/dz = w_1 * I(w_2 ... w_n)`, `I() = 1`, and the
/// regularized constant of [`ZLSeries::antiderivative`] at every step.
pub fn iterated_integral(forms: &[ZLSeries]) -> ZLSeries {
    let mut acc = ZLSeries::one();
    for w in forms.iter().rev() {
        acc = w.times(&acc).antiderivative();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal::rational::rat;

    fn poly(c: &[(i64, usize, Rational)]) -> ZLSeries {
        ZLSeries::from_terms(c.iter().cloned(), EXACT)
    }

    #[test]
    fn antiderivative_examples() {
        assert_eq!(ZLSeries::one().antiderivative(), ZLSeries::z());
        let inv_z = ZLSeries::monomial(int(1), -1, 0);
        assert_eq!(inv_z.antiderivative(), ZLSeries::log());
        // z L -> z^2 L / 2 - z^2 / 4
        let zl = ZLSeries::monomial(int(1), 1, 1);
        let expected = poly(&[(2, 1, rat(1, 2)), (2, 0, rat(-1, 4))]);
        assert_eq!(zl.antiderivative(), expected);
        assert_eq!(zl.antiderivative().derivative(), zl);
    }

    #[test]
    fn iterated_integral_examples() {
        let dz = ZLSeries::one();
        let dz_over_z = ZLSeries::monomial(int(1), -1, 0);
        assert_eq!(iterated_integral(std::slice::from_ref(&dz)), ZLSeries::z());
        assert_eq!(iterated_integral(&[dz_over_z.clone(), dz.clone()]), ZLSeries::z());
        // (dz, dz/z) -> zL - z
        let expected = poly(&[(1, 1, int(1)), (1, 0, int(-1))]);
        assert_eq!(iterated_integral(&[dz, dz_over_z]), expected);
        assert_eq!(iterated_integral(&[]), ZLSeries::one());
    }

    #[test]
    fn precision_bookkeeping() {
        let f = ZLSeries::from_coeffs(0, vec![int(1), int(2), int(3)], 2);
        let g = ZLSeries::from_coeffs(-1, vec![int(1)], 5);
        let p = f.times(&g);
        assert_eq!(p.prec(), 1);
        assert!(p.coeff(2, 0).is_err());
        assert_eq!(p.coeff(1, 0).unwrap(), int(3));
        assert_eq!(f.antiderivative().prec(), 3);
        assert_eq!(f.plus(&ZLSeries::zero()).prec(), 2);
    }

    #[test]
    fn inverse_of_laurent() {
        // (z^-2 + z^2)^-1 = z^2 - z^6 + z^10 - ...
        let f = poly(&[(-2, 0, int(1)), (2, 0, int(1))]);
        let g = f.inverse(12).unwrap();
        assert_eq!(g.coeff(6, 0).unwrap(), int(-1));
        assert_eq!(g.coeff(10, 0).unwrap(), int(1));
        assert_eq!(f.times(&g).prec(), 10);
        assert!(f.times(&g).agrees_through(&ZLSeries::one(), 10));
    }
}
