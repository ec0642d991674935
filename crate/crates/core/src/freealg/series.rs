use std::fmt;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::formal::{rat, Differential, Ring};
use crate::par;

/// A word over `{A, B}`: `len` letters, the first one in the most significant
/// bit of `bits`, with `0 = A` and `1 = B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    pub len: usize,
    pub bits: u64,
}

impl Word {
    pub const EMPTY: Word = Word { len: 0, bits: 0 };

    pub fn new(len: usize, bits: u64) -> Self {
        debug_assert!(len >= 64 || bits >> len == 0);
        Word { len, bits }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut bits = 0u64;
        for ch in s.chars() {
            bits <<= 1;
            match ch {
                'A' => {}
                'B' => bits |= 1,
                _ => {
                    return Err(Error::Parse {
                        what: "word",
                        input: s.into(),
                    })
                }
            }
        }
        Ok(Word { len: s.len(), bits })
    }

    /// Dense index: all shorter words first, then lexicographic with `A < B`.
    pub fn index(self) -> usize {
        (1usize << self.len) - 1 + self.bits as usize
    }

    pub fn from_index(i: usize) -> Self {
        let len = (usize::BITS - 1 - (i + 1).leading_zeros()) as usize;
        Word {
            len,
            bits: (i + 1 - (1 << len)) as u64,
        }
    }

    /// Letter `k` from the left: `false` for `A`, `true` for `B`.
    pub fn letter(self, k: usize) -> bool {
        (self.bits >> (self.len - 1 - k)) & 1 == 1
    }

    pub fn count_b(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn count_a(self) -> usize {
        self.len - self.count_b()
    }

    /// Splits after the first `k` letters.
    pub fn split(self, k: usize) -> (Word, Word) {
        let rest = self.len - k;
        let mask = if rest == 0 { 0 } else { (1u64 << rest) - 1 };
        (Word::new(k, self.bits >> rest), Word::new(rest, self.bits & mask))
    }

    pub fn concat(self, other: Word) -> Word {
        Word::new(self.len + other.len, (self.bits << other.len) | other.bits)
    }

    pub fn to_letters(self) -> String {
        (0..self.len).map(|k| if self.letter(k) { 'B' } else { 'A' }).collect()
    }

    /// Number of words of length `<= degree`.
    pub fn count(degree: usize) -> usize {
        (1usize << (degree + 1)) - 1
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len == 0 {
            write!(f, "1")
        } else {
            write!(f, "{}", self.to_letters())
        }
    }
}

/// Noncommutative series over words in `A, B` of length `<= degree`.
#[derive(Clone, PartialEq)]
pub struct NCSeries<R> {
    degree: usize,
    coeffs: Vec<R>,
}

impl<R: Ring> NCSeries<R> {
    pub fn zero(degree: usize) -> Self {
        NCSeries {
            degree,
            coeffs: vec![R::zero(); Word::count(degree)],
        }
    }

    pub fn one(degree: usize) -> Self {
        Self::constant(degree, R::one())
    }

    pub fn constant(degree: usize, c: R) -> Self {
        let mut s = Self::zero(degree);
        s.coeffs[0] = c;
        s
    }

    /// `c * w`.
    pub fn monomial(degree: usize, w: Word, c: R) -> Self {
        let mut s = Self::zero(degree);
        s.set(w, c);
        s
    }

    pub fn letter_a(degree: usize) -> Self {
        Self::monomial(degree, Word::new(1, 0), R::one())
    }

    pub fn letter_b(degree: usize) -> Self {
        Self::monomial(degree, Word::new(1, 1), R::one())
    }

    pub fn from_fn(degree: usize, f: impl Fn(Word) -> R + Sync + Send) -> Self {
        NCSeries {
            degree,
            coeffs: par::map_range(Word::count(degree), |i| f(Word::from_index(i))),
        }
    }

    /// Builds a series from `(word, coefficient)` pairs, summing repeats.
    pub fn from_terms<'a>(degree: usize, terms: impl IntoIterator<Item = (&'a str, R)>) -> Result<Self> {
        let mut s = Self::zero(degree);
        for (w, c) in terms {
            let w = Word::parse(w)?;
            s.add_at(w, &c);
        }
        Ok(s)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn get(&self, w: Word) -> R {
        if w.len > self.degree {
            R::zero()
        } else {
            self.coeffs[w.index()].clone()
        }
    }

    pub fn coeff_ref(&self, w: Word) -> &R {
        &self.coeffs[w.index()]
    }

    pub fn coeff(&self, w: &str) -> Result<R> {
        Ok(self.get(Word::parse(w)?))
    }

    /// Sets a coefficient; words past the degree bound are dropped.
    pub fn set(&mut self, w: Word, c: R) {
        if w.len <= self.degree {
            self.coeffs[w.index()] = c;
        }
    }

    pub fn add_at(&mut self, w: Word, c: &R) {
        if w.len <= self.degree && !c.is_zero() {
            let i = w.index();
            self.coeffs[i] = self.coeffs[i].plus(c);
        }
    }

    pub fn augmentation(&self) -> &R {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Ring::is_zero)
    }

    /// Nonzero terms in word order.
    pub fn terms(&self) -> impl Iterator<Item = (Word, &R)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (Word::from_index(i), c))
    }

    /// Part of exact length `n`.
    pub fn homogeneous(&self, n: usize) -> Self {
        let mut s = Self::zero(self.degree);
        if n <= self.degree {
            let lo = Word::new(n, 0).index();
            let hi = lo + (1 << n);
            s.coeffs[lo..hi].clone_from_slice(&self.coeffs[lo..hi]);
        }
        s
    }

    /// Same series with a different degree bound.
    pub fn with_degree(&self, degree: usize) -> Self {
        Self::from_fn(degree, |w| self.get(w))
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S + Sync + Send) -> NCSeries<S> {
        NCSeries {
            degree: self.degree,
            coeffs: par::map(&self.coeffs, f),
        }
    }

    pub fn try_map<S: Ring>(&self, f: impl Fn(&R) -> Result<S> + Sync + Send) -> Result<NCSeries<S>> {
        Ok(NCSeries {
            degree: self.degree,
            coeffs: par::map(&self.coeffs, f).into_iter().collect::<Result<_>>()?,
        })
    }

    fn zip(&self, other: &Self, f: impl Fn(&R, &R) -> R) -> Self {
        let degree = self.degree.min(other.degree);
        let n = Word::count(degree);
        NCSeries {
            degree,
            coeffs: (0..n).map(|i| f(&self.coeffs[i], &other.coeffs[i])).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.plus(b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.minus(b))
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.negated())
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|x| x.times(c))
    }

    pub fn scaled(&self, c: &crate::formal::Rational) -> Self {
        self.map(|x| x.scaled(c))
    }

    /// Concatenation product, truncated at the smaller degree bound.
    pub fn mul(&self, other: &Self) -> Self {
        let degree = self.degree.min(other.degree);
        Self::from_fn(degree, |w| {
            let mut acc = R::zero();
            for k in 0..=w.len {
                let (u, v) = w.split(k);
                let a = self.coeff_ref(u);
                if a.is_zero() {
                    continue;
                }
                let b = other.coeff_ref(v);
                if !b.is_zero() {
                    acc = acc.plus(&a.times(b));
                }
            }
            acc
        })
    }

    fn require_augmentation(&self, one: bool) -> Result<()> {
        let a = self.augmentation();
        let ok = if one { a.minus(&R::one()).is_zero() } else { a.is_zero() };
        if ok {
            Ok(())
        } else {
            Err(Error::Augmentation {
                expected: if one { "1" } else { "0" },
                found: format!("{a:?}"),
            })
        }
    }

    /// `exp(S)` for `S` with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        self.require_augmentation(false)?;
        let mut acc = Self::one(self.degree);
        let mut power = Self::one(self.degree);
        for k in 1..=self.degree {
            power = power.mul(self).scaled(&rat(1, k as i64));
            acc = acc.add(&power);
        }
        Ok(acc)
    }

    /// `log(S)` for `S` with constant term 1.
    pub fn log(&self) -> Result<Self> {
        self.log_with(|c| c)
    }

    /// [`log`](Self::log) with `post` applied to every coefficient of each
    /// power, e.g. to cap the precision of series coefficients.
    pub fn log_with(&self, post: impl Fn(R) -> R + Sync + Send) -> Result<Self> {
        self.require_augmentation(true)?;
        let n = self.sub(&Self::one(self.degree)).map(|c| post(c.clone()));
        let mut acc = Self::zero(self.degree);
        let mut power = Self::one(self.degree);
        for k in 1..=self.degree {
            power = power.mul(&n).map(|c| post(c.clone()));
            let c = if k % 2 == 1 {
                rat(1, k as i64)
            } else {
                rat(-1, k as i64)
            };
            acc = acc.add(&power.scaled(&c));
        }
        Ok(acc)
    }

    /// `S^-1` for `S` with constant term 1.
    pub fn inverse(&self) -> Result<Self> {
        self.require_augmentation(true)?;
        let n = self.sub(&Self::one(self.degree)).neg();
        let mut acc = Self::one(self.degree);
        let mut power = Self::one(self.degree);
        for _ in 1..=self.degree {
            power = power.mul(&n);
            acc = acc.add(&power);
        }
        Ok(acc)
    }

    /// The algebra endomorphism `A -> theta_a`, `B -> theta_b`, applied to `self`.
    /// Both images must have zero constant term.
    pub fn substitute(&self, theta_a: &Self, theta_b: &Self) -> Result<Self> {
        theta_a.require_augmentation(false)?;
        theta_b.require_augmentation(false)?;
        let d = self.degree.min(theta_a.degree).min(theta_b.degree);
        // images[w] = theta(w), built from theta(first letter) * theta(rest)
        let mut images: Vec<Self> = Vec::with_capacity(Word::count(d));
        images.push(Self::one(d));
        let ta = theta_a.with_degree(d);
        let tb = theta_b.with_degree(d);
        for n in 1..=d {
            let layer = par::map_range(1 << n, |bits| {
                let w = Word::new(n, bits as u64);
                let (first, rest) = w.split(1);
                let head = if first.bits == 1 { &tb } else { &ta };
                head.mul(&images[rest.index()])
            });
            images.extend(layer);
        }
        let mut acc = Self::zero(d);
        for (i, img) in images.iter().enumerate() {
            let c = &self.coeffs[i];
            if !c.is_zero() {
                acc = acc.add(&img.scale(c));
            }
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (w, c) in self.terms() {
            m.insert(w.to_string(), c.to_json());
        }
        json!({"degree": self.degree, "coeffs": m})
    }
}

impl<R: Differential> NCSeries<R> {
    /// Coefficientwise derivative.
    pub fn derivative(&self) -> Self {
        self.map(|c| c.derivative())
    }
}

impl<R: Ring> fmt::Debug for NCSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (w, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c:?}) {w}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal::{int, Rational};

    type S = NCSeries<Rational>;

    #[test]
    fn word_indexing() {
        for i in 0..Word::count(6) {
            assert_eq!(Word::from_index(i).index(), i);
        }
        let w = Word::parse("BAB").unwrap();
        assert_eq!(w.to_string(), "BAB");
        let (u, v) = w.split(1);
        assert_eq!((u.to_string(), v.to_string()), ("B".into(), "AB".into()));
        assert_eq!(u.concat(v), w);
        assert_eq!(Word::EMPTY.to_string(), "1");
    }

    #[test]
    fn exp_log() {
        let a = S::letter_a(5);
        let b = S::letter_b(5);
        assert_eq!(a.exp().unwrap().log().unwrap(), a);
        let g = a.exp().unwrap().mul(&b.exp().unwrap());
        let z = g.log().unwrap();
        assert_eq!(z.coeff("AB").unwrap(), rat(1, 2));
        assert_eq!(z.coeff("BA").unwrap(), rat(-1, 2));
        assert_eq!(z.coeff("AA").unwrap(), int(0));
        assert_eq!(g.mul(&g.inverse().unwrap()), S::one(5));
        assert!(S::one(3).exp().is_err());
        assert!(a.log().is_err());
    }

    #[test]
    fn substitution_is_multiplicative() {
        let d = 4;
        let ta = S::from_terms(d, [("A", int(1)), ("AB", int(2))]).unwrap();
        let tb = S::from_terms(d, [("B", int(1)), ("BB", rat(1, 3))]).unwrap();
        let x = S::from_terms(d, [("A", int(1)), ("BA", int(5))]).unwrap();
        let y = S::from_terms(d, [("B", int(2)), ("AB", int(-1))]).unwrap();
        let lhs = x.mul(&y).substitute(&ta, &tb).unwrap();
        let rhs = x.substitute(&ta, &tb).unwrap().mul(&y.substitute(&ta, &tb).unwrap());
        assert_eq!(lhs, rhs);
    }
}
