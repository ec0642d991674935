use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::formal::Ring;

/// Index of `sigma_{r,s}` among the sigma basis vectors, ordered by weight
/// `r + s + 2` and then by `r`.
pub fn sigma_slot(r: usize, s: usize) -> usize {
    let t = r + s;
    t * (t + 1) / 2 + r
}

/// Number of sigma basis vectors of weight `<= depth`.
pub fn sigma_count(depth: usize) -> usize {
    if depth < 2 {
        0
    } else {
        let n = depth - 1;
        n * (n + 1) / 2
    }
}

/// Basis of the truncated algebra: `A`, `B`, then `sigma_{r,s}` with
/// `r + s + 2 <= depth`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    A,
    B,
    Sigma(usize, usize),
}

impl Basis {
    pub fn weight(self) -> usize {
        match self {
            Basis::A | Basis::B => 1,
            Basis::Sigma(r, s) => r + s + 2,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Basis::A => 0,
            Basis::B => 1,
            Basis::Sigma(r, s) => 2 + sigma_slot(r, s),
        }
    }

    pub fn from_index(i: usize) -> Basis {
        match i {
            0 => Basis::A,
            1 => Basis::B,
            _ => {
                let k = i - 2;
                let mut t = 0;
                while (t + 1) * (t + 2) / 2 <= k {
                    t += 1;
                }
                let r = k - t * (t + 1) / 2;
                Basis::Sigma(r, t - r)
            }
        }
    }

    pub fn dim(depth: usize) -> usize {
        2 + sigma_count(depth)
    }

    /// `[letter, self]` for a generator `letter` in `{A, B}`, as a signed
    /// basis vector; `None` when the bracket vanishes.
    pub fn ad_letter(letter: Basis, target: Basis) -> Option<(Basis, i64)> {
        match (letter, target) {
            (Basis::A, Basis::B) => Some((Basis::Sigma(0, 0), 1)),
            (Basis::B, Basis::A) => Some((Basis::Sigma(0, 0), -1)),
            (Basis::A, Basis::Sigma(r, s)) => Some((Basis::Sigma(r, s + 1), 1)),
            (Basis::B, Basis::Sigma(r, s)) => Some((Basis::Sigma(r + 1, s), 1)),
            _ => None,
        }
    }

    pub fn label(self) -> String {
        match self {
            Basis::A => "A".into(),
            Basis::B => "B".into(),
            Basis::Sigma(r, s) => format!("sigma_{r}_{s}"),
        }
    }
}

/// Element of the metabelian Lie algebra on `A, B`, truncated at weight `depth`.
#[derive(Clone, PartialEq)]
pub struct MetabElt<R> {
    depth: usize,
    coeffs: Vec<R>,
}

impl<R: Ring> MetabElt<R> {
    pub fn zero(depth: usize) -> Self {
        MetabElt {
            depth,
            coeffs: vec![R::zero(); Basis::dim(depth)],
        }
    }

    pub fn basis(depth: usize, b: Basis) -> Self {
        let mut e = Self::zero(depth);
        e.set(b, R::one());
        e
    }

    /// `a A + b B`.
    pub fn generators(depth: usize, a: R, b: R) -> Self {
        let mut e = Self::zero(depth);
        e.coeffs[0] = a;
        e.coeffs[1] = b;
        e
    }

    pub fn from_coeffs(depth: usize, coeffs: Vec<R>) -> Self {
        assert_eq!(coeffs.len(), Basis::dim(depth));
        MetabElt { depth, coeffs }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn get(&self, b: Basis) -> R {
        if b.weight() > self.depth {
            R::zero()
        } else {
            self.coeffs[b.index()].clone()
        }
    }

    pub fn a(&self) -> R {
        self.coeffs[0].clone()
    }

    pub fn b(&self) -> R {
        self.coeffs[1].clone()
    }

    pub fn sigma(&self, r: usize, s: usize) -> R {
        self.get(Basis::Sigma(r, s))
    }

    /// Sets a coefficient; anything above the truncation is dropped.
    pub fn set(&mut self, b: Basis, c: R) {
        if b.weight() <= self.depth {
            self.coeffs[b.index()] = c;
        }
    }

    pub fn add_at(&mut self, b: Basis, c: &R) {
        if b.weight() <= self.depth && !c.is_zero() {
            let i = b.index();
            self.coeffs[i] = self.coeffs[i].plus(c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Ring::is_zero)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.depth != other.depth {
            return Err(Error::DepthMismatch {
                left: self.depth,
                right: other.depth,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(MetabElt {
            depth: self.depth,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.plus(b)).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.negated())
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|x| x.times(c))
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> MetabElt<S> {
        MetabElt {
            depth: self.depth,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// `ad_A` (`letter = A`) or `ad_B` applied to `self`, i.e. a shift of the
    /// sigma coordinates plus the `[A, B]` term.
    pub fn ad_letter(&self, letter: Basis) -> Self {
        let mut out = Self::zero(self.depth);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if let Some((b, sign)) = Basis::ad_letter(letter, Basis::from_index(i)) {
                let v = if sign < 0 { c.negated() } else { c.clone() };
                out.add_at(b, &v);
            }
        }
        out
    }

    /// Lie bracket, bilinear in the rules `[A,B] = sigma_00`,
    /// `[A, sigma_rs] = sigma_{r,s+1}`, `[B, sigma_rs] = sigma_{r+1,s}` and
    /// `[sigma, sigma'] = 0`, dropping weights above the truncation.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        // [u, v] = uA [A, v] + uB [B, v] - vA [A, u_sigma] - vB [B, u_sigma]
        let mut u_sigma = self.clone();
        u_sigma.coeffs[0] = R::zero();
        u_sigma.coeffs[1] = R::zero();
        let mut out = other.ad_letter(Basis::A).scale(&self.a());
        for (x, y) in [
            (other.ad_letter(Basis::B), self.b()),
            (u_sigma.ad_letter(Basis::A), other.a().negated()),
            (u_sigma.ad_letter(Basis::B), other.b().negated()),
        ] {
            if !y.is_zero() {
                out = out.add(&x.scale(&y))?;
            }
        }
        Ok(out)
    }

    /// Same element seen at another depth: zero-extended or truncated.
    pub fn with_depth(&self, depth: usize) -> Self {
        let mut out = Self::zero(depth);
        for (i, c) in self.coeffs.iter().enumerate() {
            out.set(Basis::from_index(i), c.clone());
        }
        out
    }

    /// Nonzero coefficients with their basis labels, in basis order.
    pub fn terms(&self) -> Vec<(Basis, R)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (Basis::from_index(i), c.clone()))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let sigma: Vec<Value> = (2..self.coeffs.len())
            .filter(|&i| !self.coeffs[i].is_zero())
            .map(|i| match Basis::from_index(i) {
                Basis::Sigma(r, s) => json!({"r": r, "s": s, "value": self.coeffs[i].to_json()}),
                _ => unreachable!(),
            })
            .collect();
        json!({
            "depth": self.depth,
            "A": self.coeffs[0].to_json(),
            "B": self.coeffs[1].to_json(),
            "sigma": sigma,
        })
    }
}

impl<R: Ring> fmt::Debug for MetabElt<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (b, c)) in terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c:?}) {}", b.label())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal::{int, Rational};

    type E = MetabElt<Rational>;

    #[test]
    fn basis_indexing_round_trip() {
        for i in 0..Basis::dim(9) {
            assert_eq!(Basis::from_index(i).index(), i);
        }
        assert_eq!(Basis::dim(4), 2 + 6);
    }

    #[test]
    fn bracket_rules() {
        let a = E::basis(5, Basis::A);
        let b = E::basis(5, Basis::B);
        let s00 = E::basis(5, Basis::Sigma(0, 0));
        let s10 = E::basis(5, Basis::Sigma(1, 0));
        assert_eq!(a.bracket(&b).unwrap(), s00);
        assert_eq!(b.bracket(&a).unwrap(), s00.neg());
        assert_eq!(b.bracket(&s00).unwrap(), s10);
        assert_eq!(s00.bracket(&b).unwrap(), s10.neg());
        assert!(s00.bracket(&s10).unwrap().is_zero());
        assert!(a.bracket(&E::zero(4)).is_err());
        let u = E::generators(5, int(2), int(3)).add(&s10).unwrap();
        assert!(u.bracket(&u).unwrap().is_zero());
    }
}
