use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ring::{Differential, Ring};
use crate::error::{Error, Result};

/// Exact rational number in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats as `p/q` with the sign on the numerator, e.g. `-3/4`, `0/1`, `5/1`.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `p`, `p/q`, `+p/q` or `-p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let err = || Error::Parse {
        what: "rational",
        input: s.to_string(),
    };
    let t = s.trim();
    let t = t.strip_prefix('+').unwrap_or(t);
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| err())?;
    let d: BigInt = d.parse().map_err(|_| err())?;
    if d.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(n, d))
}

/// `n!` as a rational.
pub fn factorial(n: usize) -> Rational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Rational::from_integer(acc)
}

pub fn binomial(n: usize, k: usize) -> Rational {
    if k > n {
        return <Rational as Zero>::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Human-readable coefficient for polynomial display: `3`, `-1/2`.
pub(crate) fn display_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn scaled(&self, c: &Rational) -> Self {
        self * c
    }
    fn from_rational(c: Rational) -> Self {
        c
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(format_rational(self))
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
}

impl Differential for Rational {
    fn derivative(&self) -> Self {
        Zero::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("+5").unwrap(), int(5));
        assert_eq!(format_rational(&int(0)), "0/1");
        assert_eq!(format_rational(&rat(-3, 4)), "-3/4");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 2), int(15));
        assert_eq!(binomial(2, 3), int(0));
    }
}
