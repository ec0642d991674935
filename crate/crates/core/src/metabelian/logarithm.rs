//! Logarithm of a grouplike operator `exp(ad h)` from its span coefficients.

use std::collections::BTreeMap;

use serde::Serialize;

use super::ops::SpanCoeffs;
use crate::error::{Error, Result};
use crate::formal::{bernoulli, binomial, factorial, int, kernel_t, BivarSeries, Rational, Ring};

/// `1 / (n * a! * b!)` as a ring element.
fn weight(n: usize, a: usize, b: usize) -> Rational {
    (int(n as i64) * factorial(a) * factorial(b)).recip()
}

/// Recovers `h_{r,s}` for `r + s <= degree` from the span coefficients of
/// `exp(ad h)`, where `h = hA A + hB B + sum h_{r,s} sigma_{r,s}`.
///
/// Solves
/// `H_{r,s} = hB^(r+1) hA^(s+1) / ((r+s+2) r! (s+1)!)
///          + sum_{u<=r, v<=s} h_{u,v} hB^(r-u) hA^(s-v) / ((r-u+s-v+1) (r-u)! (s-v)!)`
/// in order of increasing `r + s`; the `(u,v) = (r,s)` term has coefficient 1.
pub fn grouplike_log<R: Ring>(
    span: &SpanCoeffs<R>,
    ha: &R,
    hb: &R,
    degree: usize,
) -> Result<BTreeMap<(usize, usize), R>> {
    if span.gstar(0, 1) != *ha || span.gstar(1, 0) != *hb {
        return Err(Error::Precondition(
            "hA and hB must equal the tau_{0,1} and tau_{1,0} coefficients".into(),
        ));
    }
    let pa: Vec<R> = (0..=degree + 1).map(|k| ha.pow(k)).collect();
    let pb: Vec<R> = (0..=degree + 1).map(|k| hb.pow(k)).collect();
    let mut h: BTreeMap<(usize, usize), R> = BTreeMap::new();
    for t in 0..=degree {
        for r in 0..=t {
            let s = t - r;
            let head = pb[r + 1].times(&pa[s + 1]).scaled(&weight(r + s + 2, r, s + 1));
            let mut val = span.g(r, s).minus(&head);
            for u in 0..=r {
                for v in 0..=s {
                    if (u, v) == (r, s) {
                        continue;
                    }
                    let Some(huv) = h.get(&(u, v)) else { continue };
                    let (a, b) = (r - u, s - v);
                    let term = huv.times(&pb[a]).times(&pa[b]).scaled(&weight(a + b + 1, a, b));
                    val = val.minus(&term);
                }
            }
            if !val.is_zero() {
                h.insert((r, s), val);
            }
        }
    }
    Ok(h)
}

/// Bernoulli convention used in the closed-form logarithm.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BernoulliSign {
    /// `t / (e^t - 1) = sum B^-_n t^n / n!`.
    Minus,
    /// `t / (1 - e^-t) = sum B^+_n t^n / n!`.
    Plus,
}

/// Closed form
/// `h(X,Y) = H(X,Y) q(hB Y + hA X) - hA hB T(hA X, hB Y)` with generating
/// series `sum h_{r,s} X^s Y^r`; `q` built from the chosen Bernoulli sign.
pub fn grouplike_log_closed<R: Ring>(
    span: &SpanCoeffs<R>,
    ha: &R,
    hb: &R,
    degree: usize,
    sign: BernoulliSign,
) -> Result<BTreeMap<(usize, usize), R>> {
    let bern: Vec<Rational> = (0..=degree)
        .map(|n| {
            let b = match sign {
                BernoulliSign::Plus => bernoulli(n),
                BernoulliSign::Minus => crate::formal::bernoulli_minus(n),
            };
            b / factorial(n)
        })
        .collect();
    let big_h = BivarSeries::from_fn(degree, |s, r| span.g(r, s));
    let q = BivarSeries::from_fn(degree, |i, j| {
        ha.pow(i).times(&hb.pow(j)).scaled(&(&bern[i + j] * binomial(i + j, i)))
    });
    let t = kernel_t(degree)?;
    let tt = BivarSeries::from_fn(degree, |i, j| ha.pow(i).times(&hb.pow(j)).scaled(&t.coeff(i, j)));
    let hh = big_h.mul(&q).sub(&tt.scale_ring(&ha.times(hb)));
    let mut out = BTreeMap::new();
    for (s, r, c) in hh.terms() {
        out.insert((r, s), c);
    }
    Ok(out)
}

/// Outcome of comparing the closed form against the triangular solve.
#[derive(Clone, Debug, Serialize)]
pub struct ClosedFormCheck {
    pub sign: BernoulliSign,
    pub holds: bool,
    pub first_mismatch: Option<(usize, usize)>,
}

/// Compares both Bernoulli conventions of the closed form with the
/// triangular solve, index by index up to `degree`.
pub fn closed_form_report<R: Ring>(
    span: &SpanCoeffs<R>,
    ha: &R,
    hb: &R,
    degree: usize,
) -> Result<Vec<ClosedFormCheck>> {
    let primary = grouplike_log(span, ha, hb, degree)?;
    let mut out = Vec::new();
    for sign in [BernoulliSign::Minus, BernoulliSign::Plus] {
        let closed = grouplike_log_closed(span, ha, hb, degree, sign)?;
        let first_mismatch = first_difference(&primary, &closed, degree);
        out.push(ClosedFormCheck {
            sign,
            holds: first_mismatch.is_none(),
            first_mismatch,
        });
    }
    Ok(out)
}

/// First `(r, s)` with `r + s <= degree` where the two maps differ.
pub fn first_difference<R: Ring>(
    a: &BTreeMap<(usize, usize), R>,
    b: &BTreeMap<(usize, usize), R>,
    degree: usize,
) -> Option<(usize, usize)> {
    let zero = R::zero();
    for t in 0..=degree {
        for r in 0..=t {
            let k = (r, t - r);
            if a.get(&k).unwrap_or(&zero) != b.get(&k).unwrap_or(&zero) {
                return Some(k);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal::rat;
    use crate::metabelian::{span_decompose, Basis, MetabElt, WOp};

    fn span_of(h: &MetabElt<Rational>) -> SpanCoeffs<Rational> {
        span_decompose(&WOp::exp_ad(h)).unwrap()
    }

    #[test]
    fn pure_generators_have_zero_log() {
        let d = 6;
        let h = MetabElt::generators(d, rat(3, 2), int(0));
        let sp = span_of(&h);
        let out = grouplike_log(&sp, &rat(3, 2), &int(0), d - 3).unwrap();
        assert!(out.is_empty());
        let h = MetabElt::generators(d, int(0), int(-2));
        let out = grouplike_log(&span_of(&h), &int(0), &int(-2), d - 3).unwrap();
        assert!(out.is_empty());
    }

    #[test]
    fn round_trip_and_closed_form() {
        let d = 7;
        let mut h = MetabElt::generators(d, int(2), rat(-1, 3));
        h.set(Basis::Sigma(0, 0), int(5));
        h.set(Basis::Sigma(1, 0), rat(1, 7));
        h.set(Basis::Sigma(1, 2), int(-1));
        let sp = span_of(&h);
        let out = grouplike_log(&sp, &int(2), &rat(-1, 3), d - 3).unwrap();
        let want: BTreeMap<_, _> = [((0, 0), int(5)), ((1, 0), rat(1, 7)), ((1, 2), int(-1))].into();
        assert_eq!(out, want);
        let report = closed_form_report(&sp, &int(2), &rat(-1, 3), d - 3).unwrap();
        assert!(report[0].holds);
        assert!(!report[1].holds);
    }

    #[test]
    fn precondition() {
        let h = MetabElt::generators(5, int(1), int(1));
        assert!(grouplike_log(&span_of(&h), &int(2), &int(1), 2).is_err());
    }
}
