//! Gauge normalization of a global connection form to the naive one, and the
//! Hodge filtration checks.

use std::sync::Arc;

use serde::Serialize;

use super::flat::gauge_apply;
use super::series::{NCSeries, Word};
use crate::curve::{cohomology_reduce, CurveFn, CurveParams};
use crate::error::{Error, Result};
use crate::formal::{Rational, Ring};

/// `omega_0 = A + x B`, the naive form, as `alpha`-coefficients.
pub fn naive_form(params: &Arc<CurveParams>, degree: usize) -> NCSeries<CurveFn> {
    let mut s = NCSeries::zero(degree);
    s.set(Word::new(1, 0), CurveFn::one());
    s.set(Word::new(1, 1), CurveFn::x(params));
    s
}

/// `theta(omega_0) = theta(A) + x theta(B)`.
fn substituted_naive(params: &Arc<CurveParams>, ta: &NCSeries<Rational>, tb: &NCSeries<Rational>) -> NCSeries<CurveFn> {
    let x = CurveFn::x(params);
    let a = ta.map(|c| CurveFn::constant(c.clone()));
    let b = tb.map(|c| CurveFn::constant(c.clone()).times(&x));
    a.add(&b)
}

/// One degree of the normalization.
#[derive(Clone, Debug)]
pub struct NormalizationStep {
    pub degree: usize,
    /// `(w, F_w - F_w(b))`: the gauge factor is `1 - sum (F_w - F_w(b)) w`.
    pub gauge: Vec<(Word, CurveFn)>,
    /// `(w, a_w)` added to the image of `A`.
    pub subst_a: Vec<(Word, Rational)>,
    /// `(w, b_w)` added to the image of `B`.
    pub subst_b: Vec<(Word, Rational)>,
}

/// Result of [`normalize_to_naive`]: a gauge `g` with `g(b) = 1` and an
/// automorphism `theta` with `dg g^-1 + g omega g^-1 = theta(omega_0)`.
#[derive(Clone, Debug)]
pub struct Normalization {
    pub steps: Vec<NormalizationStep>,
    pub gauge: NCSeries<CurveFn>,
    pub theta_a: NCSeries<Rational>,
    pub theta_b: NCSeries<Rational>,
    /// `dg g^-1 + g omega g^-1 - theta(omega_0)`.
    pub residual: NCSeries<CurveFn>,
}

impl Normalization {
    pub fn residual_is_zero(&self) -> bool {
        self.residual.is_zero()
    }
}

/// Gauges `omega` to `theta(omega_0)` degree by degree. At degree `n` each
/// coefficient `r_w` of the discrepancy is split as `dF_w + a_w alpha + b_w beta`;
/// the gauge absorbs `dF_w` and the substitution absorbs `a_w A + b_w B`.
pub fn normalize_to_naive(
    params: &Arc<CurveParams>,
    omega: &NCSeries<CurveFn>,
    basepoint: (&Rational, &Rational),
) -> Result<Normalization> {
    let d = omega.degree();
    let mut g = NCSeries::<CurveFn>::one(d);
    let mut ta = NCSeries::<Rational>::letter_a(d);
    let mut tb = NCSeries::<Rational>::letter_b(d);
    let mut steps = Vec::new();
    for n in 1..=d {
        let current = gauge_apply(&g, omega)?;
        let r = current.sub(&substituted_naive(params, &ta, &tb)).homogeneous(n);
        let mut step = NormalizationStep {
            degree: n,
            gauge: Vec::new(),
            subst_a: Vec::new(),
            subst_b: Vec::new(),
        };
        let mut delta = NCSeries::<CurveFn>::zero(d);
        for (w, rw) in r.terms() {
            let (f, a, b) = cohomology_reduce(params, rw)?;
            if n == 1 && !(a.is_zero() && b.is_zero()) {
                return Err(Error::Precondition(format!(
                    "degree-1 part is not cohomologous to alpha A + beta B at word {w}"
                )));
            }
            if !f.is_zero() {
                let f0 = f.minus(&CurveFn::constant(f.eval(basepoint.0, basepoint.1)?));
                if !f0.is_zero() {
                    delta.set(w, f0.negated());
                    step.gauge.push((w, f0));
                }
            }
            if !a.is_zero() {
                ta.add_at(w, &a);
                step.subst_a.push((w, a));
            }
            if !b.is_zero() {
                tb.add_at(w, &b);
                step.subst_b.push((w, b));
            }
        }
        if !delta.is_zero() {
            g = NCSeries::one(d).add(&delta).mul(&g);
        }
        if !(step.gauge.is_empty() && step.subst_a.is_empty() && step.subst_b.is_empty()) {
            steps.push(step);
        }
    }
    let residual = gauge_apply(&g, omega)?.sub(&substituted_naive(params, &ta, &tb));
    Ok(Normalization {
        steps,
        gauge: g,
        theta_a: ta,
        theta_b: tb,
        residual,
    })
}

/// A failed Hodge-filtration condition with its witness word.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HodgeViolation {
    pub check: &'static str,
    pub word: String,
}

/// Outcome of [`hodge_check`].
#[derive(Clone, Debug, Serialize)]
pub struct HodgeReport {
    pub violations: Vec<HodgeViolation>,
    /// Degree-1 words of `F^0` (A-degree 0).
    pub f0_degree1: Vec<String>,
}

impl HodgeReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty() && self.f0_degree1 == ["B"]
    }
}

/// With `F^j` spanned by words of A-degree `<= -j`: multiplication by either
/// form may raise A-degree by at most one (transversality), and `g` must only
/// involve the letter `B` so that it preserves every `F^j`.
pub fn hodge_check<R: Ring>(omega: &NCSeries<R>, omega_prime: &NCSeries<R>, g: &NCSeries<R>) -> HodgeReport {
    let mut violations = Vec::new();
    for (name, form) in [
        ("transversality_omega", omega),
        ("transversality_omega_prime", omega_prime),
    ] {
        if let Some((w, _)) = form.terms().find(|(w, _)| w.count_a() > 1) {
            violations.push(HodgeViolation {
                check: name,
                word: w.to_string(),
            });
        }
    }
    if let Some((w, _)) = g.terms().find(|(w, _)| w.count_a() > 0) {
        violations.push(HodgeViolation {
            check: "gauge_preserves_filtration",
            word: w.to_string(),
        });
    }
    let f0_degree1 = (0..2u64)
        .map(|b| Word::new(1, b))
        .filter(|w| w.count_a() == 0)
        .map(|w| w.to_string())
        .collect();
    HodgeReport { violations, f0_degree1 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal::{int, Differential};

    #[test]
    fn naive_needs_no_steps() {
        let p = CurveParams::new(int(1), int(0)).unwrap();
        let omega = naive_form(&p, 3);
        let n = normalize_to_naive(&p, &omega, (&int(4), &int(4))).unwrap();
        assert!(n.steps.is_empty());
        assert!(n.residual_is_zero());
    }

    #[test]
    fn exact_perturbation_is_gauged_away() {
        let p = CurveParams::new(int(1), int(0)).unwrap();
        let d = 2;
        let h = CurveFn::monomial(&p, int(1), 2, 0);
        let mut omega = naive_form(&p, d);
        let w = Word::parse("AB").unwrap();
        omega.set(w, h.derivative());
        let n = normalize_to_naive(&p, &omega, (&int(4), &int(4))).unwrap();
        assert_eq!(n.steps.len(), 1);
        assert_eq!(n.steps[0].gauge, vec![(w, h.minus(&CurveFn::constant(int(16))))]);
        assert!(n.residual_is_zero());
    }

    #[test]
    fn hodge_negative_control() {
        let d = 3;
        let bad = NCSeries::<Rational>::from_terms(d, [("A", int(1)), ("AAB", int(1))]).unwrap();
        let ok = NCSeries::<Rational>::from_terms(d, [("A", int(1)), ("B", int(1))]).unwrap();
        let g = NCSeries::<Rational>::from_terms(d, [("", int(1)), ("B", int(2))]).unwrap();
        assert!(hodge_check(&ok, &ok, &g).holds());
        let r = hodge_check(&bad, &ok, &g);
        assert!(!r.holds());
        assert_eq!(r.violations[0].word, "AAB");
    }
}
