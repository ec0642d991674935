use std::sync::Arc;

use crate::curve::{choose_f, pq_coeffs, CurveFn, CurveParams, PQ};
use crate::error::Result;
use crate::formal::{binomial, int, rat, Differential, Rational, Ring};
use crate::freealg::{gauge_apply, NCSeries, Word};

/// The KZB pair with its gluing gauge, truncated at word length `depth`.
#[derive(Clone, Debug)]
pub struct KZBData {
    pub params: Arc<CurveParams>,
    pub depth: usize,
    pub f: CurveFn,
    pub pq: PQ,
    /// `omega_KZB = beta B + alpha A + alpha sum_{k>=2} p_k ad_B^k(A)`, as
    /// `alpha`-coefficients.
    pub omega: NCSeries<CurveFn>,
    /// `omega'_KZB = (beta - df) B + alpha A + alpha sum_{k>=1} q_k ad_B^k(A)`.
    pub omega_prime: NCSeries<CurveFn>,
    /// `exp(-f B)`.
    pub gauge: NCSeries<CurveFn>,
}

/// `ad_B^k(A) = sum_i C(k,i) (-1)^(k-i) B^i A B^(k-i)` as `(word, coefficient)`.
pub fn ad_b_power_a(k: usize) -> Vec<(Word, Rational)> {
    (0..=k)
        .map(|i| {
            let sign = if (k - i).is_multiple_of(2) { int(1) } else { int(-1) };
            // B^i A B^(k-i): bits 1..1 0 1..1
            let bits = (((1u64 << i) - 1) << (k - i + 1)) | ((1u64 << (k - i)) - 1);
            (Word::new(k + 1, bits), sign * binomial(k, i))
        })
        .collect()
}

fn assemble(depth: usize, b_coeff: CurveFn, coeffs: &[CurveFn], first: usize) -> NCSeries<CurveFn> {
    let mut s = NCSeries::zero(depth);
    s.set(Word::new(1, 0), CurveFn::one());
    s.set(Word::new(1, 1), b_coeff);
    for (k, c) in coeffs.iter().enumerate().take(depth).skip(first) {
        if c.is_zero() {
            continue;
        }
        for (w, m) in ad_b_power_a(k) {
            s.add_at(w, &c.scaled(&m));
        }
    }
    s
}

pub fn build_kzb(params: &Arc<CurveParams>, depth: usize) -> Result<KZBData> {
    assert!(depth >= 2, "KZB data needs depth >= 2");
    let f = choose_f(params)?;
    let pq = pq_coeffs(params, depth.max(2) - 1)?;
    let x = CurveFn::x(params);
    let omega = assemble(depth, x.clone(), &pq.p, 2);
    let omega_prime = assemble(depth, x.minus(&f.derivative()), &pq.q, 1);
    let gauge = NCSeries::monomial(depth, Word::new(1, 1), f.negated()).exp()?;
    Ok(KZBData {
        params: params.clone(),
        depth,
        f,
        pq,
        omega,
        omega_prime,
        gauge,
    })
}

impl KZBData {
    /// `dg g^-1 + g omega g^-1 - omega'`, which should vanish identically.
    pub fn gauge_residual(&self) -> Result<NCSeries<CurveFn>> {
        Ok(gauge_apply(&self.gauge, &self.omega)?.sub(&self.omega_prime))
    }

    /// The same forms in exponential shape,
    /// `beta B + alpha exp(-sum_{k>=2} (-1)^k P_k ad_B^k / k)(A)` and
    /// `(beta - df) B + alpha exp(-f ad_B - sum_{k>=2} (-1)^k P_k ad_B^k / k)(A)`,
    /// expanded by applying the operator series to `A` in the free algebra.
    pub fn exponential_forms(&self, big_p: &[CurveFn]) -> (NCSeries<CurveFn>, NCSeries<CurveFn>) {
        let d = self.depth;
        let x = CurveFn::x(&self.params);
        let expand = |with_f: bool| {
            // generator: c_k ad_B^k with c_1 = -f, c_k = -(-1)^k P_k / k
            let mut c = vec![CurveFn::zero(); d];
            for (k, ck) in c.iter_mut().enumerate().skip(1) {
                *ck = if k == 1 {
                    if with_f {
                        self.f.negated()
                    } else {
                        CurveFn::zero()
                    }
                } else {
                    let s = if k % 2 == 0 { int(-1) } else { int(1) };
                    big_p[k].scaled(&(s / int(k as i64)))
                };
            }
            let apply = |v: &NCSeries<CurveFn>| {
                let mut out = NCSeries::zero(d);
                let b = NCSeries::letter_b(d);
                let mut adk = v.clone();
                for ck in c.iter().skip(1) {
                    adk = b.mul(&adk).sub(&adk.mul(&b));
                    if adk.is_zero() {
                        break;
                    }
                    if !ck.is_zero() {
                        out = out.add(&adk.scale(ck));
                    }
                }
                out
            };
            let mut term = NCSeries::letter_a(d);
            let mut acc = term.clone();
            for m in 1..d {
                term = apply(&term).scaled(&rat(1, m as i64));
                acc = acc.add(&term);
            }
            acc
        };
        let mut omega = expand(false);
        omega.set(Word::new(1, 1), x.clone());
        let mut omega_prime = expand(true);
        omega_prime.set(Word::new(1, 1), x.minus(&self.f.derivative()));
        (omega, omega_prime)
    }
}
