use std::sync::Arc;

use super::function::{CurveFn, CurveParams};
use super::weierstrass::p_k;
use crate::error::{Error, Result};
use crate::formal::{factorial, int, Rational, Ring};

/// `p_n` and `q_n`, indexed by `n` from 0: `p[0] = q[0] = 1` and `p[1] = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct PQ {
    pub p: Vec<CurveFn>,
    pub q: Vec<CurveFn>,
}

/// `(-1)^(k+1) P_k / k` for `k = 1..=n` (index 0 unused).
fn weights(big_p: &[CurveFn]) -> Vec<CurveFn> {
    big_p
        .iter()
        .enumerate()
        .map(|(k, pk)| {
            if k == 0 {
                CurveFn::zero()
            } else {
                let s = if k % 2 == 1 { int(1) } else { int(-1) };
                pk.scaled(&(s / int(k as i64)))
            }
        })
        .collect()
}

/// Every multiplicity vector `a` with `sum k a_k = n` and `a_k = 0` for `k < min`.
fn partitions(n: usize, min: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, k: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        if k < min {
            return;
        }
        for a in (0..=rest / k).rev() {
            cur[k] = a;
            rec(rest - a * k, k - 1, min, cur, out);
        }
        cur[k] = 0;
    }
    let mut out = Vec::new();
    let mut cur = vec![0; n + 1];
    if n == 0 {
        return vec![cur];
    }
    rec(n, n, min, &mut cur, &mut out);
    out
}

fn partition_sum(w: &[CurveFn], n: usize, min: usize) -> CurveFn {
    let mut total = CurveFn::zero();
    for a in partitions(n, min) {
        let mut term = CurveFn::one();
        let mut denom = Rational::one();
        for (k, &ak) in a.iter().enumerate() {
            if ak > 0 {
                term = term.times(&w[k].pow(ak));
                denom *= factorial(ak);
            }
        }
        total = total.plus(&term.scaled(&denom.recip()));
    }
    total
}

/// `exp(sum_{k>=min} w_k t^k)` through `t^n`, summing `S^m/m!` directly.
fn exponential_form(w: &[CurveFn], n: usize, min: usize) -> Vec<CurveFn> {
    let s: Vec<CurveFn> = (0..=n)
        .map(|k| if k >= min { w[k].clone() } else { CurveFn::zero() })
        .collect();
    let mut out = vec![CurveFn::zero(); n + 1];
    out[0] = CurveFn::one();
    let mut power = out.clone();
    for m in 1..=n {
        let mut next = vec![CurveFn::zero(); n + 1];
        for (i, a) in power.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in min.max(1)..=n - i {
                next[i + j] = next[i + j].plus(&a.times(&s[j]));
            }
        }
        power = next;
        let inv = factorial(m).recip();
        for k in 0..=n {
            out[k] = out[k].plus(&power[k].scaled(&inv));
        }
    }
    out
}

/// `P_1..=P_n` (index 0 holds zero).
pub fn p_list(params: &Arc<CurveParams>, n: usize) -> Result<Vec<CurveFn>> {
    let mut out = vec![CurveFn::zero()];
    for k in 1..=n {
        out.push(p_k(params, k)?);
    }
    Ok(out)
}

/// Partition sums for `p_n` (parts >= 2) and `q_n` (parts >= 1, `P_1 = -f`),
/// cross-checked against `exp(-sum (-1)^k P_k t^k / k)` expanded in `t`.
pub fn pq_coeffs(params: &Arc<CurveParams>, n: usize) -> Result<PQ> {
    let big_p = p_list(params, n.max(1))?;
    pq_from_p(&big_p, n)
}

pub fn pq_from_p(big_p: &[CurveFn], n: usize) -> Result<PQ> {
    let w = weights(big_p);
    let p: Vec<CurveFn> = (0..=n).map(|k| partition_sum(&w, k, 2)).collect();
    let q: Vec<CurveFn> = (0..=n).map(|k| partition_sum(&w, k, 1)).collect();
    let pe = exponential_form(&w, n, 2);
    let qe = exponential_form(&w, n, 1);
    for k in 0..=n {
        if p[k] != pe[k] || q[k] != qe[k] {
            return Err(Error::PartitionMismatch { index: k });
        }
    }
    Ok(PQ { p, q })
}
