//! Classical identities among `e_k` and `P_k`, reported rather than assumed.

use std::sync::Arc;

use serde::Serialize;

use super::function::{CurveFn, CurveParams};
use super::weierstrass::e_k;
use crate::error::Result;
use crate::formal::{binomial, int, Rational, Ring};

#[derive(Clone, Debug, Serialize)]
pub struct RecurrenceCheck {
    pub variant: &'static str,
    pub index: (usize, usize),
    pub holds: bool,
}

/// `P_m P_n - P_{m+n} = (-1)^n sum_{k=1}^{m-2} C(n+k-1,k) e_{n+k} P_{m-k}
///   + (-1)^m sum_{k=1}^{n-2} C(m+k-1,k) e_{m+k} P_{n-k} + (-1)^m C(m+n,m) e_{m+n}`
/// for `2 <= m, n` and `m + n <= max`.
pub fn weil_recurrence(params: &Arc<CurveParams>, big_p: &[CurveFn], max: usize) -> Vec<RecurrenceCheck> {
    let e: Vec<Rational> = (0..=max).map(|k| e_k(params, k)).collect();
    let sign = |k: usize| if k.is_multiple_of(2) { int(1) } else { int(-1) };
    let mut out = Vec::new();
    for m in 2..=max {
        for n in 2..=max - m {
            let lhs = big_p[m].times(&big_p[n]).minus(&big_p[m + n]);
            let mut rhs = CurveFn::constant(sign(m) * binomial(m + n, m) * &e[m + n]);
            for k in 1..=m.saturating_sub(2) {
                let c = sign(n) * binomial(n + k - 1, k) * &e[n + k];
                rhs = rhs.plus(&big_p[m - k].scaled(&c));
            }
            for k in 1..=n.saturating_sub(2) {
                let c = sign(m) * binomial(m + k - 1, k) * &e[m + k];
                rhs = rhs.plus(&big_p[n - k].scaled(&c));
            }
            out.push(RecurrenceCheck {
                variant: "weil",
                index: (m, n),
                holds: lhs == rhs,
            });
        }
    }
    out
}

/// `(1/3)(m-3)(4m^2-1) e_{2m} = sum_{r=2}^{m-2} (2r-1) c(m,r) e_{2r} e_{2m-2r}`
/// with `c(m,r)` either the printed `2m-r-1` or `2m-2r-1`, for `4 <= m`,
/// `2m <= max`; plus the variant with `e_m` on the left, for `5 <= m <= max/2`.
pub fn e_recurrences(params: &CurveParams, max: usize) -> Vec<RecurrenceCheck> {
    let e: Vec<Rational> = (0..=max).map(|k| e_k(params, k)).collect();
    let rhs = |m: usize, second: &dyn Fn(usize, usize) -> i64| -> Rational {
        (2..=m - 2)
            .map(|r| int((2 * r as i64 - 1) * second(m, r)) * &e[2 * r] * &e[2 * m - 2 * r])
            .sum()
    };
    let lhs_coeff = |m: usize| int((m as i64 - 3) * (4 * (m * m) as i64 - 1)) / int(3);
    let mut out = Vec::new();
    for m in 4..=max / 2 {
        let printed = rhs(m, &|m, r| 2 * m as i64 - r as i64 - 1);
        let corrected = rhs(m, &|m, r| 2 * m as i64 - 2 * r as i64 - 1);
        let lhs = lhs_coeff(m) * &e[2 * m];
        out.push(RecurrenceCheck {
            variant: "e_2m_printed",
            index: (m, 0),
            holds: lhs == printed,
        });
        out.push(RecurrenceCheck {
            variant: "e_2m_corrected",
            index: (m, 0),
            holds: lhs == corrected,
        });
        if m >= 5 {
            out.push(RecurrenceCheck {
                variant: "e_m_printed",
                index: (m, 0),
                holds: lhs_coeff(m) * &e[m] == printed,
            });
        }
    }
    out
}

/// Convenience for reports: all checks of one variant hold.
pub fn all_hold(checks: &[RecurrenceCheck], variant: &str) -> bool {
    checks.iter().filter(|c| c.variant == variant).all(|c| c.holds)
}

pub fn weil_with_list(params: &Arc<CurveParams>, max: usize) -> Result<Vec<RecurrenceCheck>> {
    let big_p = super::pq::p_list(params, max)?;
    Ok(weil_recurrence(params, &big_p, max))
}
