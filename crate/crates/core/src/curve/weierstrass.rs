use std::sync::Arc;

use super::chart::Chart;
use super::function::{CurveFn, CurveParams};
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::formal::{factorial, int, rat, Differential, Rational, Ring, ZLSeries};

/// `c_k` in `wp(z) = z^-2 + sum_{k>=1} c_k z^(2k)` for `k <= n`.
///
/// `c_1 = 3 e4` and `c_2 = 5 e6` come from the `z^-2` and `z^0` coefficients of
/// `wp'^2 = 4 wp^3 - 60 e4 wp - 140 e6`; the rest from `wp'' = 6 wp^2 - 30 e4`,
/// which gives `2(2k+3)(k-2) c_k = 6 sum_{i+j=k-1} c_i c_j`.
pub fn wp_coefficients(params: &CurveParams, n: usize) -> Vec<Rational> {
    let mut c = vec![Rational::zero(); n + 1];
    if n >= 1 {
        c[1] = &params.e4 * int(3);
    }
    if n >= 2 {
        c[2] = &params.e6 * int(5);
    }
    for k in 3..=n {
        let mut s = Rational::zero();
        for i in 1..k - 1 {
            s += &c[i] * &c[k - 1 - i];
        }
        c[k] = s * int(6) / int(2 * (2 * k as i64 + 3) * (k as i64 - 2));
    }
    c
}

/// `wp(z)` valid through `z^order`.
pub fn wp_series(params: &CurveParams, order: i64) -> ZLSeries {
    let n = if order < 2 { 0 } else { (order / 2) as usize };
    let c = wp_coefficients(params, n);
    let mut terms = vec![(-2, 0, Rational::one())];
    for (k, ck) in c.into_iter().enumerate().skip(1) {
        terms.push((2 * k as i64, 0, ck));
    }
    ZLSeries::from_terms(terms, order)
}

/// `(x, y) = (wp(z), wp'(z))`, both valid through `z^order`.
pub fn weierstrass_expansion(params: &CurveParams, order: i64) -> (ZLSeries, ZLSeries) {
    let wp = wp_series(params, order + 1);
    let y = wp.derivative();
    (wp.truncate(order), y)
}

/// `wp_k = ((-1)^k/(k-1)!) d^(k-2) wp/dz^(k-2)` through `z^order`, and its
/// constant term `e_k`.
pub fn wp_k(params: &CurveParams, k: usize, order: i64) -> (ZLSeries, Rational) {
    assert!(k >= 2, "wp_k needs k >= 2");
    let mut s = wp_series(params, order + k as i64 - 2);
    for _ in 2..k {
        s = s.derivative();
    }
    let sign = if k.is_multiple_of(2) { int(1) } else { int(-1) };
    let s = s.scaled(&(sign / factorial(k - 1)));
    let e = s.coeff(0, 0).expect("order >= 0");
    (s, e)
}

/// `e_k`, the constant term of `wp_k`.
pub fn e_k(params: &CurveParams, k: usize) -> Rational {
    if k < 2 {
        return Rational::zero();
    }
    wp_k(params, k, 0).1
}

/// `f = +-2x^2/y`, the sign fixed by requiring `df - beta` to be holomorphic
/// at infinity.
pub fn choose_f(params: &Arc<CurveParams>) -> Result<CurveFn> {
    let chart = Chart::infinity(params);
    let x = CurveFn::x(params);
    let mut found = Vec::new();
    for sign in [1, -1] {
        let f = CurveFn::with_denominator(params, Poly::zero(), Poly::monomial(int(2 * sign), 2), 1);
        let eta = f.derivative().minus(&x);
        let s = chart.expand(&eta, 4)?;
        if s.valuation().is_none_or(|v| v >= 0) {
            found.push(f);
        }
    }
    match found.len() {
        1 => Ok(found.pop().unwrap()),
        _ => Err(Error::NoValidFSign),
    }
}

/// Order through which Laurent tails are matched when solving for `P_k`.
const MATCH_MARGIN: i64 = 12;

/// `P_k` for `k >= 1`: `P_1 = -f`, `P_2 = x`, `P_3 = -y/2`, and for `k >= 4`
/// the polynomial in `x, y` whose expansion at infinity is `wp_k - e_k`.
pub fn p_k(params: &Arc<CurveParams>, k: usize) -> Result<CurveFn> {
    match k {
        0 => Err(Error::Precondition("P_k needs k >= 1".into())),
        1 => Ok(choose_f(params)?.negated()),
        2 => Ok(CurveFn::x(params)),
        3 => Ok(CurveFn::y(params).scaled(&rat(-1, 2))),
        _ => match_laurent_tail(params, k),
    }
}

fn match_laurent_tail(params: &Arc<CurveParams>, k: usize) -> Result<CurveFn> {
    let order = k as i64 + MATCH_MARGIN;
    let (target, e) = wp_k(params, k, order);
    let mut rem = target.minus(&ZLSeries::constant(e));
    let chart = Chart::infinity(params);
    let ex = chart.expander(order);
    let mut out = CurveFn::zero();
    while let Some(v) = rem.valuation().filter(|v| *v <= 0) {
        let m = (-v) as usize;
        let mono = match m {
            1 => {
                return Err(Error::InconsistentMatching {
                    k,
                    detail: "simple pole left over".into(),
                })
            }
            _ if m.is_multiple_of(2) => CurveFn::monomial(params, Rational::one(), m / 2, 0),
            _ => CurveFn::monomial(params, Rational::one(), (m - 3) / 2, 1),
        };
        let ms = ex.expand(&mono)?;
        let c = rem.coeff(v, 0)? / ms.coeff(v, 0)?;
        rem = rem.minus(&ms.scaled(&c));
        out = out.plus(&mono.scaled(&c));
    }
    if let Some(v) = rem.valuation() {
        return Err(Error::InconsistentMatching {
            k,
            detail: format!("remainder starts at z^{v}, expected zero through z^{order}"),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(e4: i64, e6: i64) -> Arc<CurveParams> {
        CurveParams::new(int(e4), int(e6)).unwrap()
    }

    #[test]
    fn low_coefficients() {
        let p = curve(2, 3);
        let wp = wp_series(&p, 8);
        assert_eq!(wp.coeff(2, 0).unwrap(), int(6));
        assert_eq!(wp.coeff(4, 0).unwrap(), int(15));
        // 7 e8 z^6 with e8 = (3/7) e4^2
        assert_eq!(wp.coeff(6, 0).unwrap(), int(12));
        assert_eq!(e_k(&p, 8), rat(12, 7));
        assert_eq!(e_k(&p, 4), int(2));
        assert_eq!(e_k(&p, 6), int(3));
        assert_eq!(e_k(&p, 3), int(0));
        assert_eq!(e_k(&p, 5), int(0));
    }

    #[test]
    fn ode_residual() {
        let p = curve(1, 1);
        let (x, y) = weierstrass_expansion(&p, 30);
        let lhs = y.times(&y);
        let rhs = crate::formal::horner(p.h().coeffs(), &x);
        let diff = lhs.minus(&rhs);
        assert!(diff.prec() >= 20);
        assert!(diff.is_zero());
    }

    #[test]
    fn f_sign_and_p4() {
        let p = curve(1, 0);
        let f = choose_f(&p).unwrap();
        assert_eq!(f.to_string(), "2*x^2/y");
        let s = Chart::infinity(&p).expand(&f, 3).unwrap();
        assert_eq!(s.coeff(-1, 0).unwrap(), int(-1));
        assert_eq!(p_k(&p, 4).unwrap().to_string(), "x^2 - 6");
        assert_eq!(p_k(&p, 1).unwrap().to_string(), "-2*x^2/y");
    }
}
