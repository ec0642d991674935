use std::sync::Arc;

use super::function::{CurveFn, CurveParams};
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::formal::{int, Differential, Rational, Ring};

/// Writes `eta * alpha = dF + a alpha + b beta` for `eta` in `Q[x, y]`.
///
/// The `y`-part is exact outright (`x^j y alpha = d(x^(j+1))/(j+1)`); the
/// `x`-part is reduced from the top with `d(x^i y) = ((4i+6) x^(i+2) + ...) alpha`
/// until only `a + b x` is left.
pub fn cohomology_reduce(params: &Arc<CurveParams>, eta: &CurveFn) -> Result<(CurveFn, Rational, Rational)> {
    if !eta.is_polynomial() {
        return Err(Error::Precondition(
            "cohomology_reduce needs a function regular on the affine curve".into(),
        ));
    }
    let mut f = CurveFn::zero();
    for (j, c) in eta.b().coeffs().iter().enumerate() {
        if !c.is_zero() {
            let c = c / int(j as i64 + 1);
            f = f.plus(&CurveFn::monomial(params, c, j + 1, 0));
        }
    }
    let mut rest = eta.a().clone();
    while let Some(d) = rest.degree().filter(|d| *d >= 2) {
        let i = d - 2;
        let c = rest.coeff(d) / int(4 * i as i64 + 6);
        let g = CurveFn::monomial(params, c, i, 1);
        let dg = g.derivative();
        debug_assert!(dg.b().is_zero());
        rest = rest.sub(dg.a());
        f = f.plus(&g);
    }
    Ok((f, rest.coeff(0), rest.coeff(1)))
}

/// `dF/alpha + a + b x`, the inverse of [`cohomology_reduce`].
pub fn assemble_form(params: &Arc<CurveParams>, f: &CurveFn, a: &Rational, b: &Rational) -> CurveFn {
    f.derivative().plus(&CurveFn::new(
        params,
        Poly::new(vec![a.clone(), b.clone()]),
        Poly::zero(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let p = CurveParams::new(int(1), int(0)).unwrap();
        let (f, a, b) = cohomology_reduce(&p, &CurveFn::one()).unwrap();
        assert!(f.is_zero());
        assert_eq!((a, b), (int(1), int(0)));
        let (f, a, b) = cohomology_reduce(&p, &CurveFn::y(&p)).unwrap();
        assert_eq!(f, CurveFn::x(&p));
        assert_eq!((a, b), (int(0), int(0)));
        let x2 = CurveFn::monomial(&p, int(1), 2, 0);
        let (f, a, b) = cohomology_reduce(&p, &x2).unwrap();
        assert_eq!(f, CurveFn::y(&p).scaled(&crate::formal::rat(1, 6)));
        assert_eq!((a, b), (int(5), int(0)));
    }
}
