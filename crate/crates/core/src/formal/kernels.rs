//! Bivariate kernels built from `p(t) = (e^t - 1)/t` and `q(t) = 1/p(t)`.
//!
//! Each kernel is a quotient `N(U,V) / (aU + bV)`; the numerator is expanded
//! one degree past the target and divided exactly, so any failure of the
//! singular prefactor to cancel surfaces as [`Error::NonCancellation`].

use serde::Serialize;

use super::bernoulli::{exp_quotient_coeffs, todd_coeffs};
use super::bivar::BivarSeries;
use super::rational::{factorial, int, Rational};
use crate::error::{Error, Result};

type Series = BivarSeries<Rational>;

fn p_of(a: i64, b: i64, d: usize) -> Series {
    Series::from_univariate_linear(&exp_quotient_coeffs(d), &int(a), &int(b), d)
}

fn q_of(a: i64, b: i64, d: usize) -> Series {
    Series::from_univariate_linear(&todd_coeffs(d), &int(a), &int(b), d)
}

fn divide(n: &Series, a: i64, b: i64, kernel: &'static str) -> Result<Series> {
    n.div_linear(&int(a), &int(b)).map_err(|r| Error::NonCancellation {
        kernel,
        residual: Series::residual_report(r),
    })
}

/// `T(U,V) = (1/U)(1 - p(V) q(U+V))` to total degree `d`.
pub fn kernel_t(d: usize) -> Result<Series> {
    let e = d + 1;
    let n = Series::one(e).sub(&p_of(0, 1, e).mul(&q_of(1, 1, e)));
    divide(&n, 1, 0, "T")
}

/// `(1/U)(1 - ((U+V)/V) (e^U - 1)/(e^{U+V} - 1))` exactly as printed. The
/// inner `1/V` does not cancel, so this always reports the residual.
pub fn kernel_t_printed(d: usize) -> Result<Series> {
    let e = d + 2;
    let u = Series::from_fn(e, |i, j| if (i, j) == (1, 0) { int(1) } else { int(0) });
    let v = Series::from_fn(e, |i, j| if (i, j) == (0, 1) { int(1) } else { int(0) });
    // 1 - (U/V) p(U) q(U+V) = (V - U p(U) q(U+V)) / V
    let n = v.sub(&u.mul(&p_of(1, 0, e)).mul(&q_of(1, 1, e)));
    let inner = divide(&n, 0, 1, "T (printed)")?;
    divide(&inner, 1, 0, "T (printed)")
}

/// `kappa(a, b) = (1/b)(1 - p(a) q(a+b))`, written in variables `(U, V) = (a, b)`,
/// so that `log(e^X e^Y) = X + Y + kappa(ad_X, ad_Y)[X, Y]` in the metabelian
/// quotient.
pub fn kurlin_kernel(d: usize) -> Result<Series> {
    let e = d + 1;
    let n = Series::one(e).sub(&p_of(1, 0, e).mul(&q_of(1, 1, e)));
    divide(&n, 0, 1, "Kurlin")
}

/// Operative kernel `K(U,V) = kappa(-V, U+V) = (1/(U+V))(1 - p(-V) q(U))`,
/// used with `U = (int alpha) ad_A` and `V = (int beta) ad_B`.
pub fn kernel_bch(d: usize) -> Result<Series> {
    let e = d + 1;
    let n = Series::one(e).sub(&p_of(0, -1, e).mul(&q_of(1, 0, e)));
    divide(&n, 1, 1, "K")
}

/// `(1/(U+V))(1 - ((e^{-V} - 1)/V)(U+V)/(e^{U+V} - 1))` exactly as printed.
/// Its numerator is `1 + p(-V) q(U+V)`, which is 2 at the origin.
pub fn kernel_s_printed(d: usize) -> Result<Series> {
    let e = d + 1;
    let n = Series::one(e).add(&p_of(0, -1, e).mul(&q_of(1, 1, e)));
    divide(&n, 1, 1, "S (printed)")
}

/// `sum_{r,s} U^s V^r / ((r+s+2) r! (s+1)!)` to degree `d`.
pub fn shifted_exp_series(d: usize) -> Series {
    Series::from_fn(d, |s, r| {
        (int((r + s + 2) as i64) * factorial(r) * factorial(s + 1)).recip()
    })
}

/// `sum_{r,s} U^s V^r / ((r+s+1) r! s!)` to degree `d`.
pub fn averaged_exp_series(d: usize) -> Series {
    Series::from_fn(d, |s, r| {
        (int((r + s + 1) as i64) * factorial(r) * factorial(s)).recip()
    })
}

/// Outcome of one closed-form identity check.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub holds: bool,
    pub first_mismatch: Option<(usize, usize)>,
}

fn compare(name: &'static str, lhs: &Series, rhs: &Series) -> IdentityCheck {
    let d = lhs.degree().min(rhs.degree());
    let mut first = None;
    'outer: for t in 0..=d {
        for j in 0..=t {
            if lhs.coeff(t - j, j) != rhs.coeff(t - j, j) {
                first = Some((t - j, j));
                break 'outer;
            }
        }
    }
    IdentityCheck {
        name,
        holds: first.is_none(),
        first_mismatch: first,
    }
}

/// Checks the two holomorphic identities behind the logarithm formula, in
/// both the printed and the corrected form of the first, and the relation
/// `T(U,V) = q(U+V) * shifted_exp_series` that ties `T` to them.
pub fn holomorphic_identities(d: usize) -> Result<Vec<IdentityCheck>> {
    let e = d + 1;
    let p_sum = p_of(1, 1, e);
    // (1/U)(p(U+V) - p(U)), printed
    let printed = p_sum.sub(&p_of(1, 0, e)).div_linear(&int(1), &int(0));
    // (1/U)(p(U+V) - p(V))
    let corrected = divide(&p_sum.sub(&p_of(0, 1, e)), 1, 0, "identity")?;
    let lhs1 = shifted_exp_series(d);
    let mut out = Vec::new();
    out.push(match printed {
        Ok(s) => compare("shifted_exp_printed", &lhs1, &s),
        Err(_) => IdentityCheck {
            name: "shifted_exp_printed",
            holds: false,
            first_mismatch: None,
        },
    });
    out.push(compare("shifted_exp_corrected", &lhs1, &corrected));
    out.push(compare("averaged_exp", &averaged_exp_series(d), &p_of(1, 1, d)));
    let t = kernel_t(d)?;
    out.push(compare("T_from_shifted_exp", &t, &q_of(1, 1, d).mul(&lhs1)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal::rational::rat;

    #[test]
    fn t_kernel_low_order() {
        let t = kernel_t(4).unwrap();
        // T = q(U+V)(1/2 + U/6 + V/2 + ...): constant 1/2
        assert_eq!(t.coeff(0, 0), rat(1, 2));
        assert!(kernel_t_printed(3).is_err());
    }

    #[test]
    fn bch_kernel_low_order() {
        let k = kernel_bch(3).unwrap();
        assert_eq!(k.coeff(0, 0), rat(1, 2));
        assert_eq!(k.coeff(1, 0), rat(-1, 12));
        assert_eq!(k.coeff(0, 1), rat(-1, 6));
        let kappa = kurlin_kernel(3).unwrap();
        assert_eq!(kappa.coeff(0, 0), rat(1, 2));
        assert_eq!(kappa.coeff(1, 0), rat(1, 12));
        assert_eq!(kappa.coeff(0, 1), rat(-1, 12));
        match kernel_s_printed(3) {
            Err(Error::NonCancellation { residual, .. }) => {
                assert_eq!(residual[0], (0, 0, "2/1".to_string()))
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn identities_degree_12() {
        let checks = holomorphic_identities(12).unwrap();
        for c in &checks {
            assert_eq!(c.holds, c.name != "shifted_exp_printed", "{c:?}");
        }
    }
}
