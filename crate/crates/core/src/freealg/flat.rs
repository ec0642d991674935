//! Connection forms, flat sections and gauge transformations.

use super::series::{NCSeries, Word};
use crate::curve::{Chart, CurveFn};
use crate::error::{Error, Result};
use crate::formal::{Differential, Ring, ZLSeries};

/// A connection `d - omega` on the trivial bundle.
#[derive(Clone, Debug)]
pub enum ConnectionForm {
    /// `omega = S * alpha` with `S` over the coordinate ring.
    Global(NCSeries<CurveFn>),
    /// `omega = S * dz` in a local parameter; `logarithmic` allows `dz/z`.
    Local {
        series: NCSeries<ZLSeries>,
        logarithmic: bool,
    },
}

impl ConnectionForm {
    /// Expands a global form in `chart` through `z^order`. The form is flagged
    /// logarithmic when the chart is the puncture.
    pub fn localize(&self, chart: &Chart, order: i64) -> Result<ConnectionForm> {
        match self {
            ConnectionForm::Global(s) => {
                let ex = chart.expander(order);
                let series = s.try_map(|g| if g.is_zero() { Ok(ZLSeries::zero()) } else { ex.form(g) })?;
                Ok(ConnectionForm::Local {
                    series,
                    logarithmic: chart.is_infinity(),
                })
            }
            ConnectionForm::Local { .. } => Ok(self.clone()),
        }
    }
}

/// Localizes the coefficients of a series of functions (no `alpha` factor).
pub fn expand_functions(s: &NCSeries<CurveFn>, chart: &Chart, order: i64) -> Result<NCSeries<ZLSeries>> {
    let ex = chart.expander(order);
    s.try_map(|g| {
        if g.is_zero() {
            Ok(ZLSeries::zero())
        } else {
            ex.expand(g)
        }
    })
}

/// The flat section `G` of `d - omega` (so `dG = omega G`) with regularized
/// value 1 at `z = 0`, valid through `z^order`.
///
/// In the logarithmic case `omega = R dz/z + omega_hol` and `G = H exp(L R)`,
/// where `H(0) = 1` solves `dH/dz = (R H - H R)/z + omega_hol H` degree by degree.
pub fn flat_section(omega: &NCSeries<ZLSeries>, logarithmic: bool, order: i64) -> Result<NCSeries<ZLSeries>> {
    let n = omega.degree();
    let mut residue = NCSeries::<ZLSeries>::zero(n);
    let mut hol = NCSeries::<ZLSeries>::zero(n);
    for (w, c) in omega.terms() {
        match c.valuation() {
            Some(v) if v < -1 || (v == -1 && !logarithmic) => {
                return Err(Error::PoleOrder { order: -v });
            }
            _ => {}
        }
        let r = c.coeff(-1, 0)?;
        if !r.is_zero() {
            residue.set(w, ZLSeries::constant(r.clone()));
        }
        hol.set(w, c.minus(&ZLSeries::monomial(r, -1, 0)));
    }
    if !residue.augmentation().is_zero() || !hol.augmentation().is_zero() {
        return Err(Error::Augmentation {
            expected: "0",
            found: "nonzero constant word in the connection form".into(),
        });
    }
    let inv_z = ZLSeries::monomial(crate::formal::int(1), -1, 0);
    let mut h = NCSeries::<ZLSeries>::one(n);
    for len in 1..=n {
        let layer = crate::par::map_range(1 << len, |bits| {
            let w = Word::new(len, bits as u64);
            let mut rhs = ZLSeries::zero();
            let mut comm = ZLSeries::zero();
            for k in 1..=len {
                let (u, v) = w.split(k);
                let hv = h.coeff_ref(v);
                if !hv.is_zero() {
                    let wu = hol.coeff_ref(u);
                    if !wu.is_zero() {
                        rhs = rhs.plus(&wu.times(hv));
                    }
                    let ru = residue.coeff_ref(u);
                    if !ru.is_zero() {
                        comm = comm.plus(&ru.times(hv));
                    }
                }
                // H_u R_v with v nonempty
                let (u2, v2) = w.split(len - k);
                let rv = residue.coeff_ref(v2);
                let hu = h.coeff_ref(u2);
                if !rv.is_zero() && !hu.is_zero() {
                    comm = comm.minus(&hu.times(rv));
                }
            }
            rhs.plus(&comm.times(&inv_z)).antiderivative().truncate(order)
        });
        let lo = Word::new(len, 0).index();
        for (k, c) in layer.into_iter().enumerate() {
            h.set(Word::from_index(lo + k), c);
        }
    }
    if residue.is_zero() {
        return Ok(h);
    }
    let lr = residue.map(|c| c.times(&ZLSeries::log()));
    Ok(h.mul(&lr.exp()?).map(|c| c.truncate(order)))
}

/// `dG - omega G`, the residual of a claimed flat section.
pub fn flat_residual(g: &NCSeries<ZLSeries>, omega: &NCSeries<ZLSeries>) -> NCSeries<ZLSeries> {
    g.derivative().sub(&omega.mul(g))
}

/// Transforms `d - omega` by `g`: `omega' = dg g^-1 + g omega g^-1`.
pub fn gauge_apply<R: Differential>(g: &NCSeries<R>, omega: &NCSeries<R>) -> Result<NCSeries<R>> {
    let gi = g.inverse()?;
    Ok(g.derivative().mul(&gi).add(&g.mul(omega).mul(&gi)))
}
