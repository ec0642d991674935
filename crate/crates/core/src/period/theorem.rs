use serde::Serialize;

use super::gseries::{g_series, GSeries};
use crate::curve::Chart;
use crate::error::Result;
use crate::formal::{kernel_bch, Ring, ZLSeries};
use crate::kzb::{free_log, KZBData};
use crate::metabelian::{metab_bch, Basis, MetabElt};
use crate::par;

/// How a [`PeriodResult`] was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ClosedForm,
    Oracle,
}

/// The conventions every period computation is pinned to.
#[derive(Clone, Debug, Serialize)]
pub struct Conventions {
    pub kernel: &'static str,
    pub bernoulli: &'static str,
    pub f_sign: &'static str,
    pub index_orientation: &'static str,
    pub gauge: &'static str,
    pub tangential_vector: &'static str,
}

impl Default for Conventions {
    fn default() -> Self {
        Conventions {
            kernel: "K(U,V) = kappa(-V, U+V) = (1 - p(-V) q(U)) / (U+V)",
            bernoulli: "B+ (B1 = 1/2) for bernoulli(n); B- in the closed logarithm",
            f_sign: "f = 2x^2/y = -1/z + O(z)",
            index_orientation: "sigma_{r,s} = ad_B^r ad_A^s [A,B]",
            gauge: "nabla = d - omega, omega' = dg g^-1 + g omega g^-1, g = exp(-f B)",
            tangential_vector: "d/dz at the puncture, L(b) = 0",
        }
    }
}

/// `iota` of the period map: `A`-coefficient, zero `B`-coefficient and the
/// `sigma_{r,s}` coefficients for `r + s + 2 <= depth`, through `z^order`.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodResult {
    pub depth: usize,
    pub order: i64,
    pub chart: String,
    pub method: Method,
    pub elt: MetabElt<ZLSeries>,
}

impl PeriodResult {
    fn new(data: &KZBData, chart: &Chart, order: i64, method: Method, elt: MetabElt<ZLSeries>) -> Self {
        PeriodResult {
            depth: data.depth,
            order,
            chart: chart.label(),
            method,
            elt: elt.map(|c| c.truncate(order)),
        }
    }

    pub fn a_coeff(&self) -> ZLSeries {
        self.elt.a()
    }

    pub fn b_coeff(&self) -> ZLSeries {
        self.elt.b()
    }

    pub fn sigma(&self, r: usize, s: usize) -> ZLSeries {
        self.elt.sigma(r, s)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut sigma = Vec::new();
        for (b, c) in self.elt.terms() {
            if let Basis::Sigma(r, s) = b {
                sigma.push(serde_json::json!({"r": r, "s": s, "series": c.to_json()}));
            }
        }
        let b = self.b_coeff();
        serde_json::json!({
            "depth": self.depth,
            "order": self.order,
            "chart": self.chart,
            "method": self.method,
            "A": self.a_coeff().to_json(),
            "B": if b.is_zero() { serde_json::json!("0/1") } else { b.to_json() },
            "sigma": sigma,
        })
    }
}

/// `log(exp(-hB B) exp(h))`: removes the `B`-part of `h`.
pub fn iota_of<R: Ring>(h: &MetabElt<R>) -> Result<MetabElt<R>> {
    let minus_b = MetabElt::basis(h.depth(), Basis::B).scale(&h.b().negated());
    metab_bch(&minus_b, h)
}

/// Applies `sum k_{ij} U^i V^j` with `U = hA ad_A`, `V = hB ad_B` to `v` in
/// the derived algebra.
fn apply_kernel(v: &MetabElt<ZLSeries>, ha: &ZLSeries, hb: &ZLSeries) -> Result<MetabElt<ZLSeries>> {
    let d = v.depth();
    let mut out = MetabElt::zero(d);
    if d < 2 {
        return Ok(out);
    }
    let k = kernel_bch(d - 2)?;
    let mut ui = v.clone();
    for i in 0..=d - 2 {
        let mut vj = ui.clone();
        for j in 0..=d - 2 - i {
            let c = k.coeff(i, j);
            if !c.is_zero() {
                out = out.add(&vj.map(|x| x.scaled(&c)))?;
            }
            vj = vj.ad_letter(Basis::B).scale(hb);
            if vj.is_zero() {
                break;
            }
        }
        ui = ui.ad_letter(Basis::A).scale(ha);
        if ui.is_zero() {
            break;
        }
    }
    Ok(out)
}

/// Closed form
/// `hA A + sum g_{r,s} sigma_{r,s} - hB K(U,V)(-hA sigma_00 + sum g_{r,s} sigma_{r+1,s})`.
pub fn period_map_rhs(data: &KZBData, chart: &Chart, order: i64) -> Result<(PeriodResult, GSeries)> {
    let gs = g_series(data, chart, order)?;
    let n = data.depth;
    let mut base = MetabElt::<ZLSeries>::zero(n);
    base.add_at(Basis::A, &gs.ha);
    let mut inner = MetabElt::<ZLSeries>::zero(n);
    inner.add_at(Basis::Sigma(0, 0), &gs.ha.negated());
    for (&(r, s), g) in &gs.g {
        base.add_at(Basis::Sigma(r, s), g);
        inner.add_at(Basis::Sigma(r + 1, s), g);
    }
    let corr = apply_kernel(&inner, &gs.ha, &gs.hb)?.scale(&gs.hb);
    let elt = base.sub(&corr)?;
    Ok((PeriodResult::new(data, chart, order, Method::ClosedForm, elt), gs))
}

/// `iota` of the projected logarithm of the free flat section.
pub fn period_map_oracle(data: &KZBData, chart: &Chart, order: i64) -> Result<PeriodResult> {
    let h = free_log(data, chart, order)?;
    Ok(PeriodResult::new(data, chart, order, Method::Oracle, iota_of(&h)?))
}

/// One coefficient where the closed form and the oracle differ.
#[derive(Clone, Debug, Serialize)]
pub struct PeriodMismatch {
    pub coefficient: String,
    /// Lowest `(z power, log power)` at which they differ.
    pub first_term: Option<(i64, usize)>,
    pub closed_form: serde_json::Value,
    pub oracle: serde_json::Value,
}

/// Outcome of [`verify_theorems`].
#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub rhs: PeriodResult,
    pub oracle: PeriodResult,
    pub g: GSeries,
    pub mismatches: Vec<PeriodMismatch>,
    pub conventions: Conventions,
}

impl TheoremReport {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty() && self.g.mismatch.is_none()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "holds": self.holds(),
            "mismatches": self.mismatches,
            "g_closed_form_mismatch": self.g.mismatch,
            "conventions": self.conventions,
        })
    }
}

fn first_term(a: &ZLSeries, b: &ZLSeries) -> Option<(i64, usize)> {
    a.minus(b).terms().into_iter().map(|(n, j, _)| (n, j)).min()
}

/// Compares closed form and oracle on every basis coefficient through `z^order`.
pub fn verify_theorems(data: &KZBData, chart: &Chart, order: i64) -> Result<TheoremReport> {
    let (rhs, g) = period_map_rhs(data, chart, order)?;
    let oracle = period_map_oracle(data, chart, order)?;
    let dim = Basis::dim(data.depth);
    let found = par::map_range(dim, |i| {
        let b = Basis::from_index(i);
        let (x, y) = (rhs.elt.get(b), oracle.elt.get(b));
        if x.agrees_through(&y, order) {
            None
        } else {
            Some(PeriodMismatch {
                coefficient: b.label(),
                first_term: first_term(&x, &y),
                closed_form: x.to_json(),
                oracle: y.to_json(),
            })
        }
    });
    Ok(TheoremReport {
        rhs,
        oracle,
        g,
        mismatches: found.into_iter().flatten().collect(),
        conventions: Conventions::default(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurveParams;
    use crate::formal::{int, Rational};
    use crate::kzb::build_kzb;

    #[test]
    fn iota_removes_b() {
        let h = MetabElt::<Rational>::generators(5, int(2), int(3));
        let i = iota_of(&h).unwrap();
        assert!(i.b().is_zero());
        assert_eq!(i.a(), int(2));
        let a = MetabElt::<Rational>::generators(5, int(2), int(0));
        assert_eq!(iota_of(&a).unwrap(), a);
    }

    #[test]
    fn low_depth_theorems() {
        let p = CurveParams::new(int(1), int(0)).unwrap();
        let chart = Chart::point(&p, int(4), int(4)).unwrap();
        for depth in [2, 3, 4] {
            let data = build_kzb(&p, depth).unwrap();
            let r = verify_theorems(&data, &chart, 8).unwrap();
            assert!(r.holds(), "depth {depth}: {:?}", r.to_json());
            assert!(r.rhs.b_coeff().is_zero());
        }
        let data = build_kzb(&p, 4).unwrap();
        let r = verify_theorems(&data, &Chart::infinity(&p), 8).unwrap();
        assert!(r.holds(), "tangential: {:?}", r.to_json());
    }
}
