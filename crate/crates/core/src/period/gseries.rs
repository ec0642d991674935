use std::collections::BTreeMap;

use serde::Serialize;

use crate::curve::Chart;
use crate::error::Result;
use crate::formal::Ring;
use crate::formal::ZLSeries;
use crate::kzb::{adjoint_flat_section, KZBData};
use crate::metabelian::{first_difference, grouplike_log, grouplike_log_closed, BernoulliSign, SpanCoeffs};

/// `g_{r,s}` for `r + s <= depth - 2`, with `hA = int alpha` and `hB = int beta`
/// (`int beta'` at the puncture).
#[derive(Clone, Debug)]
pub struct GSeries {
    pub ha: ZLSeries,
    pub hb: ZLSeries,
    /// Triangular solve on the adjoint flat section.
    pub g: BTreeMap<(usize, usize), ZLSeries>,
    /// Closed generating series with `B^-` and kernel `T`.
    pub closed: BTreeMap<(usize, usize), ZLSeries>,
    /// First index where the two disagree.
    pub mismatch: Option<(usize, usize)>,
}

#[derive(Serialize)]
struct Entry {
    r: usize,
    s: usize,
    series: serde_json::Value,
}

impl GSeries {
    pub fn get(&self, r: usize, s: usize) -> ZLSeries {
        self.g.get(&(r, s)).cloned().unwrap_or_else(ZLSeries::zero)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let g: Vec<Entry> = self
            .g
            .iter()
            .map(|(&(r, s), c)| Entry {
                r,
                s,
                series: c.to_json(),
            })
            .collect();
        serde_json::json!({
            "hA": self.ha.to_json(),
            "hB": self.hb.to_json(),
            "g": g,
            "closed_form_mismatch": self.mismatch,
        })
    }
}

pub fn g_series(data: &KZBData, chart: &Chart, order: i64) -> Result<GSeries> {
    let section = adjoint_flat_section(data, chart, order)?;
    let span = SpanCoeffs {
        c: ZLSeries::one(),
        gstar: section.gstar,
        g: section.g,
    };
    let ha = span.gstar(0, 1);
    let hb = span.gstar(1, 0);
    let degree = data.depth - 2;
    let trunc = |m: BTreeMap<(usize, usize), ZLSeries>| -> BTreeMap<(usize, usize), ZLSeries> {
        m.into_iter()
            .map(|(k, v)| (k, v.truncate(order)))
            .filter(|(_, v)| !v.is_zero())
            .collect()
    };
    let g = trunc(grouplike_log(&span, &ha, &hb, degree)?);
    let closed = trunc(grouplike_log_closed(&span, &ha, &hb, degree, BernoulliSign::Minus)?);
    let mismatch = first_difference(&g, &closed, degree);
    Ok(GSeries {
        ha,
        hb,
        g,
        closed,
        mismatch,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurveParams;
    use crate::formal::{int, iterated_integral, rat};
    use crate::kzb::{adjoint_forms, build_kzb};

    #[test]
    fn g00_and_basepoint() {
        let p = CurveParams::new(int(1), int(0)).unwrap();
        let data = build_kzb(&p, 4).unwrap();
        let chart = Chart::point(&p, int(4), int(4)).unwrap();
        let order = 8;
        let gs = g_series(&data, &chart, order).unwrap();
        assert!(gs.mismatch.is_none());
        let f = adjoint_forms(&data, &chart, order).unwrap();
        // g_00 = int(alpha beta) - hA hB / 2 with G_00 = int(alpha beta)
        let expect =
            iterated_integral(&[f.alpha.clone(), f.beta.clone()]).minus(&gs.ha.times(&gs.hb).scaled(&rat(1, 2)));
        assert!(gs.get(0, 0).agrees_through(&expect, order));
        for v in gs.g.values() {
            assert!(v.coeff(0, 0).unwrap().is_zero());
        }
    }
}
