//! The flat section of the adjoint connection on the metabelian quotient,
//! written as `1 + sum G*_{u,v} tau_{u,v} + sum G_{r,s} ad_sigma_{r,s}`.
//!
//! With `ad(omega) = alpha tau_{0,1} + beta tau_{1,0} - alpha sum_k p_k ad_sigma_{k-1,0}`
//! and `ad_A tau_{u,0} = tau_{u,1} + ad_sigma_{u-1,0}`, flatness reads
//!
//! * `dG*_{u,v} = beta G*_{u-1,v} + alpha G*_{u,v-1}`
//! * `dG_{i,0}  = beta G_{i-1,0} + alpha G*_{i+1,0} - alpha p_{i+1}`
//! * `dG_{i,j}  = beta G_{i-1,j} + alpha G_{i,j-1}` for `j >= 1`
//!
//! Three independent computations are provided: this recursion, the closed
//! sum of iterated integrals it integrates to, and the free-algebra route
//! `exp(ad(project(log G)))`.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::build::KZBData;
use crate::curve::{Chart, CurveFn};
use crate::error::Result;
use crate::formal::{Differential, Ring, ZLSeries};
use crate::freealg::{dynkin_log, flat_section, project_metab, ConnectionForm, NCSeries};
use crate::metabelian::{span_decompose, MetabElt, WOp};

/// Local one-forms entering the adjoint recursion, as `dz`-coefficients.
#[derive(Clone, Debug)]
pub struct AdjointForms {
    pub alpha: ZLSeries,
    pub beta: ZLSeries,
    /// `alpha * p_k` (rational chart, `p_1 = 0`) or `alpha * q_k` (puncture).
    pub coeff: Vec<ZLSeries>,
    pub tangential: bool,
}

/// Extra precision carried through the integrations.
const MARGIN: i64 = 4;

/// Forms of `omega_KZB` at a rational chart, or of `omega'_KZB` (with `beta - df`
/// and `q_k`, `k >= 1`) at the puncture.
pub fn adjoint_forms(data: &KZBData, chart: &Chart, order: i64) -> Result<AdjointForms> {
    let ex = chart.expander(order + MARGIN + data.depth as i64);
    let tangential = chart.is_infinity();
    let x = CurveFn::x(&data.params);
    let (beta, fns, first) = if tangential {
        (x.minus(&data.f.derivative()), &data.pq.q, 1)
    } else {
        (x, &data.pq.p, 2)
    };
    let mut coeff = vec![ZLSeries::zero(); fns.len()];
    for k in first..fns.len() {
        coeff[k] = ex.form(&fns[k])?;
    }
    Ok(AdjointForms {
        alpha: ex.form(&CurveFn::one())?,
        beta: ex.form(&beta)?,
        coeff,
        tangential,
    })
}

/// Span coefficients of the adjoint flat section.
#[derive(Clone, Debug, PartialEq)]
pub struct AdjointSection {
    pub gstar: BTreeMap<(usize, usize), ZLSeries>,
    pub g: BTreeMap<(usize, usize), ZLSeries>,
}

impl AdjointSection {
    pub fn gstar(&self, u: usize, v: usize) -> ZLSeries {
        self.gstar.get(&(u, v)).cloned().unwrap_or_else(ZLSeries::zero)
    }

    pub fn g(&self, r: usize, s: usize) -> ZLSeries {
        self.g.get(&(r, s)).cloned().unwrap_or_else(ZLSeries::zero)
    }

    fn truncated(mut self, order: i64) -> Self {
        for v in self.gstar.values_mut().chain(self.g.values_mut()) {
            *v = v.truncate(order);
        }
        self
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries = |m: &BTreeMap<(usize, usize), ZLSeries>, a: &str, b: &str| -> Vec<serde_json::Value> {
            m.iter()
                .map(|(&(i, j), s)| serde_json::json!({a: i, b: j, "series": s.to_json()}))
                .collect()
        };
        serde_json::json!({
            "Gstar": entries(&self.gstar, "u", "v"),
            "G": entries(&self.g, "r", "s"),
        })
    }
}

fn integrate(s: ZLSeries, order: i64) -> ZLSeries {
    s.antiderivative().truncate(order + MARGIN)
}

/// Primary route: integrates the recursion for `G*_{u,v}` with `u + v <= max_g + 1`
/// and `G_{r,s}` with `r + s <= max_g`.
pub fn adjoint_recursion(forms: &AdjointForms, max_g: usize, order: i64) -> AdjointSection {
    let (a, b) = (&forms.alpha, &forms.beta);
    let mut gstar: BTreeMap<(usize, usize), ZLSeries> = BTreeMap::new();
    gstar.insert((0, 0), ZLSeries::one());
    let get = |m: &BTreeMap<(usize, usize), ZLSeries>, k: (usize, usize)| m.get(&k).cloned();
    for t in 1..=max_g + 1 {
        for u in 0..=t {
            let v = t - u;
            let mut rhs = ZLSeries::zero();
            if u >= 1 {
                if let Some(x) = get(&gstar, (u - 1, v)) {
                    rhs = rhs.plus(&b.times(&x));
                }
            }
            if v >= 1 {
                if let Some(x) = get(&gstar, (u, v - 1)) {
                    rhs = rhs.plus(&a.times(&x));
                }
            }
            gstar.insert((u, v), integrate(rhs, order));
        }
    }
    let mut g: BTreeMap<(usize, usize), ZLSeries> = BTreeMap::new();
    for t in 0..=max_g {
        for i in 0..=t {
            let j = t - i;
            let mut rhs = ZLSeries::zero();
            if i >= 1 {
                rhs = rhs.plus(&b.times(&g[&(i - 1, j)]));
            }
            if j == 0 {
                rhs = rhs.plus(&a.times(&gstar[&(i + 1, 0)]));
                if let Some(p) = forms.coeff.get(i + 1) {
                    rhs = rhs.minus(p);
                }
            } else {
                rhs = rhs.plus(&a.times(&g[&(i, j - 1)]));
            }
            g.insert((i, j), integrate(rhs, order));
        }
    }
    gstar.remove(&(0, 0));
    AdjointSection { gstar, g }.truncated(order)
}

/// Iterated integrals over sequences of form ids, memoized by suffix.
struct Integrals<'a> {
    forms: &'a AdjointForms,
    order: i64,
    memo: HashMap<Vec<u8>, ZLSeries>,
}

const ALPHA: u8 = 0;
const BETA: u8 = 1;

impl<'a> Integrals<'a> {
    fn form(&self, id: u8) -> &ZLSeries {
        match id {
            ALPHA => &self.forms.alpha,
            BETA => &self.forms.beta,
            k => &self.forms.coeff[(k - 2) as usize],
        }
    }

    fn get(&mut self, seq: &[u8]) -> ZLSeries {
        if seq.is_empty() {
            return ZLSeries::one();
        }
        if let Some(s) = self.memo.get(seq) {
            return s.clone();
        }
        let rest = self.get(&seq[1..]);
        let s = integrate(self.form(seq[0]).times(&rest), self.order);
        self.memo.insert(seq.to_vec(), s.clone());
        s
    }
}

/// Every arrangement of `nb` copies of `BETA` and `na` copies of `ALPHA`.
fn arrangements(nb: usize, na: usize) -> Vec<Vec<u8>> {
    let n = nb + na;
    (0u64..1 << n)
        .filter(|m| m.count_ones() as usize == nb)
        .map(|m| (0..n).map(|k| if (m >> k) & 1 == 1 { BETA } else { ALPHA }).collect())
        .collect()
}

/// Secondary route: the closed sums
/// `G*_{u,v} = sum_{w in sh(beta^u, alpha^v)} I(w)` and
/// `G_{i,j} = sum_{k<=i} sum_{w in sh(beta^(i-k), alpha^j)} [I(w, alpha, beta^(k+1)) - I(w, alpha p_{k+1})]`.
pub fn adjoint_generating(forms: &AdjointForms, max_g: usize, order: i64) -> AdjointSection {
    let mut ii = Integrals {
        forms,
        order,
        memo: HashMap::new(),
    };
    let mut gstar = BTreeMap::new();
    for t in 1..=max_g + 1 {
        for u in 0..=t {
            let mut acc = ZLSeries::zero();
            for w in arrangements(u, t - u) {
                acc = acc.plus(&ii.get(&w));
            }
            gstar.insert((u, t - u), acc);
        }
    }
    let mut g = BTreeMap::new();
    for t in 0..=max_g {
        for i in 0..=t {
            let j = t - i;
            let mut acc = ZLSeries::zero();
            for k in 0..=i {
                for w in arrangements(i - k, j) {
                    let mut s1 = w.clone();
                    s1.push(ALPHA);
                    s1.extend(std::iter::repeat_n(BETA, k + 1));
                    acc = acc.plus(&ii.get(&s1));
                    if forms.coeff.get(k + 1).is_some_and(|c| !c.is_zero()) {
                        let mut s2 = w;
                        s2.push(2 + (k + 1) as u8);
                        acc = acc.minus(&ii.get(&s2));
                    }
                }
            }
            g.insert((i, j), acc);
        }
    }
    AdjointSection { gstar, g }.truncated(order)
}

/// The flat section of `omega_KZB` (or logarithmic `omega'_KZB` at the
/// puncture) in the free algebra, through `z^(order + MARGIN)`.
pub fn free_flat_section(data: &KZBData, chart: &Chart, order: i64) -> Result<NCSeries<ZLSeries>> {
    let omega = if chart.is_infinity() {
        &data.omega_prime
    } else {
        &data.omega
    };
    let local = ConnectionForm::Global(omega.clone()).localize(chart, order + MARGIN + data.depth as i64)?;
    let ConnectionForm::Local { series, logarithmic } = local else {
        unreachable!("localize returns a local form")
    };
    Ok(flat_section(&series, logarithmic, order + MARGIN)?.map(|c| c.truncate(order + MARGIN)))
}

/// `log` of the free flat section, projected to the metabelian quotient.
pub fn free_log(data: &KZBData, chart: &Chart, order: i64) -> Result<MetabElt<ZLSeries>> {
    let g = free_flat_section(data, chart, order)?;
    // Sparse products skip zero coefficients and so overstate precision;
    // capping after every product discards the spurious tail.
    let h = g.log_with(|c| c.truncate(order + MARGIN))?;
    project_metab(&h)
}

/// Tertiary route: `exp(ad h)` for `h` the projected logarithm of the free
/// flat section (read off through the Dynkin operator), zero-extended one
/// weight up and decomposed in the span.
pub fn adjoint_free(data: &KZBData, chart: &Chart, order: i64) -> Result<AdjointSection> {
    let h = dynkin_log(&free_flat_section(data, chart, order)?)
        .map(|c| c.truncate(order + MARGIN))
        .with_depth(data.depth + 1);
    let span = span_decompose(&WOp::exp_ad(&h))?;
    let n = data.depth;
    let gstar = span.gstar.into_iter().filter(|((u, v), _)| u + v <= n).collect();
    let g = span.g.into_iter().filter(|((r, s), _)| r + s + 2 <= n).collect();
    Ok(AdjointSection { gstar, g }.truncated(order))
}

/// The recursion, at the index range the data supports.
pub fn adjoint_flat_section(data: &KZBData, chart: &Chart, order: i64) -> Result<AdjointSection> {
    let forms = adjoint_forms(data, chart, order)?;
    Ok(adjoint_recursion(&forms, data.depth - 2, order))
}

/// One disagreement between two routes.
#[derive(Clone, Debug, Serialize)]
pub struct RouteDisagreement {
    pub left: &'static str,
    pub right: &'static str,
    pub coefficient: &'static str,
    pub index: (usize, usize),
}

/// All three routes and their pairwise disagreements.
#[derive(Clone, Debug)]
pub struct AdjointComparison {
    pub recursion: AdjointSection,
    pub generating: AdjointSection,
    pub free: AdjointSection,
    pub disagreements: Vec<RouteDisagreement>,
}

fn compare(
    names: (&'static str, &'static str),
    a: &AdjointSection,
    b: &AdjointSection,
    max_gstar: usize,
    max_g: usize,
    order: i64,
    out: &mut Vec<RouteDisagreement>,
) {
    for t in 1..=max_gstar {
        for u in 0..=t {
            if !a.gstar(u, t - u).agrees_through(&b.gstar(u, t - u), order) {
                out.push(RouteDisagreement {
                    left: names.0,
                    right: names.1,
                    coefficient: "Gstar",
                    index: (u, t - u),
                });
            }
        }
    }
    for t in 0..=max_g {
        for r in 0..=t {
            if !a.g(r, t - r).agrees_through(&b.g(r, t - r), order) {
                out.push(RouteDisagreement {
                    left: names.0,
                    right: names.1,
                    coefficient: "G",
                    index: (r, t - r),
                });
            }
        }
    }
}

/// Runs all three routes for `G_{r,s}` with `r + s <= depth - 2` and compares
/// them through `z^order`.
pub fn adjoint_routes(data: &KZBData, chart: &Chart, order: i64) -> Result<AdjointComparison> {
    let forms = adjoint_forms(data, chart, order)?;
    let max_g = data.depth - 2;
    let recursion = adjoint_recursion(&forms, max_g, order);
    let generating = adjoint_generating(&forms, max_g, order);
    let free = adjoint_free(data, chart, order)?;
    let mut disagreements = Vec::new();
    let max_gstar = data.depth;
    compare(
        ("recursion", "generating"),
        &recursion,
        &generating,
        max_g + 1,
        max_g,
        order,
        &mut disagreements,
    );
    compare(
        ("recursion", "free"),
        &recursion,
        &free,
        max_gstar.min(max_g + 1),
        max_g,
        order,
        &mut disagreements,
    );
    Ok(AdjointComparison {
        recursion,
        generating,
        free,
        disagreements,
    })
}
