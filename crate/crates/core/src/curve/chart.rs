use std::sync::Arc;

use super::function::{CurveFn, CurveParams};
use super::weierstrass::weierstrass_expansion;
use crate::error::{Error, Result};
use crate::formal::{format_rational, Rational, Ring, ZLSeries};

/// Where the local parameter lives.
#[derive(Clone, Debug, PartialEq)]
pub enum ChartKind {
    /// Affine point with `y0 != 0`; the parameter is `t = x - x0`.
    Point { x0: Rational, y0: Rational },
    /// The puncture, with `x = wp(z)`, `y = wp'(z)`; here `alpha = dz`.
    Infinity,
}

#[derive(Clone, Debug)]
pub struct Chart {
    pub params: Arc<CurveParams>,
    pub kind: ChartKind,
}

impl Chart {
    pub fn point(params: &Arc<CurveParams>, x0: Rational, y0: Rational) -> Result<Self> {
        if !params.contains(&x0, &y0) {
            return Err(Error::NotOnCurve {
                x: format_rational(&x0),
                y: format_rational(&y0),
            });
        }
        if y0.is_zero() {
            return Err(Error::TwoTorsionBasepoint {
                x: format_rational(&x0),
                y: format_rational(&y0),
            });
        }
        Ok(Chart {
            params: params.clone(),
            kind: ChartKind::Point { x0, y0 },
        })
    }

    pub fn infinity(params: &Arc<CurveParams>) -> Self {
        Chart {
            params: params.clone(),
            kind: ChartKind::Infinity,
        }
    }

    pub fn is_infinity(&self) -> bool {
        self.kind == ChartKind::Infinity
    }

    pub fn label(&self) -> String {
        match &self.kind {
            ChartKind::Point { x0, y0 } => format!("{},{}", format_rational(x0), format_rational(y0)),
            ChartKind::Infinity => "tangential".to_string(),
        }
    }

    /// Series of `x` and `y` in the local parameter, valid through `order`.
    pub fn coordinates(&self, order: i64) -> (ZLSeries, ZLSeries) {
        match &self.kind {
            ChartKind::Infinity => weierstrass_expansion(&self.params, order),
            ChartKind::Point { x0, y0 } => {
                let x = ZLSeries::constant(x0.clone()).plus(&ZLSeries::z());
                (x, point_y_series(&self.params, x0, y0, order))
            }
        }
    }

    /// Expansion of `g` in the local parameter through `z^order`.
    pub fn expand(&self, g: &CurveFn, order: i64) -> Result<ZLSeries> {
        Expander::new(self, order).expand(g)
    }

    /// The `dz`-coefficient of the one-form `g * alpha`.
    pub fn form(&self, g: &CurveFn, order: i64) -> Result<ZLSeries> {
        Expander::new(self, order).form(g)
    }

    pub fn expander(&self, order: i64) -> Expander<'_> {
        Expander::new(self, order)
    }
}

/// `y(t)` with `y(t)^2 = h(x0 + t)` and `y(0) = y0`, from
/// `2 y0 y_n = h_n - sum_{0<i<n} y_i y_{n-i}`.
fn point_y_series(params: &CurveParams, x0: &Rational, y0: &Rational, order: i64) -> ZLSeries {
    let h = params.h().shift(x0);
    let n = order.max(0) as usize;
    let mut y: Vec<Rational> = Vec::with_capacity(n + 1);
    y.push(y0.clone());
    let two_y0 = y0 + y0;
    for k in 1..=n {
        let mut s = h.coeff(k);
        for i in 1..k {
            s -= &y[i] * &y[k - i];
        }
        y.push(s / &two_y0);
    }
    ZLSeries::from_coeffs(0, y, order)
}

/// Expansion of curve functions in one chart, reusing the coordinate series.
/// Works at an internal order above the requested one and widens it when pole
/// cancellation eats into the tracked precision.
pub struct Expander<'a> {
    chart: &'a Chart,
    order: i64,
    internal: i64,
    x: ZLSeries,
    y: ZLSeries,
    inv_y: ZLSeries,
    alpha: ZLSeries,
}

impl<'a> Expander<'a> {
    pub fn new(chart: &'a Chart, order: i64) -> Self {
        let margin = if chart.is_infinity() { 12 } else { 0 };
        Self::with_internal(chart, order, order + margin)
    }

    fn with_internal(chart: &'a Chart, order: i64, internal: i64) -> Self {
        let (x, y) = chart.coordinates(internal);
        let inv_y = y.inverse(internal).expect("y is a unit in the chart");
        let alpha = if chart.is_infinity() {
            ZLSeries::one()
        } else {
            inv_y.clone()
        };
        Expander {
            chart,
            order,
            internal,
            x,
            y,
            inv_y,
            alpha,
        }
    }

    fn raw(&self, g: &CurveFn) -> ZLSeries {
        let a = crate::formal::horner(g.a().coeffs(), &self.x);
        let b = crate::formal::horner(g.b().coeffs(), &self.x);
        let mut s = a.plus(&b.times(&self.y));
        for _ in 0..2 * g.h_power() {
            s = s.times(&self.inv_y);
        }
        s
    }

    fn widen(&self, short: i64) -> Expander<'a> {
        Self::with_internal(self.chart, self.order, self.internal + short + 8)
    }

    pub fn expand(&self, g: &CurveFn) -> Result<ZLSeries> {
        if let ChartKind::Point { x0, .. } = &self.chart.kind {
            if g.h_power() > 0 && self.chart.params.h().eval(x0).is_zero() {
                return Err(Error::PoleAtChart);
            }
        }
        let s = self.raw(g);
        if s.prec() >= self.order {
            return Ok(s.truncate(self.order));
        }
        self.widen(self.order - s.prec()).expand(g)
    }

    pub fn form(&self, g: &CurveFn) -> Result<ZLSeries> {
        let s = self.raw(g).times(&self.alpha);
        if s.prec() >= self.order {
            return Ok(s.truncate(self.order));
        }
        self.widen(self.order - s.prec()).form(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal::{int, rat};

    #[test]
    fn y_at_rational_point() {
        let p = CurveParams::new(int(1), int(0)).unwrap();
        let c = Chart::point(&p, int(4), int(4)).unwrap();
        let y = c.expand(&CurveFn::y(&p), 3).unwrap();
        assert_eq!(y.coeff(0, 0).unwrap(), int(4));
        assert_eq!(y.coeff(1, 0).unwrap(), rat(33, 2));
        assert!(Chart::point(&p, int(4), int(5)).is_err());
        assert!(matches!(
            Chart::point(&p, int(0), int(0)),
            Err(Error::TwoTorsionBasepoint { .. })
        ));
    }

    #[test]
    fn constants_and_x_at_infinity() {
        let p = CurveParams::new(int(1), int(0)).unwrap();
        let c = Chart::infinity(&p);
        let x = c.expand(&CurveFn::x(&p), 6).unwrap();
        assert_eq!(x.coeff(-2, 0).unwrap(), int(1));
        assert_eq!(x.coeff(2, 0).unwrap(), int(3));
        let k = c.expand(&CurveFn::constant(rat(2, 3)), 6).unwrap();
        assert_eq!(k, ZLSeries::constant(rat(2, 3)).truncate(6));
    }
}
