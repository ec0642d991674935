use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use super::poly::Poly;
use crate::error::{Error, Result};
use crate::formal::{format_rational, int, rat, Differential, Rational, Ring};

/// The curve `y^2 = h(x) = 4x^3 - 60 e4 x - 140 e6`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveParams {
    #[serde(serialize_with = "ser_rational")]
    pub e4: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub e6: Rational,
}

fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(q))
}

impl CurveParams {
    pub fn new(e4: Rational, e6: Rational) -> Result<Arc<Self>> {
        let p = CurveParams { e4, e6 };
        if p.discriminant().is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(Arc::new(p))
    }

    /// `h(x) = 4x^3 - 60 e4 x - 140 e6`.
    pub fn h(&self) -> Poly {
        Poly::new(vec![
            &self.e6 * int(-140),
            &self.e4 * int(-60),
            Rational::zero(),
            int(4),
        ])
    }

    /// Discriminant of `h`: `-4 a c^3 - 27 a^2 d^2` for `a x^3 + c x + d`.
    pub fn discriminant(&self) -> Rational {
        let a = int(4);
        let c = &self.e4 * int(-60);
        let d = &self.e6 * int(-140);
        -(int(4) * &a * &c * &c * &c) - int(27) * &a * &a * &d * &d
    }

    pub fn contains(&self, x: &Rational, y: &Rational) -> bool {
        y * y == self.h().eval(x)
    }
}

/// `(a(x) + b(x) y) / h(x)^k` with `k` minimal, so the representation is
/// unique. `k > 0` only arises for functions with poles at the 2-torsion
/// points, such as `2x^2/y`.
///
/// Constants carry no curve parameters, so `zero()` and `one()` exist without
/// a curve; any operation that needs the curve relation takes it from
/// whichever operand has it.
#[derive(Clone)]
pub struct CurveFn {
    a: Poly,
    b: Poly,
    k: u32,
    params: Option<Arc<CurveParams>>,
}

impl CurveFn {
    pub fn new(params: &Arc<CurveParams>, a: Poly, b: Poly) -> Self {
        Self::with_denominator(params, a, b, 0)
    }

    /// `(a + b y) / h^k`, normalised.
    pub fn with_denominator(params: &Arc<CurveParams>, a: Poly, b: Poly, k: u32) -> Self {
        let mut f = CurveFn {
            a,
            b,
            k,
            params: Some(params.clone()),
        };
        f.normalize();
        f
    }

    pub fn constant(c: Rational) -> Self {
        CurveFn {
            a: Poly::constant(c),
            b: Poly::zero(),
            k: 0,
            params: None,
        }
    }

    pub fn x(params: &Arc<CurveParams>) -> Self {
        Self::new(params, Poly::x(), Poly::zero())
    }

    pub fn y(params: &Arc<CurveParams>) -> Self {
        Self::new(params, Poly::zero(), Poly::constant(Rational::one()))
    }

    /// `c x^i y^j` for `j` in `{0, 1}`.
    pub fn monomial(params: &Arc<CurveParams>, c: Rational, i: usize, j: usize) -> Self {
        let m = Poly::monomial(c, i);
        if j == 0 {
            Self::new(params, m, Poly::zero())
        } else {
            Self::new(params, Poly::zero(), m)
        }
    }

    pub fn a(&self) -> &Poly {
        &self.a
    }

    pub fn b(&self) -> &Poly {
        &self.b
    }

    /// Power of `h` in the denominator.
    pub fn h_power(&self) -> u32 {
        self.k
    }

    pub fn params(&self) -> Option<&Arc<CurveParams>> {
        self.params.as_ref()
    }

    /// True for elements of `Q[x, y]`.
    pub fn is_polynomial(&self) -> bool {
        self.k == 0
    }

    /// Constant value, if the function is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        (self.k == 0 && self.b.is_zero() && self.a.degree().unwrap_or(0) == 0).then(|| self.a.coeff(0))
    }

    fn h(&self) -> Poly {
        self.params
            .as_ref()
            .expect("curve relation needed but operand has no curve")
            .h()
    }

    fn normalize(&mut self) {
        if self.a.is_zero() && self.b.is_zero() {
            self.k = 0;
            return;
        }
        if self.k == 0 {
            return;
        }
        let h = self.h();
        while self.k > 0 {
            match (self.a.exact_div(&h), self.b.exact_div(&h)) {
                (Some(a), Some(b)) => {
                    self.a = a;
                    self.b = b;
                    self.k -= 1;
                }
                _ => break,
            }
        }
    }

    fn merged_params(&self, rhs: &Self) -> Option<Arc<CurveParams>> {
        match (&self.params, &rhs.params) {
            (Some(p), Some(q)) => {
                debug_assert!(p == q, "functions on different curves");
                Some(p.clone())
            }
            (Some(p), None) | (None, Some(p)) => Some(p.clone()),
            (None, None) => None,
        }
    }

    fn raise(&self, k: u32, h: &Poly) -> (Poly, Poly) {
        let mut a = self.a.clone();
        let mut b = self.b.clone();
        for _ in self.k..k {
            a = a.mul(h);
            b = b.mul(h);
        }
        (a, b)
    }

    fn combine(&self, rhs: &Self, sign: bool) -> Self {
        let params = self.merged_params(rhs);
        let k = self.k.max(rhs.k);
        let (a1, b1, a2, b2) = if self.k == rhs.k {
            (self.a.clone(), self.b.clone(), rhs.a.clone(), rhs.b.clone())
        } else {
            let h = params.as_ref().expect("denominator without curve").h();
            let (a1, b1) = self.raise(k, &h);
            let (a2, b2) = rhs.raise(k, &h);
            (a1, b1, a2, b2)
        };
        let (a, b) = if sign {
            (a1.add(&a2), b1.add(&b2))
        } else {
            (a1.sub(&a2), b1.sub(&b2))
        };
        let mut f = CurveFn { a, b, k, params };
        f.normalize();
        f
    }

    /// Value at an affine point `(x0, y0)` of the curve with `y0 != 0` when
    /// the function has a denominator.
    pub fn eval(&self, x0: &Rational, y0: &Rational) -> Result<Rational> {
        let num = self.a.eval(x0) + self.b.eval(x0) * y0;
        if self.k == 0 {
            return Ok(num);
        }
        let hx = self.h().eval(x0);
        if hx.is_zero() {
            return Err(Error::PoleAtChart);
        }
        Ok(num / hx.pow(self.k as i32))
    }

    fn json(&self) -> Value {
        json!({
            "a": self.a.to_strings(),
            "b": self.b.to_strings(),
            "h_power": self.k,
            "expr": self.to_string(),
        })
    }
}

impl PartialEq for CurveFn {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.a == other.a && self.b == other.b
    }
}

impl Ring for CurveFn {
    fn zero() -> Self {
        Self::constant(Rational::zero())
    }

    fn one() -> Self {
        Self::constant(Rational::one())
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn plus(&self, rhs: &Self) -> Self {
        self.combine(rhs, true)
    }

    fn minus(&self, rhs: &Self) -> Self {
        self.combine(rhs, false)
    }

    fn negated(&self) -> Self {
        CurveFn {
            a: self.a.neg(),
            b: self.b.neg(),
            k: self.k,
            params: self.params.clone(),
        }
    }

    fn times(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if let Some(c) = self.as_constant() {
            return rhs.scaled(&c);
        }
        if let Some(c) = rhs.as_constant() {
            return self.scaled(&c);
        }
        let params = self.merged_params(rhs);
        let mut a = self.a.mul(&rhs.a);
        if !self.b.is_zero() && !rhs.b.is_zero() {
            let h = params.as_ref().expect("y^2 without curve").h();
            a = a.add(&self.b.mul(&rhs.b).mul(&h));
        }
        let b = self.a.mul(&rhs.b).add(&self.b.mul(&rhs.a));
        let mut f = CurveFn {
            a,
            b,
            k: self.k + rhs.k,
            params,
        };
        f.normalize();
        f
    }

    fn scaled(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        CurveFn {
            a: self.a.scale(c),
            b: self.b.scale(c),
            k: self.k,
            params: self.params.clone(),
        }
    }

    fn from_rational(c: Rational) -> Self {
        Self::constant(c)
    }

    fn to_json(&self) -> Value {
        self.json()
    }
}

impl Differential for CurveFn {
    /// The `alpha`-coefficient of `dF`, i.e. `y dF/dx`:
    /// `[b' h^2 + b h h'/2 - k b h h' + y (a' h - k a h')] / h^(k+1)`.
    fn derivative(&self) -> Self {
        let Some(params) = self.params.clone() else {
            return Self::zero();
        };
        let h = params.h();
        let hp = h.derivative();
        let kq = int(self.k as i64);
        if self.k == 0 {
            // y (a' + b' y + b h'/(2y)) = b' h + b h'/2 + a' y
            let a = self.b.derivative().mul(&h).add(&self.b.mul(&hp).scale(&rat(1, 2)));
            return CurveFn::new(&params, a, self.a.derivative());
        }
        let hh = h.mul(&hp);
        let a = self
            .b
            .derivative()
            .mul(&h)
            .mul(&h)
            .add(&self.b.mul(&hh).scale(&rat(1, 2)))
            .sub(&self.b.mul(&hh).scale(&kq));
        let b = self.a.derivative().mul(&h).sub(&self.a.mul(&hp).scale(&kq));
        CurveFn::with_denominator(&params, a, b, self.k + 1)
    }
}

impl fmt::Display for CurveFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &Poly| {
            let s = p.to_string();
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        let yterm = |b: &Poly| {
            let s = wrap(b);
            match s.as_str() {
                "1" => "y".to_string(),
                "-1" => "-y".to_string(),
                _ => format!("{s}*y"),
            }
        };
        let num = match (self.a.is_zero(), self.b.is_zero()) {
            (true, true) => "0".to_string(),
            (false, true) => self.a.to_string(),
            (true, false) => yterm(&self.b),
            (false, false) => {
                let yt = yterm(&self.b);
                match yt.strip_prefix('-') {
                    Some(rest) => format!("{} - {rest}", self.a),
                    None => format!("{} + {yt}", self.a),
                }
            }
        };
        match self.k {
            0 => write!(f, "{num}"),
            k if self.a.is_zero() => {
                let e = 2 * k - 1;
                let b = self.b.to_string();
                let b = if b == "1" { b } else { wrap(&self.b) };
                if e == 1 {
                    write!(f, "{b}/y")
                } else {
                    write!(f, "{b}/y^{e}")
                }
            }
            k => write!(f, "({num})/y^{}", 2 * k),
        }
    }
}

impl fmt::Debug for CurveFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
