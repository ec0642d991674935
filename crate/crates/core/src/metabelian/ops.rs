use std::collections::BTreeMap;

use super::elt::{Basis, MetabElt};
use crate::error::{Error, Result};
use crate::formal::{rat, Rational, Ring};
use crate::par;

/// Endomorphism of the truncated metabelian algebra, stored as a dense
/// column-major matrix: column `j` is the image of basis vector `j`.
#[derive(Clone, PartialEq)]
pub struct WOp<R> {
    depth: usize,
    cols: Vec<MetabElt<R>>,
}

impl<R: Ring> WOp<R> {
    pub fn from_columns(depth: usize, cols: Vec<MetabElt<R>>) -> Self {
        assert_eq!(cols.len(), Basis::dim(depth));
        assert!(cols.iter().all(|c| c.depth() == depth));
        WOp { depth, cols }
    }

    /// Builds the operator whose value on each basis vector is `f(b)`.
    pub fn from_fn(depth: usize, f: impl Fn(Basis) -> MetabElt<R> + Sync + Send) -> Self {
        let cols = par::map_range(Basis::dim(depth), |j| f(Basis::from_index(j)));
        Self::from_columns(depth, cols)
    }

    pub fn zero(depth: usize) -> Self {
        Self::from_fn(depth, |_| MetabElt::zero(depth))
    }

    pub fn identity(depth: usize) -> Self {
        Self::from_fn(depth, |b| MetabElt::basis(depth, b))
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, b: Basis) -> &MetabElt<R> {
        &self.cols[b.index()]
    }

    /// Matrix entry `<row, M col>`.
    pub fn entry(&self, row: usize, col: usize) -> R {
        self.cols[col].coeffs()[row].clone()
    }

    pub fn apply(&self, v: &MetabElt<R>) -> Result<MetabElt<R>> {
        if v.depth() != self.depth {
            return Err(Error::DepthMismatch {
                left: self.depth,
                right: v.depth(),
            });
        }
        let mut out = MetabElt::zero(self.depth);
        for (c, col) in v.coeffs().iter().zip(&self.cols) {
            if !c.is_zero() {
                out = out.add(&col.scale(c))?;
            }
        }
        Ok(out)
    }

    /// `ad_u = [u, -]`.
    pub fn ad(u: &MetabElt<R>) -> Self {
        let d = u.depth();
        Self::from_fn(d, |b| u.bracket(&MetabElt::basis(d, b)).expect("same depth"))
    }

    /// `tau_{u,v} = ad_B^u ad_A^v`.
    pub fn tau(depth: usize, u: usize, v: usize) -> Self {
        Self::from_fn(depth, |b| {
            let mut e = MetabElt::basis(depth, b);
            for _ in 0..v {
                e = e.ad_letter(Basis::A);
            }
            for _ in 0..u {
                e = e.ad_letter(Basis::B);
            }
            e
        })
    }

    pub fn ad_sigma(depth: usize, r: usize, s: usize) -> Self {
        Self::ad(&MetabElt::basis(depth, Basis::Sigma(r, s)))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.depth != other.depth {
            return Err(Error::DepthMismatch {
                left: self.depth,
                right: other.depth,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(WOp {
            depth: self.depth,
            cols,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&R::one().negated()))
    }

    pub fn scale(&self, c: &R) -> Self {
        WOp {
            depth: self.depth,
            cols: self.cols.iter().map(|col| col.scale(c)).collect(),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let cols = par::map(&other.cols, |col| self.apply(col));
        Ok(WOp {
            depth: self.depth,
            cols: cols.into_iter().collect::<Result<_>>()?,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(MetabElt::is_zero)
    }

    /// First entry that does not strictly raise weight, if any.
    fn non_raising_entry(&self) -> Option<(usize, usize)> {
        for (j, col) in self.cols.iter().enumerate() {
            let wj = Basis::from_index(j).weight();
            for (i, c) in col.coeffs().iter().enumerate() {
                if !c.is_zero() && Basis::from_index(i).weight() <= wj {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// `sum_k M^k / k!` for a strictly weight-raising `M`.
    pub fn exp_op(&self) -> Result<Self> {
        if let Some((row, col)) = self.non_raising_entry() {
            return Err(Error::NotNilpotent { row, col });
        }
        let mut acc = Self::identity(self.depth);
        let mut power = Self::identity(self.depth);
        for k in 1..=self.depth {
            power = self.compose(&power)?.scale(&R::from_rational(rat(1, k as i64)));
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power)?;
        }
        Ok(acc)
    }

    /// `sum_k (-1)^(k+1) (M - 1)^k / k` for `M - 1` strictly weight-raising.
    pub fn log_op(&self) -> Result<Self> {
        let n = self.sub(&Self::identity(self.depth))?;
        if let Some((row, col)) = n.non_raising_entry() {
            return Err(Error::NotUnipotent { row, col });
        }
        let mut acc = Self::zero(self.depth);
        let mut power = Self::identity(self.depth);
        for k in 1..=self.depth {
            power = n.compose(&power)?;
            if power.is_zero() {
                break;
            }
            let c = if k % 2 == 1 {
                rat(1, k as i64)
            } else {
                rat(-1, k as i64)
            };
            acc = acc.add(&power.scale(&R::from_rational(c)))?;
        }
        Ok(acc)
    }

    /// `exp(ad_u)`, computed column by column as `sum_k ad_u^k(e_j) / k!`.
    pub fn exp_ad(u: &MetabElt<R>) -> Self {
        let d = u.depth();
        Self::from_fn(d, |b| {
            let mut term = MetabElt::basis(d, b);
            let mut acc = term.clone();
            for k in 1..=d {
                term = u
                    .bracket(&term)
                    .expect("same depth")
                    .scale(&R::from_rational(rat(1, k as i64)));
                if term.is_zero() {
                    break;
                }
                acc = acc.add(&term).expect("same depth");
            }
            acc
        })
    }

    fn basis_label(i: usize) -> String {
        Basis::from_index(i).label()
    }
}

impl<R: Ring> std::fmt::Debug for WOp<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(&self.cols).finish()
    }
}

/// Coefficients of an operator in `Span{1, tau_{u,v}, ad_sigma_{r,s}}`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpanCoeffs<R> {
    pub c: R,
    pub gstar: BTreeMap<(usize, usize), R>,
    pub g: BTreeMap<(usize, usize), R>,
}

impl<R: Ring> SpanCoeffs<R> {
    pub fn gstar(&self, u: usize, v: usize) -> R {
        self.gstar.get(&(u, v)).cloned().unwrap_or_else(R::zero)
    }

    pub fn g(&self, r: usize, s: usize) -> R {
        self.g.get(&(r, s)).cloned().unwrap_or_else(R::zero)
    }

    /// `c + sum gstar_{u,v} tau_{u,v} + sum g_{r,s} ad_sigma_{r,s}` at `depth`.
    pub fn assemble(&self, depth: usize) -> WOp<R> {
        WOp::from_fn(depth, |b| {
            let mut e = MetabElt::basis(depth, b).scale(&self.c);
            for (&(u, v), c) in &self.gstar {
                if let Some(img) = tau_image(depth, u, v, b) {
                    e = e.add(&img.scale(c)).expect("same depth");
                }
            }
            for (&(r, s), c) in &self.g {
                let sig = MetabElt::basis(depth, Basis::Sigma(r, s));
                let img = sig.bracket(&MetabElt::basis(depth, b)).expect("same depth");
                e = e.add(&img.scale(c)).expect("same depth");
            }
            e
        })
    }
}

fn tau_image<R: Ring>(depth: usize, u: usize, v: usize, b: Basis) -> Option<MetabElt<R>> {
    if (u, v) == (0, 0) {
        return None;
    }
    let img = match b {
        Basis::A if v == 0 => Basis::Sigma(u - 1, 0),
        Basis::A => return None,
        Basis::B if v >= 1 => Basis::Sigma(u, v - 1),
        Basis::B => return None,
        Basis::Sigma(r, s) => Basis::Sigma(r + u, s + v),
    };
    let sign = if b == Basis::A { -1 } else { 1 };
    let mut e = MetabElt::zero(depth);
    e.set(img, R::from_rational(Rational::from_integer(sign.into())));
    Some(e)
}

/// Reads the span coefficients of `m` off its action on `A` and `B`, then
/// checks that they reassemble `m` exactly.
pub fn span_decompose<R: Ring>(m: &WOp<R>) -> Result<SpanCoeffs<R>> {
    let n = m.depth();
    let ma = m.column(Basis::A);
    let mb = m.column(Basis::B);
    let mut gstar = BTreeMap::new();
    let mut g = BTreeMap::new();
    // M(A) = c A - sum_u gstar_{u,0} sigma_{u-1,0} - sum g_{r,s} sigma_{r,s+1}
    for u in 1..n {
        let c = ma.sigma(u - 1, 0).negated();
        if !c.is_zero() {
            gstar.insert((u, 0), c);
        }
    }
    for t in 0..n.saturating_sub(2) {
        for r in 0..=t {
            let s = t - r;
            let c = ma.sigma(r, s + 1).negated();
            if !c.is_zero() {
                g.insert((r, s), c);
            }
        }
    }
    // M(B) = c B + sum_{v>=1} gstar_{u,v} sigma_{u,v-1} - sum g_{r,s} sigma_{r+1,s}
    for t in 1..n {
        for u in 0..t {
            let v = t - u;
            let mut c = mb.sigma(u, v - 1);
            if u >= 1 {
                if let Some(x) = g.get(&(u - 1, v - 1)) {
                    c = c.plus(x);
                }
            }
            if !c.is_zero() {
                gstar.insert((u, v), c);
            }
        }
    }
    let coeffs = SpanCoeffs { c: ma.a(), gstar, g };
    let diff = m.sub(&coeffs.assemble(n))?;
    let mut entries = Vec::new();
    for col in 0..diff.dim() {
        for row in 0..diff.dim() {
            let e = diff.entry(row, col);
            if !e.is_zero() {
                entries.push((WOp::<R>::basis_label(row), WOp::<R>::basis_label(col)));
            }
        }
    }
    if entries.is_empty() {
        Ok(coeffs)
    } else {
        Err(Error::NotInSpan { entries })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal::int;

    type E = MetabElt<Rational>;
    type Op = WOp<Rational>;

    #[test]
    fn exp_of_ad_a_on_b() {
        let d = 5;
        let m = Op::ad(&E::basis(d, Basis::A)).scale(&int(3)).exp_op().unwrap();
        let img = m.column(Basis::B);
        assert_eq!(img.b(), int(1));
        assert_eq!(img.sigma(0, 0), int(3));
        assert_eq!(img.sigma(0, 1), rat(9, 2));
        assert_eq!(img.sigma(0, 2), rat(27, 6));
        assert_eq!(m, Op::exp_ad(&E::generators(d, int(3), int(0))));
    }

    #[test]
    fn exp_rejects_identity_and_log_rejects_zero() {
        assert!(Op::identity(4).exp_op().is_err());
        assert!(Op::zero(4).log_op().is_err());
        assert_eq!(Op::zero(4).exp_op().unwrap(), Op::identity(4));
    }

    #[test]
    fn tau_and_ad_sigma_relations() {
        let d = 6;
        for u in 0..3 {
            for v in 0..3 {
                for r in 0..2 {
                    for s in 0..2 {
                        let lhs = Op::tau(d, u, v).compose(&Op::ad_sigma(d, r, s)).unwrap();
                        assert_eq!(lhs, Op::ad_sigma(d, r + u, s + v));
                    }
                }
            }
        }
        let s00 = Op::ad_sigma(d, 0, 0);
        assert!(s00.compose(&Op::ad_sigma(d, 1, 0)).unwrap().is_zero());
    }

    #[test]
    fn decompose_basic() {
        let id = span_decompose(&Op::identity(5)).unwrap();
        assert_eq!(id.c, int(1));
        assert!(id.gstar.is_empty() && id.g.is_empty());
        let t = span_decompose(&Op::tau(5, 1, 0)).unwrap();
        assert_eq!(t.c, int(0));
        assert_eq!(t.gstar.into_iter().collect::<Vec<_>>(), vec![((1, 0), int(1))]);
        // ad_A tau_{1,0} = tau_{1,1} + ad_sigma_00
        let m = Op::tau(5, 0, 1).compose(&Op::tau(5, 1, 0)).unwrap();
        let c = span_decompose(&m).unwrap();
        assert_eq!(c.gstar(1, 1), int(1));
        assert_eq!(c.g(0, 0), int(1));
        let mut cols: Vec<E> = (0..Basis::dim(5)).map(|j| E::basis(5, Basis::from_index(j))).collect();
        cols[Basis::Sigma(0, 0).index()] = E::basis(5, Basis::Sigma(2, 0));
        assert!(matches!(
            span_decompose(&Op::from_columns(5, cols)),
            Err(Error::NotInSpan { .. })
        ));
    }
}
