use super::elt::{Basis, MetabElt};
use crate::error::Result;
use crate::formal::{kurlin_kernel, Ring};

/// `log(e^X e^Y) = X + Y + kappa(ad_X, ad_Y)[X, Y]`.
///
/// `[X, Y]` lies in the abelian ideal spanned by the sigmas, where `ad_X` and
/// `ad_Y` only see the generator parts of `X` and `Y` and commute.
pub fn metab_bch<R: Ring>(x: &MetabElt<R>, y: &MetabElt<R>) -> Result<MetabElt<R>> {
    let n = x.depth();
    let w = x.bracket(y)?;
    let mut out = x.add(y)?;
    if w.is_zero() {
        return Ok(out);
    }
    let d = n.saturating_sub(2);
    let kappa = kurlin_kernel(d)?;
    let act = |e: &MetabElt<R>, g: &MetabElt<R>| {
        e.ad_letter(Basis::A)
            .scale(&g.a())
            .add(&e.ad_letter(Basis::B).scale(&g.b()))
            .expect("same depth")
    };
    let mut xi = w;
    for i in 0..=d {
        let mut yj = xi.clone();
        for j in 0..=d - i {
            let k = kappa.coeff(i, j);
            if !k.is_zero() {
                out = out.add(&yj.map(|c| c.scaled(&k)))?;
            }
            yj = act(&yj, y);
            if yj.is_zero() {
                break;
            }
        }
        xi = act(&xi, x);
        if xi.is_zero() {
            break;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal::{int, rat, Rational};

    type E = MetabElt<Rational>;

    #[test]
    fn trivial_cases() {
        let y = E::generators(5, int(2), int(3));
        assert_eq!(metab_bch(&E::zero(5), &y).unwrap(), y);
        let a = E::generators(5, int(2), int(0));
        let b = E::generators(5, int(5), int(0));
        assert_eq!(metab_bch(&a, &b).unwrap(), E::generators(5, int(7), int(0)));
    }

    #[test]
    fn low_degree_terms() {
        let a = E::basis(4, Basis::A);
        let b = E::basis(4, Basis::B);
        let z = metab_bch(&a, &b).unwrap();
        assert_eq!(z.sigma(0, 0), rat(1, 2));
        // [A,[A,B]]/12 - [B,[A,B]]/12
        assert_eq!(z.sigma(0, 1), rat(1, 12));
        assert_eq!(z.sigma(1, 0), rat(-1, 12));
        // -[B,[A,[A,B]]]/24
        assert_eq!(z.sigma(1, 1), rat(-1, 24));
        assert_eq!(z.sigma(2, 0), int(0));
        assert_eq!(z.sigma(0, 2), int(0));
    }
}
