//! Shuffle-based grouplike and primitive predicates, and the projection of
//! primitive series to the metabelian quotient.

use super::series::{NCSeries, Word};
use crate::error::{Error, Result};
use crate::formal::{rat, Ring};
use crate::metabelian::{Basis, MetabElt};

/// All shuffles of `u` and `v`, with multiplicity.
pub fn shuffle(u: Word, v: Word) -> Vec<Word> {
    let n = u.len + v.len;
    let mut out = Vec::new();
    for mask in 0u64..(1 << n) {
        if mask.count_ones() as usize != u.len {
            continue;
        }
        let (mut iu, mut iv) = (0, 0);
        let mut bits = 0u64;
        for k in 0..n {
            bits <<= 1;
            let from_u = (mask >> (n - 1 - k)) & 1 == 1;
            let letter = if from_u {
                iu += 1;
                u.letter(iu - 1)
            } else {
                iv += 1;
                v.letter(iv - 1)
            };
            if letter {
                bits |= 1;
            }
        }
        out.push(Word::new(n, bits));
    }
    out
}

fn shuffle_sum<R: Ring>(s: &NCSeries<R>, u: Word, v: Word) -> R {
    let mut acc = R::zero();
    for w in shuffle(u, v) {
        let c = s.coeff_ref(w);
        if !c.is_zero() {
            acc = acc.plus(c);
        }
    }
    acc
}

/// Nonempty word pairs `(u, v)` with `|u| + |v| <= degree`, shortest first.
fn pairs(degree: usize) -> impl Iterator<Item = (Word, Word)> {
    (2..=degree).flat_map(move |n| {
        (1..n).flat_map(move |a| {
            (0..1u64 << a)
                .flat_map(move |ub| (0..1u64 << (n - a)).map(move |vb| (Word::new(a, ub), Word::new(n - a, vb))))
        })
    })
}

/// First pair `(u, v)` violating `c(u) c(v) = sum_{w in u sh v} c(w)`, or a
/// violation of `c(1) = 1` reported as `(1, 1)`.
pub fn grouplike_violation<R: Ring>(s: &NCSeries<R>) -> Option<(Word, Word)> {
    if *s.augmentation() != R::one() {
        return Some((Word::EMPTY, Word::EMPTY));
    }
    pairs(s.degree()).find(|&(u, v)| {
        let lhs = s.coeff_ref(u).times(s.coeff_ref(v));
        lhs != shuffle_sum(s, u, v)
    })
}

/// First pair `(u, v)` with `sum_{w in u sh v} c(w) != 0`, or `(1, 1)` when
/// the constant term is nonzero.
pub fn primitive_violation<R: Ring>(s: &NCSeries<R>) -> Option<(Word, Word)> {
    if !s.augmentation().is_zero() {
        return Some((Word::EMPTY, Word::EMPTY));
    }
    pairs(s.degree()).find(|&(u, v)| !shuffle_sum(s, u, v).is_zero())
}

pub fn is_grouplike<R: Ring>(s: &NCSeries<R>) -> bool {
    grouplike_violation(s).is_none()
}

pub fn is_primitive<R: Ring>(s: &NCSeries<R>) -> bool {
    primitive_violation(s).is_none()
}

/// Image of the left-normed bracket `[[..[w1, w2], ..], wn]` in the
/// metabelian quotient, as `(sign, basis vector)`.
pub fn left_bracket(w: Word) -> Option<(i64, Basis)> {
    match w.len {
        0 => None,
        1 => Some((1, if w.letter(0) { Basis::B } else { Basis::A })),
        n => {
            let (first, second) = (w.letter(0), w.letter(1));
            if first == second {
                return None;
            }
            let base = if first { -1 } else { 1 };
            let sign = if n % 2 == 0 { base } else { -base };
            let (_, tail) = w.split(2);
            Some((sign, Basis::Sigma(tail.count_b(), tail.count_a())))
        }
    }
}

/// Projects a primitive series to the metabelian quotient by the Dynkin map
/// `w -> [[..[w1, w2], ..], wn] / n`.
pub fn project_metab<R: Ring>(h: &NCSeries<R>) -> Result<MetabElt<R>> {
    if let Some((u, v)) = primitive_violation(h) {
        return Err(Error::NotPrimitive {
            left: u.to_string(),
            right: v.to_string(),
        });
    }
    Ok(project_unchecked(h))
}

/// [`project_metab`] without the primitivity check.
pub fn project_unchecked<R: Ring>(h: &NCSeries<R>) -> MetabElt<R> {
    let mut out = MetabElt::zero(h.degree());
    for (w, c) in h.terms() {
        if let Some((sign, b)) = left_bracket(w) {
            out.add_at(b, &c.scaled(&rat(sign, w.len as i64)));
        }
    }
    out
}

/// `project_metab(log G)` for grouplike `G`, without the logarithm.
///
/// The left-normed Dynkin operator satisfies `D(G) = G^-1 Y(G)` with `Y` the
/// grading, so `d = D(G)` projects coefficientwise and equals
/// `((1 - e^-ad_h) / ad_h)(Y h)`. In the quotient only `h_1 = hA A + hB B`
/// acts on the derived part, giving `n h_n = d_n - sum_k c_k (n-k-1) ad_{h_1}^k h_{n-k}`
/// with `c_k = (-1)^k / (k+1)!`.
pub fn dynkin_log<R: Ring>(g: &NCSeries<R>) -> MetabElt<R> {
    let n = g.degree();
    let mut d = MetabElt::zero(n);
    for (w, c) in g.terms() {
        if let Some((sign, b)) = left_bracket(w) {
            d.add_at(b, &c.scaled(&rat(sign, 1)));
        }
    }
    let (ha, hb) = (d.a(), d.b());
    let act = |x: &MetabElt<R>| {
        x.ad_letter(Basis::A)
            .scale(&ha)
            .add(&x.ad_letter(Basis::B).scale(&hb))
            .expect("same depth")
    };
    let part = |x: &MetabElt<R>, m: usize| {
        let mut out = MetabElt::zero(n);
        for (b, c) in x.terms() {
            if b.weight() == m {
                out.add_at(b, &c);
            }
        }
        out
    };
    let mut parts: Vec<MetabElt<R>> = vec![MetabElt::zero(n); n + 1];
    let mut fact = crate::formal::int(1);
    let mut coeff = vec![crate::formal::int(0); n + 1];
    for (k, c) in coeff.iter_mut().enumerate().skip(1) {
        fact *= crate::formal::int(k as i64 + 1);
        *c = if k % 2 == 0 { fact.recip() } else { -fact.recip() };
    }
    for m in 2..=n {
        let mut val = part(&d, m);
        for (k, ck) in coeff.iter().enumerate().take(m - 1).skip(1) {
            let j = m - k;
            let mut x = parts[j].map(|c| c.scaled(&(ck * crate::formal::int(j as i64 - 1))));
            for _ in 0..k {
                x = act(&x);
            }
            val = val.sub(&x).expect("same depth");
        }
        parts[m] = val.map(|c| c.scaled(&rat(1, m as i64)));
    }
    let mut h = MetabElt::generators(n, ha, hb);
    for p in &parts[2..] {
        h = h.add(p).expect("same depth");
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal::{int, Rational};

    type S = NCSeries<Rational>;

    fn right_bracket(w: Word, d: usize) -> MetabElt<Rational> {
        let letter = |k: usize| MetabElt::basis(d, if w.letter(k) { Basis::B } else { Basis::A });
        let mut acc = letter(w.len - 1);
        for k in (0..w.len - 1).rev() {
            acc = letter(k).bracket(&acc).unwrap();
        }
        acc
    }

    #[test]
    fn shuffle_counts() {
        let u = Word::parse("AB").unwrap();
        let v = Word::parse("A").unwrap();
        let mut s: Vec<String> = shuffle(u, v).into_iter().map(|w| w.to_string()).collect();
        s.sort();
        assert_eq!(s, vec!["AAB", "AAB", "ABA"]);
    }

    #[test]
    fn predicates() {
        let d = 6;
        assert!(is_grouplike(&S::one(d)));
        assert!(is_primitive(&S::letter_a(d)));
        let g = S::letter_a(d).exp().unwrap().mul(&S::letter_b(d).exp().unwrap());
        assert!(is_grouplike(&g));
        assert!(is_primitive(&g.log().unwrap()));
        let ab = S::from_terms(d, [("AB", int(1))]).unwrap();
        assert_eq!(
            primitive_violation(&ab).map(|(u, v)| (u.to_string(), v.to_string())),
            Some(("A".into(), "B".into()))
        );
    }

    #[test]
    fn projections() {
        let d = 4;
        let comm = S::from_terms(d, [("AB", int(1)), ("BA", int(-1))]).unwrap();
        assert_eq!(project_metab(&comm).unwrap(), MetabElt::basis(d, Basis::Sigma(0, 0)));
        let t = S::from_terms(d, [("BAB", int(2)), ("BBA", int(-1)), ("ABB", int(-1))]).unwrap();
        assert_eq!(project_metab(&t).unwrap(), MetabElt::basis(d, Basis::Sigma(1, 0)));
        assert!(project_metab(&S::from_terms(d, [("AB", int(1))]).unwrap()).is_err());
    }

    #[test]
    fn dynkin_log_matches_log() {
        let d = 7;
        let g = S::from_terms(d, [("A", int(2)), ("B", rat(-1, 3)), ("AB", int(1)), ("BA", int(-1))])
            .unwrap()
            .exp()
            .unwrap()
            .mul(
                &S::from_terms(d, [("B", int(1)), ("A", rat(1, 2))])
                    .unwrap()
                    .exp()
                    .unwrap(),
            )
            .mul(
                &S::from_terms(d, [("ABB", int(3)), ("BAB", int(-6)), ("BBA", int(3))])
                    .unwrap()
                    .exp()
                    .unwrap(),
            );
        assert_eq!(dynkin_log(&g), project_metab(&g.log().unwrap()).unwrap());
    }

    #[test]
    fn dynkin_agrees_with_right_bracketing() {
        let d = 6;
        let g = S::from_terms(d, [("A", int(2)), ("B", rat(-1, 3)), ("AB", int(1)), ("BA", int(-1))])
            .unwrap()
            .exp()
            .unwrap()
            .mul(
                &S::from_terms(d, [("B", int(1)), ("A", rat(1, 2))])
                    .unwrap()
                    .exp()
                    .unwrap(),
            );
        let h = g.log().unwrap();
        let mut alt = MetabElt::zero(d);
        for (w, c) in h.terms() {
            let n = int(w.len as i64);
            alt = alt.add(&right_bracket(w, d).scale(&(c / n))).unwrap();
        }
        assert_eq!(project_metab(&h).unwrap(), alt);
    }
}
