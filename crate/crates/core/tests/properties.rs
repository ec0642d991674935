use proptest::prelude::*;

use kzb_core::curve::{Chart, CurveParams};
use kzb_core::formal::{int, rat, Differential, Rational, Ring, ZLSeries};
use kzb_core::freealg::{dynkin_log, is_grouplike, is_primitive, project_metab, NCSeries};
use kzb_core::kzb::build_kzb;
use kzb_core::metabelian::{grouplike_log, metab_bch, span_decompose, Basis, MetabElt, WOp};
use kzb_core::period::{iota_of, verify_theorems};

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

fn zl_series() -> impl Strategy<Value = ZLSeries> {
    (prop::collection::vec((-2i64..6, 0usize..2, rational()), 0..6), 6i64..10)
        .prop_map(|(terms, prec)| ZLSeries::from_terms(terms, prec))
}

/// Sum of left-normed brackets of letters, with random coefficients.
fn lie(degree: usize) -> impl Strategy<Value = NCSeries<Rational>> {
    prop::collection::vec((prop::collection::vec(any::<bool>(), 1..5), rational()), 1..5).prop_map(move |terms| {
        let letter = |b: bool| {
            if b {
                NCSeries::letter_b(degree)
            } else {
                NCSeries::letter_a(degree)
            }
        };
        let mut out = NCSeries::zero(degree);
        for (letters, c) in terms {
            let mut br = letter(letters[0]);
            for &l in &letters[1..] {
                let x = letter(l);
                br = br.mul(&x).sub(&x.mul(&br));
            }
            out = out.add(&br.scaled(&c));
        }
        out
    })
}

fn metab(depth: usize) -> impl Strategy<Value = MetabElt<Rational>> {
    prop::collection::vec(rational(), Basis::dim(depth)).prop_map(move |c| MetabElt::from_coeffs(depth, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn series_ring_laws(a in zl_series(), b in zl_series(), c in zl_series()) {
        let lhs = a.times(&b).times(&c);
        let rhs = a.times(&b.times(&c));
        let p = lhs.prec().min(rhs.prec());
        prop_assert!(lhs.agrees_through(&rhs, p));
        let lhs = a.times(&b.plus(&c));
        let rhs = a.times(&b).plus(&a.times(&c));
        let p = lhs.prec().min(rhs.prec());
        prop_assert!(lhs.agrees_through(&rhs, p));
    }

    #[test]
    fn antiderivative_is_a_right_inverse(a in zl_series()) {
        let back = a.antiderivative().derivative();
        prop_assert!(back.agrees_through(&a, a.prec()));
        prop_assert!(a.antiderivative().coeff(0, 0).unwrap().is_zero());
    }

    #[test]
    fn exp_of_lie_is_grouplike(x in lie(5)) {
        let g = x.exp().unwrap();
        prop_assert!(is_primitive(&x));
        prop_assert!(is_grouplike(&g));
        prop_assert_eq!(g.log().unwrap(), x);
    }

    #[test]
    fn kurlin_matches_free_bch(x in lie(6), y in lie(6)) {
        let free = x.exp().unwrap().mul(&y.exp().unwrap()).log().unwrap();
        let lhs = project_metab(&free).unwrap();
        let rhs = metab_bch(&project_metab(&x).unwrap(), &project_metab(&y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn dynkin_log_matches_log(x in lie(6), y in lie(6)) {
        let g = x.exp().unwrap().mul(&y.exp().unwrap());
        prop_assert_eq!(dynkin_log(&g), project_metab(&g.log().unwrap()).unwrap());
    }

    #[test]
    fn grouplike_log_inverts_exp(h in metab(5)) {
        let span = span_decompose(&WOp::exp_ad(&h.with_depth(6))).unwrap();
        let got = grouplike_log(&span, &h.a(), &h.b(), 3).unwrap();
        for t in 0..=3 {
            for r in 0..=t {
                let v = got.get(&(r, t - r)).cloned().unwrap_or_else(Rational::zero);
                prop_assert_eq!(v, h.sigma(r, t - r));
            }
        }
    }

    #[test]
    fn exp_and_log_of_operators(h in metab(5)) {
        let mut d = h.clone();
        d.set(Basis::A, Rational::zero());
        d.set(Basis::B, Rational::zero());
        let m = WOp::ad(&h);
        let e = m.exp_op().unwrap();
        prop_assert_eq!(e.log_op().unwrap(), m);
        prop_assert_eq!(e, WOp::exp_ad(&h));
    }

    #[test]
    fn iota_kills_b_and_keeps_a(h in metab(5)) {
        let i = iota_of(&h).unwrap();
        prop_assert!(i.b().is_zero());
        prop_assert_eq!(i.a(), h.a());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    /// Curves through a random rational point: choose e4 and the point, solve for e6.
    #[test]
    fn theorem_on_random_curves(e4 in -3i64..=3, x0 in rational(), y0 in rational()) {
        prop_assume!(!y0.is_zero());
        let e4 = int(e4);
        let e6 = (int(4) * &x0 * &x0 * &x0 - int(60) * &e4 * &x0 - &y0 * &y0) / int(140);
        let Ok(p) = CurveParams::new(e4, e6) else { return Ok(()) };
        let chart = Chart::point(&p, x0, y0).unwrap();
        let data = build_kzb(&p, 3).unwrap();
        let r = verify_theorems(&data, &chart, 5).unwrap();
        prop_assert!(r.holds(), "{}", r.to_json());
    }
}

#[test]
fn derivative_of_curve_functions_is_compatible_with_expansion() {
    let p = CurveParams::new(int(1), int(0)).unwrap();
    let chart = Chart::point(&p, int(4), int(4)).unwrap();
    let data = build_kzb(&p, 3).unwrap();
    let f = &data.f;
    let order = 8;
    let df = chart.form(&f.derivative(), order).unwrap();
    let ef = chart.expand(f, order + 1).unwrap();
    assert!(ef.derivative().agrees_through(&df, order));
}
