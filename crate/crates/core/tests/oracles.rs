//! Known values computed by hand or by an independent route.

use kzb_core::curve::{e_k, p_k, pq_coeffs, Chart, CurveParams};
use kzb_core::formal::{
    bernoulli, bernoulli_minus, int, iterated_integral, kernel_bch, kernel_s_printed, kurlin_kernel, rat, Rational,
    Ring,
};
use kzb_core::freealg::{project_metab, NCSeries};
use kzb_core::kzb::{adjoint_flat_section, adjoint_forms, build_kzb, residue_at_infinity};
use kzb_core::metabelian::{metab_bch, Basis, MetabElt};
use kzb_core::period::{g_series, period_map_oracle, period_map_rhs};

#[test]
fn e8_from_the_wp_recursion() {
    // wp = z^-2 + 3 e4 z^2 + 5 e6 z^4 + c3 z^6 with c3 = 6 c1^2 / 18 = 3 e4^2,
    // and c3 = 7 e8.
    let p = CurveParams::new(int(2), int(5)).unwrap();
    assert_eq!(e_k(&p, 8), rat(12, 7));
    assert_eq!(e_k(&p, 4), int(2));
    assert_eq!(e_k(&p, 6), int(5));
    for k in [3, 5, 7, 9, 11] {
        assert!(e_k(&p, k).is_zero());
    }
}

#[test]
fn low_p_functions() {
    let p = CurveParams::new(int(1), int(0)).unwrap();
    assert_eq!(p_k(&p, 4).unwrap().to_string(), "x^2 - 6");
    assert_eq!(p_k(&p, 2).unwrap().to_string(), "x");
    let pq = pq_coeffs(&p, 3).unwrap();
    // p_2 = -P_2/2, q_1 = P_1 = -f
    assert_eq!(pq.p[2].to_string(), "-1/2*x");
    assert!(pq.p[1].is_zero());
    assert_eq!(pq.q[1], p_k(&p, 1).unwrap());
}

#[test]
fn bernoulli_numbers() {
    assert_eq!(bernoulli(0), int(1));
    assert_eq!(bernoulli(1), rat(1, 2));
    assert_eq!(bernoulli_minus(1), rat(-1, 2));
    assert_eq!(bernoulli(2), rat(1, 6));
    assert_eq!(bernoulli(4), rat(-1, 30));
    assert!(bernoulli(5).is_zero());
}

#[test]
fn kernel_low_coefficients() {
    // 1 - p(-V) q(U) = (U+V)/2 - U^2/12 - UV/4 - V^2/6 + ...
    let k = kernel_bch(4).unwrap();
    assert_eq!(k.coeff(0, 0), rat(1, 2));
    assert_eq!(k.coeff(1, 0), rat(-1, 12));
    assert_eq!(k.coeff(0, 1), rat(-1, 6));
    let kappa = kurlin_kernel(4).unwrap();
    assert_eq!(kappa.coeff(0, 0), rat(1, 2));
    assert!(kernel_s_printed(4).is_err());
}

#[test]
fn classical_bch_in_the_quotient() {
    // log(e^A e^B) = A + B + [A,B]/2 + [A,[A,B]]/12 - [B,[A,B]]/12 + ...
    let d = 3;
    let a = MetabElt::<Rational>::basis(d, Basis::A);
    let b = MetabElt::basis(d, Basis::B);
    let z = metab_bch(&a, &b).unwrap();
    assert_eq!(z.sigma(0, 0), rat(1, 2));
    assert_eq!(z.sigma(0, 1), rat(1, 12));
    assert_eq!(z.sigma(1, 0), rat(-1, 12));
    let free = NCSeries::letter_a(d)
        .exp()
        .unwrap()
        .mul(&NCSeries::letter_b(d).exp().unwrap())
        .log()
        .unwrap();
    assert_eq!(project_metab(&free).unwrap(), z);
}

#[test]
fn residue_is_b_a() {
    let p = CurveParams::new(int(0), int(1)).unwrap();
    let data = build_kzb(&p, 5).unwrap();
    let r = residue_at_infinity(&data).unwrap();
    assert_eq!(r.residue, MetabElt::basis(5, Basis::Sigma(0, 0)).neg());
}

#[test]
fn flat_section_low_coefficients() {
    let p = CurveParams::new(int(1), int(0)).unwrap();
    let chart = Chart::point(&p, int(4), int(4)).unwrap();
    let data = build_kzb(&p, 4).unwrap();
    let order = 8;
    let f = adjoint_forms(&data, &chart, order).unwrap();
    let s = adjoint_flat_section(&data, &chart, order).unwrap();
    assert!(s
        .gstar(1, 0)
        .agrees_through(&iterated_integral(std::slice::from_ref(&f.beta)), order));
    assert!(s
        .gstar(0, 1)
        .agrees_through(&iterated_integral(std::slice::from_ref(&f.alpha)), order));
    let bb = iterated_integral(&[f.beta.clone(), f.beta.clone()]);
    assert!(s.gstar(2, 0).agrees_through(&bb, order));
    // G_{1,0} = I(b,a,b) + I(a,b,b) - I(a p_2), p_1 = 0
    let g10 = iterated_integral(&[f.beta.clone(), f.alpha.clone(), f.beta.clone()])
        .plus(&iterated_integral(&[f.alpha.clone(), f.beta.clone(), f.beta.clone()]))
        .minus(&iterated_integral(&[f.coeff[2].clone()]));
    assert!(s.g(1, 0).agrees_through(&g10, order));
}

#[test]
fn period_map_degree_two() {
    let p = CurveParams::new(int(1), int(0)).unwrap();
    let data = build_kzb(&p, 3).unwrap();
    let order = 10;
    for y0 in [4, -4] {
        let chart = Chart::point(&p, int(4), int(y0)).unwrap();
        let f = adjoint_forms(&data, &chart, order).unwrap();
        let ha = iterated_integral(std::slice::from_ref(&f.alpha));
        let ab = iterated_integral(&[f.alpha.clone(), f.beta.clone()]);
        let (rhs, _) = period_map_rhs(&data, &chart, order).unwrap();
        let oracle = period_map_oracle(&data, &chart, order).unwrap();
        assert!(rhs.a_coeff().agrees_through(&ha, order));
        assert!(rhs.b_coeff().is_zero());
        assert!(oracle.sigma(0, 0).agrees_through(&ab, order));
        assert!(rhs.sigma(0, 0).agrees_through(&ab, order));
    }
}

#[test]
fn g00_vanishes_at_the_basepoint() {
    let p = CurveParams::new(int(1), int(0)).unwrap();
    let chart = Chart::point(&p, int(4), int(4)).unwrap();
    let gs = g_series(&build_kzb(&p, 5).unwrap(), &chart, 8).unwrap();
    assert!(gs.mismatch.is_none());
    for c in gs.g.values() {
        assert!(c.coeff(0, 0).unwrap().is_zero());
    }
}
