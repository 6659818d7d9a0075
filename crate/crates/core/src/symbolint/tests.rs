use super::invariants::{at_zero, sdensity_from_const, specialise};
use super::*;
use crate::golden;
use crate::specfun::{rat, Const};
use crate::symbolcas::{ConnectionMode, Frame};

use ConnectionMode::{Abstract, Concrete};

fn assert_same(label: &str, got: &CDensity, want: &CDensity) {
    assert!(
        got == want,
        "{label}\n  got:  {}\n  want: {}",
        invariants::render_cdensity(got),
        invariants::render_cdensity(want)
    );
}

fn assert_same_s(label: &str, got: &SDensity, want: &SDensity) {
    assert!(
        got == want,
        "{label}\n  got:  {}\n  want: {}",
        invariants::render_sdensity(got),
        invariants::render_sdensity(want)
    );
}

#[test]
fn surface_term_table_matches_reference() {
    for q in 0..=2 {
        let p = Pipeline::new(3, q, Abstract).unwrap();
        let got = p.term_table().unwrap();
        let want = golden::term_table_dim3(q).unwrap();
        assert_eq!(got.len(), want.len());
        for ((l1, g), (l2, w)) in got.iter().zip(&want) {
            assert_eq!(l1, l2);
            assert_same_s(&format!("q={q} term {l1}"), g, w);
        }
    }
}

#[test]
fn surface_terms_sum_to_full_integral() {
    for q in 0..=2 {
        let p = Pipeline::new(3, q, Abstract).unwrap();
        let mut sum = SDensity::zero();
        for (_, t) in p.term_table().unwrap() {
            sum.add_assign(&t);
        }
        let want = golden::r3_integral_dim3(q).unwrap();
        assert_same_s(&format!("q={q} sum"), &sum, &want);
        assert_same_s(&format!("q={q} direct"), &p.resolvent_integral(3).unwrap(), &want);
    }
}

#[test]
fn trace_order_does_not_matter() {
    for (m, q) in [(2, 1), (3, 0), (3, 1)] {
        let p = Pipeline::new(m, q, Abstract).unwrap();
        for j in 1..=m as usize {
            assert_same_s(
                &format!("m={m} q={q} j={j}"),
                &p.resolvent_integral_even_first(j).unwrap(),
                &p.resolvent_integral(j).unwrap(),
            );
        }
    }
}

#[test]
fn surface_a0_generic_and_per_degree() {
    for q in 0..=2 {
        let generic = density_a0(3, q, Abstract).unwrap();
        assert_same(&format!("generic q={q}"), &generic.density, &golden::a0_dim3_generic(q).unwrap());
        let concrete = density_a0(3, q, Concrete).unwrap();
        assert_same(&format!("concrete q={q}"), &concrete.density, &golden::a0_dim3(q).unwrap());
        let frame = Frame::new(3, q).unwrap();
        let spec = specialise(&sdensity_from_const(&generic.density), &frame).unwrap();
        assert_same(&format!("specialised q={q}"), &at_zero(&spec).unwrap().0, &golden::a0_dim3(q).unwrap());
    }
}

#[test]
fn curve_a0() {
    assert_same("generic", &density_a0(2, 1, Abstract).unwrap().density, &golden::a0_dim2_generic());
    for q in 0..=1 {
        assert_same(&format!("q={q}"), &density_a0(2, q, Concrete).unwrap().density, &golden::a0_dim2(q).unwrap());
    }
    let ln2 = density_a0(2, 1, Abstract).unwrap().density;
    let c = golden::coefficient(&ln2, &[(Inv::TrOmM, 1)]);
    assert_eq!(c, &Const::ln2() * &Const::sqrt_pi_pow(-2).scale(&rat(-1, 1)));
}

#[test]
fn curve_q1_and_zeta_value() {
    for q in 0..=1 {
        let q1 = density_q(1, 2, q, Concrete).unwrap().density;
        assert_same(&format!("q1 q={q}"), &q1, &golden::q1_dim2(q).unwrap());
        assert_same(&format!("2 q1 q={q}"), &q1.scale(&rat(2, 1)), &golden::zeta0_dim2(q).unwrap());
    }
}

#[test]
fn surface_pi0_and_vanishing_a1() {
    for q in 0..=2 {
        let pi0 = density_pi(0, 3, q, Concrete).unwrap();
        assert_same(&format!("pi0 q={q}"), &pi0.density, &golden::pi0_dim3(q).unwrap());
        assert!(a1_dim3(q).unwrap().is_zero());
    }
}

#[test]
fn surface_q2_matches_zeta_value() {
    for q in 0..=2 {
        let generic = density_q(2, 3, q, Abstract).unwrap().density;
        assert_same(&format!("q2 generic q={q}"), &generic, &golden::q2_dim3_generic(q).unwrap());
        let concrete = density_q(2, 3, q, Concrete).unwrap().density;
        assert_same(&format!("2 q2 q={q}"), &concrete.scale(&rat(2, 1)), &golden::zeta0_dim3(q).unwrap());
    }
}

#[test]
fn report_has_every_term() {
    let r = derivation_report(3, 1, Abstract).unwrap();
    assert_eq!(r["terms"].as_array().unwrap().len(), golden::TERM_LABELS.len());
}

#[test]
fn factored_rendering() {
    let a0 = golden::a0_dim3(0).unwrap();
    assert_eq!(invariants::render_factored(&a0), "(1/64)*pi^-1 * (tau_M - tau_Y + 11*H1^2 - 3*H2)");
    assert_eq!(invariants::render_factored(&golden::a0_dim2(1).unwrap()), invariants::render_cdensity(&golden::a0_dim2(1).unwrap()));
    assert_eq!(invariants::render_factored(&CDensity::zero()), "0");
}
