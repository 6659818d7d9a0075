use super::symbol::{degrees, mono_degree, mono_pole, mono_weight, render_sym, var};
use super::*;
use crate::specfun::rat;

fn kappa(a: u8) -> Sym {
    var(Var::Kappa(a))
}

const CASES: [(u8, u8); 5] = [(2, 0), (2, 1), (3, 0), (3, 1), (3, 2)];

#[test]
fn frame_sizes() {
    for (m, q, n, nt) in [(2, 0, 1, 1), (2, 1, 2, 1), (3, 0, 1, 1), (3, 1, 3, 2), (3, 2, 3, 1)] {
        let f = Frame::new(m, q).unwrap();
        assert_eq!((f.n(), f.n_t), (n, nt), "m={m} q={q}");
    }
    assert!(Frame::new(4, 1).is_err());
    assert!(Frame::new(3, 3).is_err());
}

#[test]
fn connection_at_base_one_forms() {
    let f = Frame::new(3, 1).unwrap();
    let w1 = f.omega_at_base(1);
    assert_eq!(*w1.get(2, 0), kappa(1));
    assert_eq!(*w1.get(0, 2), kappa(1).neg());
    assert_eq!(w1.e.iter().filter(|x| !x.is_zero()).count(), 2);
    let w3 = f.omega_at_base(3);
    assert_eq!(*w3.get(0, 0), kappa(1));
    assert_eq!(*w3.get(1, 1), kappa(2));
    assert!(w3.get(2, 2).is_zero());
    assert!(w3.get(0, 2).is_zero() && w3.get(2, 0).is_zero());
}

#[test]
fn connection_at_base_two_forms() {
    let f = Frame::new(3, 2).unwrap();
    let w3 = f.omega_at_base(3);
    assert_eq!(*w3.get(0, 0), kappa(1).add(&kappa(2)));
    let w1 = f.omega_at_base(1);
    assert_eq!(*w1.mul(&w1).get(0, 0), kappa(1).mul(&kappa(1)).neg());
    let w2 = f.omega_at_base(2);
    assert_eq!(*w2.mul(&w2).get(0, 0), kappa(2).mul(&kappa(2)).neg());
}

#[test]
fn metric_model_is_inverse_pair() {
    for m in [2u8, 3] {
        let f = Frame::new(m, 0).unwrap();
        let model = JetModel::new(&f, ConnectionMode::Concrete);
        let calc = Calculus::new(&model);
        for a in 1..m {
            for c in 1..m {
                let mut s = Sym::zero();
                for b in 1..m {
                    s.add_assign(&calc.mul(model.glow(a, b), model.ginv(b, c)));
                }
                let expect = if a == c { Sym::one() } else { Sym::zero() };
                assert_eq!(s, expect, "m={m} a={a} c={c}: {}", render_sym(&s));
            }
        }
    }
}

#[test]
fn log_determinant_matches_trace() {
    let f = Frame::new(3, 0).unwrap();
    let model = JetModel::new(&f, ConnectionMode::Concrete);
    let calc = Calculus::new(&model);
    for k in 1..=3u8 {
        let lhs = calc.d_coord(&model.ln_det, k);
        let mut rhs = Sym::zero();
        for a in 1..3 {
            for b in 1..3 {
                rhs.add_assign(&calc.mul(model.ginv(a, b), &calc.d_coord(model.glow(a, b), k)));
            }
        }
        assert_eq!(lhs, rhs, "k={k}");
    }
}

#[test]
fn riccati_residual_vanishes_to_order_zero() {
    for (m, q) in CASES {
        for mode in [ConnectionMode::Abstract, ConnectionMode::Concrete] {
            let f = Frame::new(m, q).unwrap();
            let sol = riccati_solve(&f, mode).unwrap();
            for (d, part) in riccati_residual(&sol, 0) {
                assert!(part.is_zero(), "m={m} q={q} residual of degree {d}:\n{part}");
            }
        }
    }
}

#[test]
fn riccati_symbols_are_graded() {
    let f = Frame::new(3, 1).unwrap();
    let sol = riccati_solve(&f, ConnectionMode::Abstract).unwrap();
    for (order, a) in [(1, &sol.alpha1), (0, &sol.alpha0), (-1, &sol.alpha_m1)] {
        for e in &a.e {
            for (mono, _) in e.terms() {
                assert_eq!(mono_degree(mono), order);
                assert_eq!(mono_degree(mono) + mono_weight(mono), 1, "{}", render_sym(e));
            }
        }
    }
}

#[test]
fn alpha0_functions_in_dimension_two() {
    let f = Frame::new(2, 0).unwrap();
    let sol = riccati_solve(&f, ConnectionMode::Concrete).unwrap();
    let a0 = at_base(sol.alpha0.get(0, 0));
    assert_eq!(degrees(&a0), vec![0]);
    // A = kappa and d_m w = kappa xi^2 / w, so alpha0 = -(kappa/2)(1 - xi^2/w^2)
    let xi2 = Sym::var_pow(Var::Xi(1), 2);
    let expect = kappa(1)
        .scale(&rat(-1, 2))
        .add(&kappa(1).mul(&xi2).mul(&Sym::var_pow(Var::W, -2)).scale(&rat(1, 2)));
    assert_eq!(a0, expect, "{}", render_sym(&a0));
}

#[test]
fn resolvent_named_terms_sum() {
    let f = Frame::new(3, 1).unwrap();
    let sol = riccati_solve(&f, ConnectionMode::Abstract).unwrap();
    let res = resolvent_expand(&sol, 3).unwrap();
    let terms = named_terms_r3(&sol, &res).unwrap();
    assert_eq!(terms.len(), 12);
    let sum = terms.iter().fold(SymMatrix::zero(f.n_t), |acc, (_, t)| acc.add(t));
    assert_eq!(sum, *res.r(3));
}

#[test]
fn resolvent_grading_and_poles() {
    let f = Frame::new(3, 0).unwrap();
    let sol = riccati_solve(&f, ConnectionMode::Concrete).unwrap();
    let res = resolvent_expand(&sol, 3).unwrap();
    for j in 1..=3 {
        for e in &res.r(j).e {
            for (mono, _) in e.terms() {
                assert_eq!(mono_degree(mono), -(j as i32));
                assert_eq!(mono_degree(mono) + mono_weight(mono), -1);
            }
            for (mono, _) in at_base(e).terms() {
                assert!(mono_pole(mono) <= 3);
            }
        }
    }
}

#[test]
fn parametrix_through_order_minus_two() {
    for (m, q) in CASES {
        for mode in [ConnectionMode::Abstract, ConnectionMode::Concrete] {
            let f = Frame::new(m, q).unwrap();
            let sol = riccati_solve_with_budget(&f, mode, 2).unwrap();
            for (d, part) in riccati_residual(&sol, 0) {
                assert!(part.is_zero(), "m={m} q={q} Riccati residual of degree {d}");
            }
            let res = resolvent_expand(&sol, 3).unwrap();
            assert!(!res.r(3).is_zero(), "m={m} q={q}: r_-3 vanishes");
            for (d, part) in parametrix_defect(&res, -2) {
                assert!(part.is_zero(), "m={m} q={q} {mode:?}: defect of order {d}:\n{part}");
            }
            // without r_-3 the order -2 defect is (mu - w) r_-3 itself
            let mut short = res.clone();
            short.r.pop();
            let defect = parametrix_defect(&short, -2);
            assert!(defect[..2].iter().all(|(_, p)| p.is_zero()));
            assert!(!defect[2].1.is_zero(), "m={m} q={q}: truncated series still a parametrix");
        }
    }
}
