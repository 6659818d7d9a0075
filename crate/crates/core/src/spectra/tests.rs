use super::*;
use std::f64::consts::PI;

fn vals(s: &SpectrumStream, cutoff: f64) -> Vec<(f64, u64)> {
    s.enumerate(cutoff).iter().map(|e| (e.eigenvalue, e.multiplicity)).collect()
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * b.abs().max(1.0)
}

#[test]
fn circle_modes() {
    let s = circle_form_spectrum(2.0 * PI, 0).unwrap();
    let v = vals(&s, 9.5);
    assert_eq!(v.len(), 4);
    assert_eq!(v[0], (0.0, 1));
    for (k, (x, m)) in v.iter().enumerate().skip(1) {
        assert!(close(*x, (k * k) as f64));
        assert_eq!(*m, 2);
    }
    let s = circle_form_spectrum(PI, 1).unwrap();
    let v = vals(&s, 17.0);
    assert!(close(v[1].0, 4.0) && close(v[2].0, 16.0));
    assert_eq!(s.kernel_dim(), 1);
    assert_eq!(circle_form_spectrum(PI, 0).unwrap(), s);
    assert!(circle_form_spectrum(0.0, 0).is_err());
    assert!(circle_form_spectrum(-1.0, 0).is_err());
}

#[test]
fn product_laplacian_modes() {
    let n = circle_form_spectrum(2.0 * PI, 0).unwrap();
    let abs = product_laplacian_spectra(1.0, &n, None, Boundary::Absolute).unwrap();
    assert_eq!(abs.enumerate(0.5), vec![Eigen { eigenvalue: 0.0, multiplicity: 1 }]);
    let dir = product_laplacian_spectra(1.0, &n, None, Boundary::Dirichlet).unwrap();
    let first = dir.enumerate(20.0)[0];
    assert!(close(first.eigenvalue, PI * PI));
    assert_eq!(first.multiplicity, 1);
    assert_eq!(dir.kernel_dim(), 0);
    assert!(product_laplacian_spectra(0.0, &n, None, Boundary::Absolute).is_err());
}

#[test]
fn product_laplacian_difference_is_cross_section() {
    // multiset identity below a cutoff: abs = dir + {lambda_n}
    let n = circle_form_spectrum(2.0 * PI, 1).unwrap();
    let n0 = circle_form_spectrum(2.0 * PI, 0).unwrap();
    let abs = product_laplacian_spectra(0.7, &n, Some(&n0), Boundary::Absolute).unwrap();
    let dir = product_laplacian_spectra(0.7, &n, Some(&n0), Boundary::Dirichlet).unwrap();
    let cut = 200.0;
    let mut d = dir.enumerate(cut);
    d.extend(n.enumerate(cut));
    assert_eq!(abs.enumerate(cut), merge(d));
}

#[test]
fn dtn_modes() {
    let n = circle_form_spectrum(2.0 * PI, 0).unwrap();
    let q = product_dtn_spectrum(1.0, &n).unwrap();
    let v = q.enumerate(2.05);
    assert_eq!(v[0], Eigen { eigenvalue: 0.0, multiplicity: 1 });
    assert!(v.iter().any(|e| e.eigenvalue == 2.0 && e.multiplicity == 1));
    let (hi, lo) = dtn_pair(1.0, 1.0);
    let e = std::f64::consts::E;
    assert!(close(hi, 1.0 + 2.0 / (e - 1.0)));
    assert!(close(lo, 1.0 - 2.0 / (e + 1.0)));
    assert!(product_dtn_spectrum(-1.0, &n).is_err());
}

#[test]
fn dtn_pair_by_ode() {
    // f'' = lambda f on [0, a]; Q maps boundary values to outward normal
    // derivatives. Symmetric and antisymmetric data give the two modes.
    let (a, lam) = (1.3, 2.0_f64);
    let r = lam.sqrt();
    let (hi, lo) = dtn_pair(a, lam);
    // even about a/2: f = cosh(r (u - a/2)), Q f = -f'(0)/f(0)
    let even = r * (r * a / 2.0).tanh();
    // odd: f = sinh(r (u - a/2))
    let odd = r / (r * a / 2.0).tanh();
    assert!(close(lo, even) && close(hi, odd));
}

#[test]
fn disk_steklov_modes() {
    let s = disk_steklov_spectrum(1.0).unwrap();
    assert_eq!(vals(&s, 2.5), vec![(0.0, 1), (1.0, 2), (2.0, 2)]);
    let s = disk_steklov_spectrum(2.0).unwrap();
    assert_eq!(vals(&s, 1.0), vec![(0.0, 1), (0.5, 2), (1.0, 2)]);
    assert_eq!(s.kernel_dim(), 1);
    assert!(disk_steklov_spectrum(0.0).is_err());
}

#[test]
fn dtn_scaling() {
    let c = 2.5;
    let (a, l) = (0.8, 3.0);
    let q = product_dtn_spectrum(a, &circle_form_spectrum(l, 0).unwrap()).unwrap();
    let qc = product_dtn_spectrum(c * a, &circle_form_spectrum(c * l, 0).unwrap()).unwrap();
    let v = q.enumerate(40.0);
    let vc = qc.enumerate(40.0 / c);
    assert_eq!(v.len(), vc.len());
    for (x, y) in v.iter().zip(&vc) {
        assert!(close(y.eigenvalue, x.eigenvalue / c));
        assert_eq!(x.multiplicity, y.multiplicity);
    }
    let d = disk_steklov_spectrum(1.0).unwrap().enumerate(10.0);
    let dc = disk_steklov_spectrum(c).unwrap().enumerate(10.0 / c);
    assert_eq!(d.len(), dc.len());
}

#[test]
fn dtn_weyl_law() {
    let l = 2.0 * PI;
    let q = product_dtn_spectrum(1.0, &circle_form_spectrum(l, 0).unwrap()).unwrap();
    let cut = 1e4;
    let slope = 2.0 * (l / (2.0 * PI)) * 2.0;
    let n = q.count(cut) as f64;
    assert!((n / (slope * cut) - 1.0).abs() < 0.05, "count {n}");
}

#[test]
fn explicit_lists() {
    let doc = r#"{"eigenvalues":[{"eigenvalue":2.0,"multiplicity":1},{"eigenvalue":0.0,"multiplicity":1},{"eigenvalue":2.0,"multiplicity":2}],
                  "metadata":{"dim":1,"degree":0,"betti":1}}"#;
    let s = explicit_from_json(doc).unwrap();
    assert_eq!(vals(&s, 10.0), vec![(0.0, 1), (2.0, 3)]);
    assert_eq!(s.structure(), Structure::ExplicitList);
    if let Kind::Explicit(e) = s.kind() {
        assert_eq!(explicit_from_json(&explicit_to_json(e)).unwrap(), s);
    }
    let bad = r#"{"eigenvalues":[{"eigenvalue":-1.0,"multiplicity":1}]}"#;
    assert!(matches!(explicit_from_json(bad), Err(Error::Schema(_))));
    let bad = r#"{"eigenvalues":[{"eigenvalue":1.0,"multiplicity":1}],"metadata":{"dim":1,"degree":0,"betti":1}}"#;
    assert!(matches!(explicit_from_json(bad), Err(Error::Schema(_))));
    assert!(matches!(explicit_from_json("[1,2"), Err(Error::Schema(_))));
}

#[test]
fn torus_forms() {
    let t = flat_torus_form_spectrum(1.0, 1.0, 1, 50.0).unwrap();
    assert_eq!(t.kernel_dim(), 2);
    let v = t.enumerate(50.0);
    assert!(close(v[1].eigenvalue, 4.0 * PI * PI));
    assert_eq!(v[1].multiplicity, 8);
}

mod props {
    use super::*;
    use proptest::prelude::*;

    fn streams() -> impl Strategy<Value = SpectrumStream> {
        (0.3f64..4.0, 0.3f64..8.0, 0u32..2, 0u8..4).prop_map(|(a, l, q, which)| {
            let n = circle_form_spectrum(l, q).unwrap();
            match which {
                0 => n,
                1 => product_laplacian_spectra(a, &n, None, Boundary::Absolute).unwrap(),
                2 => product_laplacian_spectra(a, &n, Some(&n), Boundary::Dirichlet).unwrap(),
                _ => product_dtn_spectrum(a, &n).unwrap(),
            }
        })
    }

    proptest! {
        #[test]
        fn stream_invariants(s in streams(), cut in 1.0f64..80.0) {
            let v = s.enumerate(cut);
            prop_assert!(v.windows(2).all(|w| w[0].eigenvalue < w[1].eigenvalue));
            prop_assert!(v.iter().all(|e| e.multiplicity >= 1 && e.eigenvalue >= 0.0 && e.eigenvalue <= cut));
            let zeros: u64 = v.iter().filter(|e| e.eigenvalue == 0.0).map(|e| e.multiplicity).sum();
            prop_assert_eq!(zeros, s.kernel_dim());
        }

        #[test]
        fn dtn_log_pairs_cancel(x in 1e-3f64..40.0) {
            let (p, m) = ((2.0 / x.exp_m1()).ln_1p(), (-2.0 / (x.exp() + 1.0)).ln_1p());
            prop_assert!((p + m).abs() <= 8.0 * f64::EPSILON * (p.abs() + m.abs()).max(1.0));
        }
    }
}
