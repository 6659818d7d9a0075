use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use dnzeta::geom::{
    a0_constant, assemble_gluing_identity, conformal_variation_check, cylinder, det_s, sample_on_disk, zeta0_constant,
    GeometrySpec, Node,
};
use dnzeta::golden;
use dnzeta::report::Check;
use dnzeta::spectra::{circle_form_spectrum, SpectrumStream};
use dnzeta::specfun::selftest::integral_table_checks;
use dnzeta::specfun::rat;
use dnzeta::symbolcas::{
    parametrix_defect, resolvent_expand, riccati_residual, riccati_solve_with_budget, ConnectionMode, Frame,
};
use dnzeta::symbolint::invariants::{at_zero, CDensity, SDensity};
use dnzeta::symbolint::{a1_dim3, density_a0, density_pi, density_q, Pipeline};
use dnzeta::zetadet::{logdet_star, verify_cylinder_identities, verify_zeta0_identity, zeta, Cylinder};
use dnzeta::Result;

use ConnectionMode::{Abstract, Concrete};

const CASES: [(u8, u8); 5] = [(2, 0), (2, 1), (3, 0), (3, 1), (3, 2)];
const CYLINDERS: [f64; 3] = [0.5, 1.0, 3.0];

/// Failed sub-checks of one criterion.
struct Outcome {
    failures: Vec<String>,
    count: usize,
}

impl Outcome {
    fn new() -> Self {
        Outcome { failures: Vec::new(), count: 0 }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.count += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn exact(&mut self, label: &str, got: &CDensity, want: &CDensity) {
        self.check(got == want, || format!("{label}: densities differ"));
    }

    fn exact_s(&mut self, label: &str, got: &SDensity, want: &SDensity) {
        self.check(got == want, || format!("{label}: s-densities differ"));
    }

    fn row(&mut self, c: &Check) {
        self.check(c.passed(), || format!("{}: {:?} vs {:?}", c.quantity, c.value, c.expected));
    }

    fn within(&mut self, label: &str, value: f64, expected: f64, tol: f64) {
        self.check((value - expected).abs() < tol, || format!("{label}: {value:e} vs {expected:e}, tol {tol:e}"));
    }

    fn runtime(&mut self, t: Duration, budget: Duration) {
        self.check(t < budget, || format!("runtime {t:?} over {budget:?}"));
    }
}

fn criterion1() -> Result<Outcome> {
    let mut o = Outcome::new();
    let t = Instant::now();
    o.exact("a0 generic", &density_a0(2, 1, Abstract)?.density, &golden::a0_dim2_generic());
    for q in 0..=1 {
        o.exact(&format!("a0 q = {q}"), &density_a0(2, q, Concrete)?.density, &golden::a0_dim2(q)?);
    }
    o.runtime(t.elapsed(), Duration::from_secs(10));
    Ok(o)
}

fn criterion2() -> Result<Outcome> {
    let mut o = Outcome::new();
    let t = Instant::now();
    for q in 0..=2 {
        let p = Pipeline::new(3, q, Abstract)?;
        let want = golden::term_table_dim3(q)?;
        let got = p.term_table()?;
        o.check(got.len() == want.len(), || format!("q = {q}: {} terms", got.len()));
        let mut sum = SDensity::zero();
        for ((label, g), (_, w)) in got.iter().zip(&want) {
            o.exact_s(&format!("q = {q} term {label}"), g, w);
            sum.add_assign(g);
        }
        o.exact_s(&format!("q = {q} sum"), &sum, &golden::r3_integral_dim3(q)?);
        o.exact(&format!("q = {q} derivative at 0"), &at_zero(&sum)?.1, &golden::a0_dim3_generic(q)?);
        o.exact(&format!("q = {q} specialised"), &density_a0(3, q, Concrete)?.density, &golden::a0_dim3(q)?);
    }
    o.runtime(t.elapsed(), Duration::from_secs(60));
    Ok(o)
}

fn criterion3() -> Result<Outcome> {
    let mut o = Outcome::new();
    for q in 0..=2 {
        o.check(a1_dim3(q)?.is_zero(), || format!("a1 q = {q} nonzero"));
        o.exact(&format!("pi0 q = {q}"), &density_pi(0, 3, q, Concrete)?.density, &golden::pi0_dim3(q)?);
        let q2 = density_q(2, 3, q, Concrete)?.density.scale(&rat(2, 1));
        o.exact(&format!("2 q2 q = {q}"), &q2, &golden::zeta0_dim3(q)?);
    }
    for q in 0..=1 {
        o.exact(&format!("q1 q = {q}"), &density_q(1, 2, q, Concrete)?.density, &golden::q1_dim2(q)?);
    }
    Ok(o)
}

fn circle(q: u32) -> Result<(SpectrumStream, Option<SpectrumStream>)> {
    let n = circle_form_spectrum(2.0 * PI, q)?;
    let nm = if q > 0 { Some(circle_form_spectrum(2.0 * PI, q - 1)?) } else { None };
    Ok((n, nm))
}

fn criterion4() -> Result<Outcome> {
    let mut o = Outcome::new();
    let t = Instant::now();
    for a in CYLINDERS {
        for q in 0..=1 {
            let (n, nm) = circle(q)?;
            for c in verify_cylinder_identities(a, &n, nm.as_ref())?.checks {
                o.row(&c);
            }
            let cyl = Cylinder::new(a, &n, nm.as_ref())?;
            if q == 0 {
                o.within(&format!("zeta_Q(0), a = {a}"), zeta(&cyl.dtn, 0.0)?.to_f64(), -1.0, 1e-8);
            }
            let geom = cylinder(a, 2.0 * PI, 64)?;
            let basis = geom.harmonic_basis()?;
            o.within(&format!("a0, a = {a}"), a0_constant(&geom, q)?, 0.0, 1e-15);
            o.within(&format!("det S, a = {a}"), det_s(&basis, &geom)?, 2.0 / a, 1e-12);
            let (la, ld, lq) = (logdet_star(&cyl.abs)?, logdet_star(&cyl.dir)?, logdet_star(&cyl.dtn)?);
            let r = assemble_gluing_identity(&geom, q, la.to_f64(), ld.to_f64(), lq.to_f64(), &basis)?;
            o.within(&format!("gluing residual, a = {a}, q = {q}"), r, 0.0, 1e-10);
        }
    }
    o.runtime(t.elapsed(), Duration::from_secs(30));
    Ok(o)
}

fn criterion5() -> Result<Outcome> {
    let mut o = Outcome::new();
    for a in CYLINDERS {
        for q in 0..=1 {
            let (n, nm) = circle(q)?;
            for c in verify_zeta0_identity(a, &n, nm.as_ref())?.checks {
                o.row(&c);
            }
        }
    }
    Ok(o)
}

fn criterion6() -> Result<Outcome> {
    let mut o = Outcome::new();
    for c in integral_table_checks(3.0, 1e-8)? {
        o.row(&c);
    }
    Ok(o)
}

fn curved_sample() -> Result<GeometrySpec> {
    let nodes: Vec<Node> = (0..7)
        .map(|k| {
            let t = k as f64;
            Node { w: 0.3 + 0.1 * t, kappa: vec![t.sin(), 1.0 - 0.2 * t], tau_m: t.cos(), tau_y: 0.5 * t - 1.0, x: None }
        })
        .collect();
    let ell = nodes.iter().map(|n| n.w).sum();
    GeometrySpec::new(3, nodes, 2.5, ell, None)
}

fn criterion7() -> Result<Outcome> {
    let mut o = Outcome::new();
    let geoms = [
        GeometrySpec::builtin("unit-disk")?,
        GeometrySpec::builtin("unit-ball")?,
        GeometrySpec::builtin("cylinder(1.5, 4)")?,
        curved_sample()?,
    ];
    for g in &geoms {
        for q in 0..g.m {
            let (a0, z0) = (a0_constant(g, q)?, zeta0_constant(g, q)?);
            for c in [0.5, 2.0] {
                let h = g.rescale(c)?;
                o.within(&format!("a0, m = {}, q = {q}, c = {c}", g.m), a0_constant(&h, q)?, a0, 1e-12);
                o.within(&format!("zeta0, m = {}, q = {q}, c = {c}", g.m), zeta0_constant(&h, q)?, z0, 1e-12);
            }
        }
    }
    Ok(o)
}

fn criterion8() -> Result<Outcome> {
    let mut o = Outcome::new();
    let disk = GeometrySpec::builtin("unit-disk")?;
    let fs: [fn([f64; 2]) -> (f64, [f64; 2]); 3] =
        [|_| (1.0, [0.0, 0.0]), |x| (x[0], [1.0, 0.0]), |x| (x[0] * x[0] + x[1] * x[1], [2.0 * x[0], 2.0 * x[1]])];
    for f in fs {
        for c in conformal_variation_check(&disk, &sample_on_disk(&disk, f)?)?.checks {
            o.within(&c.quantity, c.number(), 0.0, 1e-8);
        }
    }
    Ok(o)
}

fn criterion9() -> Result<Outcome> {
    let mut o = Outcome::new();
    for (m, q) in CASES {
        for mode in [Abstract, Concrete] {
            let f = Frame::new(m, q)?;
            let sol = riccati_solve_with_budget(&f, mode, 2)?;
            for (d, part) in riccati_residual(&sol, 0) {
                o.check(part.is_zero(), || format!("m = {m}, q = {q}: Riccati residual in degree {d}"));
            }
            let res = resolvent_expand(&sol, 3)?;
            o.check(!res.r(3).is_zero(), || format!("m = {m}, q = {q}: r_-3 vanishes"));
            for (d, part) in parametrix_defect(&res, -2) {
                o.check(part.is_zero(), || format!("m = {m}, q = {q}, {mode:?}: defect in order {d}"));
            }
        }
    }
    Ok(o)
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Result<Outcome>); 9] = [
        ("dimension 2 derivation of a0", criterion1),
        ("dimension 3 term table, sum, derivative and per-degree densities", criterion2),
        ("a1 = 0, pi0, q1 and 2 q2 densities", criterion3),
        ("cylinder determinants, zeta differences, zeta_Q(0) and gluing residual", criterion4),
        ("zeta(0) identity on cylinders", criterion5),
        ("contour and moment integrals against quadrature at s = 3", criterion6),
        ("scale invariance of a0 and zeta_Q(0) + l_q", criterion7),
        ("conformal variation on the unit disk", criterion8),
        ("parametrix defect vanishes in orders 0, -1, -2", criterion9),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (ok, detail) = match run() {
            Ok(o) if o.failures.is_empty() => (true, format!("{} checks", o.count)),
            Ok(o) => (false, o.failures.join("; ")),
            Err(e) => (false, format!("error: {e}")),
        };
        all &= ok;
        let status = if ok { "PASS" } else { "FAIL" };
        println!("criterion {}: {status}  {name} ({detail}, {:.2?})", i + 1, t.elapsed());
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
