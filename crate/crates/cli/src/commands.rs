use std::f64::consts::PI;
use std::path::Path;

use dnzeta::geom::{
    a0_constant, assemble_gluing_identity, conformal_variation_check, cylinder, det_s, sample_on_disk, zeta0_constant,
    GeometrySpec,
};
use dnzeta::golden;
use dnzeta::report::{Check, Report};
use dnzeta::spectra::{circle_form_spectrum, SpectrumStream};
use dnzeta::specfun::selftest;
use dnzeta::symbolcas::ConnectionMode;
use dnzeta::symbolint::invariants::{at_zero, render_factored, render_sdensity, CDensity, SDensity};
use dnzeta::symbolint::{a1_dim3, density_a0, density_q, Pipeline};
use dnzeta::zetadet::{logdet_star, verify_cylinder_identities, verify_zeta0_identity, Cylinder};
use dnzeta::{Error, Result};

fn exact_row(quantity: &str, got: &CDensity, want: &CDensity, citation: &str) -> Check {
    Check::exact(quantity, render_factored(got), render_factored(want), got == want, citation)
}

fn exact_srow(quantity: &str, got: &SDensity, want: &SDensity, citation: &str) -> Check {
    Check::exact(quantity, render_sdensity(got), render_sdensity(want), got == want, citation)
}

fn form_degree(m: u8, q: u8) -> Result<()> {
    if !(2..=3).contains(&m) {
        return Err(Error::Unsupported(format!("dimension {m}; only 2 and 3 are implemented")));
    }
    if q >= m {
        return Err(Error::Unsupported(format!("(m, q) = ({m}, {q}); need q < m")));
    }
    Ok(())
}

fn positive(what: &str, x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::Invalid(format!("{what} must be positive and finite, got {x}")))
    }
}

/// `a_0(y)`, the `ζ(0)` integrand and, in dimension three, `a_1`.
pub fn derive_a0(m: u8, q: u8, mode: ConnectionMode) -> Result<Report> {
    form_degree(m, q)?;
    let got = density_a0(m, q, mode)?;
    let want = match (m, mode) {
        (2, ConnectionMode::Abstract) if q == 1 => golden::a0_dim2_generic(),
        (2, _) => golden::a0_dim2(q)?,
        (_, ConnectionMode::Abstract) => golden::a0_dim3_generic(q)?,
        _ => golden::a0_dim3(q)?,
    };
    let mut checks = vec![exact_row(&format!("a0(y), m = {m}, q = {q}"), &got.density, &want, "a0 closed form")];
    let j = m as usize - 1;
    let zq = density_q(j, m, q, ConnectionMode::Concrete)?.density.scale(&dnzeta::specfun::rat(2, 1));
    let zwant = if m == 2 { golden::zeta0_dim2(q)? } else { golden::zeta0_dim3(q)? };
    checks.push(exact_row(&format!("2 q{j}(y), m = {m}, q = {q}"), &zq, &zwant, "integrand of zeta_Q(0) + l_q"));
    if m == 3 {
        let a1 = a1_dim3(q)?;
        checks.push(Check::exact("a1", a1.to_string(), "0".into(), a1.is_zero(), "vanishing of a1 in dimension 3"));
    }
    Ok(Report { title: format!("derivation of a0, m = {m}, q = {q}, {} connection", got.mode), checks })
}

/// The twelve named pieces of the order -3 resolvent symbol on a surface
/// boundary, their sum and the derivative of the sum at zero.
pub fn derive_terms(q: u8) -> Result<Report> {
    form_degree(3, q)?;
    let p = Pipeline::new(3, q, ConnectionMode::Abstract)?;
    let want = golden::term_table_dim3(q)?;
    let mut checks = Vec::new();
    let mut sum = SDensity::zero();
    for ((label, got), (_, w)) in p.term_table()?.into_iter().zip(&want) {
        checks.push(exact_srow(&format!("term ({label})"), &got, w, "term table of r_-3"));
        sum.add_assign(&got);
    }
    checks.push(exact_srow("sum of terms", &sum, &golden::r3_integral_dim3(q)?, "integral of Tr r_-3"));
    let (_, der) = at_zero(&sum)?;
    checks.push(exact_row("d/ds at 0 of the sum", &der, &golden::a0_dim3_generic(q)?, "a0 closed form"));
    Ok(Report { title: format!("term table, m = 3, q = {q}"), checks })
}

fn circle_streams(l: f64, q: u8) -> Result<(SpectrumStream, Option<SpectrumStream>)> {
    if q > 1 {
        return Err(Error::Unsupported(format!("(m, q) = (2, {q}); need q < 2")));
    }
    let n = circle_form_spectrum(l, q as u32)?;
    let nm = if q > 0 { Some(circle_form_spectrum(l, q as u32 - 1)?) } else { None };
    Ok((n, nm))
}

/// Product identities on `[0, a] x S¹(L)` and the gluing identity with
/// `a_0 = 0`, `det S = 2/a`.
pub fn verify_cylinder(a: f64, l: f64, q: u8) -> Result<Report> {
    positive("a", a)?;
    positive("L", l)?;
    let (n, nm) = circle_streams(l, q)?;
    let mut report = verify_cylinder_identities(a, &n, nm.as_ref())?;
    let cyl = Cylinder::new(a, &n, nm.as_ref())?;
    let zq = dnzeta::zetadet::zeta(&cyl.dtn, 0.0)?;
    report.checks.push(Check::new("zeta_Q(0), closed value", zq.to_f64(), -1.0, 1e-8, zq.error_bound, "zeta_Q(0) = -1 on a flat cylinder"));
    let (la, ld, lq) = (logdet_star(&cyl.abs)?, logdet_star(&cyl.dir)?, logdet_star(&cyl.dtn)?);
    let geom = cylinder(a, l, 64)?;
    let basis = geom.harmonic_basis()?;
    report.checks.push(Check::new("a0", a0_constant(&geom, q as u32)?, 0.0, 1e-15, 0.0, "a0 closed form, flat boundary"));
    report.checks.push(Check::new("det S", det_s(&basis, &geom)?, 2.0 / a, 1e-12, 0.0, "Gram determinant of harmonic traces"));
    let residual = assemble_gluing_identity(&geom, q as u32, la.to_f64(), ld.to_f64(), lq.to_f64(), &basis)?;
    report.checks.push(Check::new(
        "gluing identity residual",
        residual,
        0.0,
        1e-10,
        la.error_bound + ld.error_bound + lq.error_bound,
        "ln Det* D_abs - ln Det D_D = a0 - ln det S + ln Det* Q",
    ));
    report.title = format!("cylinder a = {a}, L = {l}, q = {q}");
    Ok(report)
}

pub fn verify_zeta0(a: f64, l: f64, q: u8) -> Result<Report> {
    positive("a", a)?;
    positive("L", l)?;
    let (n, nm) = circle_streams(l, q)?;
    let mut r = verify_zeta0_identity(a, &n, nm.as_ref())?;
    r.title = format!("zeta(0) identity, cylinder a = {a}, L = {l}, q = {q}");
    Ok(r)
}

pub fn load_geometry(file: Option<&Path>, builtin: Option<&str>) -> Result<GeometrySpec> {
    match (file, builtin) {
        (Some(p), None) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
            GeometrySpec::from_json(&text)
        }
        (None, Some(name)) => GeometrySpec::builtin(name),
        _ => Err(Error::Invalid("give exactly one of --file and --builtin".into())),
    }
}

/// Boundary constants of a geometry and their invariance under
/// `g -> c² g`.
pub fn geom_constants(geom: &GeometrySpec, q: u8) -> Result<Report> {
    if q as u32 >= geom.m {
        return Err(Error::Unsupported(format!("(m, q) = ({}, {q}); need q < m", geom.m)));
    }
    let q = q as u32;
    let a0 = a0_constant(geom, q)?;
    let z0 = zeta0_constant(geom, q)?;
    let mut checks = vec![
        Check::computed("a0", a0, 0.0, "a0 closed form, boundary integral"),
        Check::computed("zeta_Q(0) + l_q", z0, 0.0, "integrand of zeta_Q(0) + l_q, boundary integral"),
    ];
    if geom.basis.is_some() {
        checks.push(Check::computed("det S", det_s(&geom.harmonic_basis()?, geom)?, 0.0, "Gram determinant of harmonic traces"));
    }
    for c in [0.5, 2.0] {
        let h = geom.rescale(c)?;
        let (a, z) = (a0_constant(&h, q)?, zeta0_constant(&h, q)?);
        let cite = "scale invariance of the constants";
        checks.push(Check::new(&format!("a0 after g -> c^2 g, c = {c}"), a, a0, 1e-12 * a0.abs().max(1.0), 0.0, cite));
        checks.push(Check::new(&format!("zeta_Q(0) + l_q after g -> c^2 g, c = {c}"), z, z0, 1e-12 * z0.abs().max(1.0), 0.0, cite));
    }
    Ok(Report { title: format!("boundary constants, m = {}, q = {q}", geom.m), checks })
}

/// Test functions for the conformal variation on the unit disk.
pub const CONFORMAL_FUNCTIONS: [&str; 3] = ["1", "x1", "r2"];

pub fn conformal_check(fs: &[String]) -> Result<Report> {
    let disk = GeometrySpec::builtin("unit-disk")?;
    let mut checks = Vec::new();
    for f in fs {
        let s = match f.as_str() {
            "1" => sample_on_disk(&disk, |_| (1.0, [0.0, 0.0]))?,
            "x1" => sample_on_disk(&disk, |x| (x[0], [1.0, 0.0]))?,
            "r2" => sample_on_disk(&disk, |x| (x[0] * x[0] + x[1] * x[1], [2.0 * x[0], 2.0 * x[1]]))?,
            other => return Err(Error::Invalid(format!("unknown test function {other}; use 1, x1 or r2"))),
        };
        for mut c in conformal_variation_check(&disk, &s)?.checks {
            c.quantity = format!("{}, F = {f}", c.quantity);
            checks.push(c);
        }
    }
    Ok(Report { title: "conformal variation, unit disk, q = 0".into(), checks })
}

pub fn specfun_selftest() -> Result<Report> {
    selftest::selftest()
}

pub fn default_circle() -> f64 {
    2.0 * PI
}
