//! Numerical cross-checks of the closed-form integrals and special values.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::BigRational;

use super::consts::{rat, Const};
use super::integrals::{beta_moment, contour_residue, gamma_ratio_at_zero, xi_moment, Decay};
use super::real::Real;
use super::zeta::riemann_zeta;
use crate::error::Result;
use crate::report::{Check, Report};

/// Planar moments `(2π)^{-2} ∫ ξ^a (1+|ξ|²)^{(e-s)/2} dξ` as `(a, e)`.
pub const PLANAR_ROWS: [([u32; 2], i64); 5] = [([0, 0], 0), ([0, 0], -2), ([2, 0], -4), ([2, 2], -6), ([4, 0], -6)];

/// `(1/2πi) ∮ μ^{-s} (μ - z)^{-j} dμ` on the circle `|μ - z| = |z|/2`,
/// trapezoidal rule with `n` points.
pub fn contour_numeric(j: u32, s: f64, z: Complex64, n: usize) -> Complex64 {
    let r = 0.5 * z.norm();
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..n {
        let e = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64);
        let mu = z + e * r;
        // dμ = i r e dθ, and (1/2πi) · i · (2π/n) = 1/n
        acc += mu.powc(Complex64::new(-s, 0.0)) * (e * r).powi(-(j as i32)) * e * r;
    }
    acc / n as f64
}

/// Closed form of the contour integral.
pub fn contour_exact(j: u32, s: f64, z: Complex64) -> Result<Complex64> {
    let c = contour_residue(j)?.eval(&Real::from_f64(s))?.to_f64();
    Ok(z.powc(Complex64::new(-s - j as f64 + 1.0, 0.0)) * c)
}

/// `(2π)^{-2} ∫_{R²} ξ1^a ξ2^b (1+|ξ|²)^{-p} dξ` by quadrature: Gauss rule
/// in the angle, double exponential in the radius split at 1.
pub fn planar_moment_numeric(a: [u32; 2], p: f64) -> (f64, f64) {
    let rule = gauss_quad::GaussLegendre::new(std::num::NonZeroUsize::new(48).expect("nonzero"));
    let angular = rule.integrate(0.0, 2.0 * PI, |t| t.cos().powi(a[0] as i32) * t.sin().powi(a[1] as i32));
    let d = (a[0] + a[1]) as f64;
    let inner = quadrature::double_exponential::integrate(|r| r.powf(d + 1.0) * (1.0 + r * r).powf(-p), 0.0, 1.0, 1e-14);
    // ρ = 1/v² on [1, ∞), which keeps the integrand bounded for s > 2
    let outer = quadrature::double_exponential::integrate(
        |v| 2.0 * v.powf(4.0 * p - 2.0 * d - 5.0) * (1.0 + v.powi(4)).powf(-p),
        0.0,
        1.0,
        1e-14,
    );
    let scale = angular / (4.0 * PI * PI);
    (scale * (inner.integral + outer.integral), scale.abs() * (inner.error_estimate + outer.error_estimate))
}

/// Closed form of the planar moment at real `s`.
pub fn planar_moment_exact(a: [u32; 2], e: i64, s: f64) -> Result<f64> {
    Ok(xi_moment(&a, &Decay::from_w_power(e))?.eval(&Real::from_f64(s))?.to_f64())
}

fn row_name(a: [u32; 2], e: i64) -> String {
    let mono = match a {
        [0, 0] => "1".to_string(),
        [x, 0] => format!("xi1^{x}"),
        [x, y] => format!("xi1^{x} xi2^{y}"),
    };
    let shift = -e / 2;
    let exp = if shift == 0 { "-s/2".to_string() } else { format!("-s/2-{shift}") };
    format!("(1/4pi^2) int {mono} (|xi|^2+1)^({exp})")
}

/// Every contour and planar-moment row at `s`, closed form against
/// quadrature.
pub fn integral_table_checks(s: f64, tolerance: f64) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let z = Complex64::new(1.7, 0.0);
    for j in 1..=3 {
        let num = contour_numeric(j, s, z, 256);
        let ex = contour_exact(j, s, z)?;
        out.push(Check::new(
            &format!("(1/2pi i) oint mu^-s (mu - z)^-{j}, z = {}, s = {s}", z.re),
            num.re,
            ex.re,
            tolerance,
            num.im.abs(),
            "contour integral, residue at z",
        ));
    }
    for (a, e) in PLANAR_ROWS {
        let p = (s - e as f64) / 2.0;
        let (num, err) = planar_moment_numeric(a, p);
        out.push(Check::new(
            &format!("{} at s = {s}", row_name(a, e)),
            num,
            planar_moment_exact(a, e, s)?,
            tolerance,
            err,
            "planar moment, polar/Beta reduction",
        ));
    }
    Ok(out)
}

fn value(c: &Const) -> f64 {
    c.value().to_f64()
}

/// Contour and moment tables at `s = 3` plus special values of the kernel.
pub fn selftest() -> Result<Report> {
    let mut checks = integral_table_checks(3.0, 1e-8)?;
    let zeta = |s: i64| -> Result<f64> { Ok(riemann_zeta(&Real::from_i64(s))?.to_f64()) };
    checks.push(Check::new("zeta_R(0)", zeta(0)?, -0.5, 1e-15, 0.0, "Riemann zeta, Euler-Maclaurin"));
    checks.push(Check::new("zeta_R(-1)", zeta(-1)?, -1.0 / 12.0, 1e-15, 0.0, "Riemann zeta, Euler-Maclaurin"));
    checks.push(Check::new("zeta_R(2)", zeta(2)?, PI * PI / 6.0, 1e-15, 0.0, "Riemann zeta, Euler-Maclaurin"));
    for (k, v, d) in [(rat(1, 1), -1.0, -1.0), (rat(1, 2), 0.0, -2.0 * PI.sqrt()), (rat(2, 1), 0.5, 0.75)] {
        let (gv, gd) = gamma_ratio_at_zero(&k)?;
        let name = |w: &str| format!("{w} Gamma(s-{k})/Gamma(s) at 0");
        checks.push(Check::new(&name("value of"), value(&gv), v, 1e-15, 0.0, "Laurent expansion of 1/Gamma"));
        checks.push(Check::new(&name("d/ds of"), value(&gd), d, 1e-15, 0.0, "Laurent expansion of 1/Gamma"));
    }
    let half: BigRational = rat(1, 2);
    let b = value(&beta_moment(&half, &half)?);
    let q = quadrature::double_exponential::integrate(|t: f64| 2.0 / (1.0 + t * t), 0.0, 1.0, 1e-15);
    // ∫_0^∞ t^{-1/2}(1+t)^{-1} dt = 2∫_0^∞ (1+u²)^{-1} du, and u → 1/u maps
    // [1, ∞) onto [0, 1] with the same integral
    checks.push(Check::new("B(1/2, 1/2)", b, 2.0 * q.integral, 1e-13, q.error_estimate, "Beta integral"));
    Ok(Report { title: "special-function kernel".into(), checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_contour_point() {
        let z = Complex64::new(0.8, 0.6);
        for j in 1..=3 {
            for s in [2.5, 3.0, 4.25] {
                let d = contour_numeric(j, s, z, 256) - contour_exact(j, s, z).unwrap();
                assert!(d.norm() < 1e-12, "j = {j}, s = {s}: {d}");
            }
        }
    }

    #[test]
    fn selftest_passes() {
        let r = selftest().unwrap();
        for c in &r.checks {
            assert!(c.passed(), "{c:?}");
        }
    }

    #[test]
    fn table_holds_away_from_three() {
        for s in [2.5, 4.0, 6.5] {
            for c in integral_table_checks(s, 1e-9).unwrap() {
                assert!(c.passed(), "{c:?}");
            }
        }
    }
}
