//! Riemann and Hurwitz zeta by Euler–Maclaurin summation.

use super::bernoulli::bernoulli;
use super::real::Real;
use crate::error::{Error, Result};

/// Number of directly summed terms.
pub const DIRECT_TERMS: i64 = 50;
/// Highest Bernoulli correction `B_{2K}` used is `B_20`.
pub const CORRECTIONS: usize = 10;

fn factorial(n: usize) -> Real {
    (1..=n as i64).fold(Real::one(), |acc, k| acc * Real::from_i64(k))
}

/// Rising factorial `(s)_n` and its derivative in `s`.
fn rising_with_derivative(s: &Real, n: usize) -> (Real, Real) {
    let mut val = Real::one();
    let mut der = Real::zero();
    for j in 0..n {
        let f = s + &Real::from_i64(j as i64);
        der = der * &f + &val;
        val = val * &f;
    }
    (val, der)
}

fn check_args(s: &Real, a: &Real) -> Result<()> {
    if *s == Real::one() {
        return Err(Error::Pole("zeta at s = 1".into()));
    }
    if a.is_negative() || a.is_zero() {
        return Err(Error::Invalid("Hurwitz parameter must be positive".into()));
    }
    Ok(())
}

/// `ζ(s, a) = Σ_{n≥0} (n + a)^{-s}` continued to `s ≠ 1`.
pub fn hurwitz_zeta(s: &Real, a: &Real) -> Result<Real> {
    Ok(hurwitz_zeta_with_derivative(s, a)?.0)
}

/// `(ζ(s, a), ∂_s ζ(s, a))`.
pub fn hurwitz_zeta_with_derivative(s: &Real, a: &Real) -> Result<(Real, Real)> {
    check_args(s, a)?;
    let mut val = Real::zero();
    let mut der = Real::zero();
    for n in 0..DIRECT_TERMS {
        let x = a + &Real::from_i64(n);
        let lx = x.ln();
        let t = (-(s * &lx)).exp();
        der = der - &lx * &t;
        val = val + t;
    }
    let big_n = a + &Real::from_i64(DIRECT_TERMS);
    let ln_n = big_n.ln();
    let one = Real::one();
    let sm1 = s - &one;
    let n_pow = (-(s * &ln_n)).exp(); // N^{-s}
    let n_1ms = &n_pow * &big_n; // N^{1-s}
    val = val + &n_1ms / &sm1 + &n_pow / Real::from_i64(2);
    der = der - &ln_n * &n_1ms / &sm1 - &n_1ms / (&sm1 * &sm1) - &ln_n * &n_pow / Real::from_i64(2);
    let n2 = &big_n * &big_n;
    let mut n_pow_k = &n_pow / &big_n; // N^{-s-1}
    for k in 1..=CORRECTIONS {
        let c = Real::from_ratio(&bernoulli(2 * k)) / factorial(2 * k);
        let (r, dr) = rising_with_derivative(s, 2 * k - 1);
        val = val + &c * &r * &n_pow_k;
        der = der + &c * (dr - &ln_n * &r) * &n_pow_k;
        n_pow_k = n_pow_k / &n2;
    }
    Ok((val, der))
}

/// Riemann zeta `ζ(s)`.
pub fn riemann_zeta(s: &Real) -> Result<Real> {
    hurwitz_zeta(s, &Real::one())
}

/// `ζ'(s)`.
pub fn riemann_zeta_deriv(s: &Real) -> Result<Real> {
    Ok(hurwitz_zeta_with_derivative(s, &Real::one())?.1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &Real, b: &Real, tol: f64) {
        let d = (a - b).abs().to_f64();
        assert!(d < tol, "{} vs {}: diff {d:e}", a.to_sci(40), b.to_sci(40));
    }

    #[test]
    fn classical_values() {
        let pi = Real::pi();
        close(&riemann_zeta(&Real::from_i64(2)).unwrap(), &(&pi * &pi / Real::from_i64(6)), 1e-28);
        close(&riemann_zeta(&Real::zero()).unwrap(), &Real::parse("-0.5"), 1e-30);
        close(&riemann_zeta(&Real::from_i64(-1)).unwrap(), &(Real::from_i64(-1) / Real::from_i64(12)), 1e-30);
        close(&riemann_zeta(&Real::from_i64(3)).unwrap(), &Real::parse("1.20205690315959428539973816151144999076498629234049888179227"), 1e-30);
        let half_ln_2pi = (Real::from_i64(2) * &pi).ln() / Real::from_i64(2);
        close(&riemann_zeta_deriv(&Real::zero()).unwrap(), &-half_ln_2pi, 1e-28);
    }

    #[test]
    fn hurwitz_half() {
        // ζ(s, 1/2) = (2^s - 1) ζ(s)
        let s = Real::parse("2.5");
        let lhs = hurwitz_zeta(&s, &Real::parse("0.5")).unwrap();
        let rhs = (Real::from_i64(2).powr(&s) - Real::one()) * riemann_zeta(&s).unwrap();
        close(&lhs, &rhs, 1e-28);
    }

    #[test]
    fn pole_is_error() {
        assert!(matches!(riemann_zeta(&Real::one()), Err(Error::Pole(_))));
    }
}
