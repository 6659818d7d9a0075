//! Closed forms for the two integrals every heat-density term reduces to:
//! the resolvent contour integral in `μ` and the radial moments in `ξ`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::consts::{rat, Const};
use super::ratfunc::{RatFunc, UPoly};
use super::sfunc::SFunction;
use crate::error::{Error, Result};

/// Coefficient `R_j(s)` in
/// `(1/2πi) ∮ μ^{-s} (μ - z)^{-j} dμ = R_j(s) z^{-s-j+1}`.
///
/// The contour encloses `z` and no other singularity, so the integral is
/// the `(j-1)`-th derivative of `μ^{-s}` at `z` divided by `(j-1)!`.
pub fn contour_residue(j: u32) -> Result<RatFunc> {
    if !(1..=3).contains(&j) {
        return Err(Error::Unsupported(format!("contour residue for pole order {j}")));
    }
    let mut p = UPoly::one();
    for i in 0..(j as i64 - 1) {
        p = &p * &UPoly::linear(rat(-1, 1), rat(-i, 1));
    }
    let fact: i64 = (1..j as i64).product();
    Ok(RatFunc::poly(p.scale(&rat(1, fact))))
}

/// `Γ(x)` for a positive half-integer or integer `x`.
pub fn gamma_half_integer(x: &BigRational) -> Result<Const> {
    if !x.is_positive() || !(x * rat(2, 1)).is_integer() {
        return Err(Error::Invalid(format!("Gamma({x}) is not a positive half-integer")));
    }
    if x.is_integer() {
        let n: i64 = (x.to_integer() - BigInt::one()).try_into().map_err(|_| Error::Unsupported("argument too large".into()))?;
        let f = (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k));
        return Ok(Const::from_rational(BigRational::from_integer(f)));
    }
    // Γ(k + 1/2) = (1/2)(3/2)...(k - 1/2) √π
    let mut r = BigRational::one();
    let mut y = rat(1, 2);
    while &y < x {
        r *= &y;
        y += BigRational::one();
    }
    Ok(Const::sqrt_pi_pow(1).scale(&r))
}

/// Exponent `P(s) = per_s · s + offset` of the weight `(1 + |ξ|²)^{-P(s)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decay {
    pub per_s: BigRational,
    pub offset: BigRational,
}

impl Decay {
    pub fn fixed(p: BigRational) -> Self {
        Decay { per_s: BigRational::zero(), offset: p }
    }

    /// `(1 + |ξ|²)^{(e - s)/2}`, i.e. `w^{e-s}` with `w² = 1 + |ξ|²`.
    pub fn from_w_power(e: i64) -> Self {
        Decay { per_s: rat(1, 2), offset: rat(-e, 2) }
    }
}

/// `(2π)^{-d} ∫_{R^d} ξ^a (1 + |ξ|²)^{-P(s)} dξ`.
///
/// Odd moments vanish identically. For a fixed exponent the integral must
/// converge; an `s`-dependent exponent yields the meromorphic continuation.
pub fn xi_moment(a: &[u32], decay: &Decay) -> Result<SFunction> {
    let d = a.len() as i64;
    if d == 0 {
        return Err(Error::Invalid("xi moment needs at least one dimension".into()));
    }
    if a.iter().any(|e| e % 2 == 1) {
        return Ok(SFunction::zero());
    }
    let deg: i64 = a.iter().map(|&e| e as i64).sum();
    let mut c = Const::sqrt_pi_pow(-2 * d as i32).scale(&rat(1, 1 << d));
    for &ai in a {
        c = c * gamma_half_integer(&rat(ai as i64 + 1, 2))?;
    }
    let shift = rat(deg + d, 2);
    if decay.per_s.is_zero() {
        if rat(2, 1) * &decay.offset <= BigRational::from_integer((deg + d).into()) {
            return Err(Error::Divergent(format!(
                "moment of degree {deg} against (1+|xi|^2)^-{} in dimension {d}",
                decay.offset
            )));
        }
        let num = gamma_half_integer(&(&decay.offset - &shift))?;
        let inv = inverse_gamma_half_integer(&decay.offset)?;
        return Ok(SFunction::constant(&(c * num * inv)));
    }
    let g = SFunction::gamma_ratio(decay.per_s.clone(), &decay.offset - &shift, decay.offset.clone())?;
    Ok(g.scale(&c))
}

/// `1/Γ(x)` for a positive half-integer or integer `x`.
fn inverse_gamma_half_integer(x: &BigRational) -> Result<Const> {
    let g = gamma_half_integer(x)?;
    // a rational multiple of a power of √π; invert monomially
    let (m, r) = g.terms().next().map(|(m, r)| (m.clone(), r.clone())).expect("nonzero Gamma value");
    let mut inv = m;
    inv.sqrt_pi = -inv.sqrt_pi;
    Ok(Const::monomial(inv, BigRational::one() / r))
}

/// `∫_0^∞ t^{a-1} (1+t)^{-a-b} dt = Γ(a)Γ(b)/Γ(a+b)` for positive
/// half-integers `a`, `b`.
pub fn beta_moment(a: &BigRational, b: &BigRational) -> Result<Const> {
    if !a.is_positive() || !b.is_positive() {
        return Err(Error::Invalid(format!("beta moment needs positive arguments, got ({a}, {b})")));
    }
    Ok(gamma_half_integer(a)? * gamma_half_integer(b)? * inverse_gamma_half_integer(&(a + b))?)
}

/// Value and first derivative at `s = 0` of `Γ(s - k)/Γ(s)`.
pub fn gamma_ratio_at_zero(k: &BigRational) -> Result<(Const, Const)> {
    SFunction::gamma_ratio(BigRational::one(), -k.clone(), BigRational::zero())?.at_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::consts::CMono;

    fn rf(n: &[i64], d: &[i64]) -> RatFunc {
        let p = |c: &[i64]| UPoly::new(c.iter().map(|&x| rat(x, 1)).collect());
        RatFunc::new(p(n), p(d)).unwrap()
    }

    fn inv_pi() -> CMono {
        CMono { sqrt_pi: -2, atoms: Default::default() }
    }

    #[test]
    fn contour_residues() {
        assert_eq!(contour_residue(1).unwrap(), RatFunc::one());
        assert_eq!(contour_residue(2).unwrap(), rf(&[0, -1], &[1]));
        assert_eq!(contour_residue(3).unwrap(), rf(&[0, 1, 1], &[2]));
        assert!(contour_residue(4).is_err());
    }

    #[test]
    fn planar_moment_table() {
        // (1/2π)/(s-2)
        let m = xi_moment(&[0, 0], &Decay::from_w_power(0)).unwrap();
        assert_eq!(m.rational_part(&inv_pi()).unwrap(), rf(&[1], &[-4, 2]));
        // (1/2π)/s
        let m = xi_moment(&[0, 0], &Decay::from_w_power(-2)).unwrap();
        assert_eq!(m.rational_part(&inv_pi()).unwrap(), rf(&[1], &[0, 2]));
        // ξ1²: (1/2π)/(s(s+2))
        let m = xi_moment(&[2, 0], &Decay::from_w_power(-4)).unwrap();
        assert_eq!(m.rational_part(&inv_pi()).unwrap(), rf(&[1], &[0, 4, 2]));
        // ξ1²ξ2²: (1/2π)/(s(s+2)(s+4))
        let m = xi_moment(&[2, 2], &Decay::from_w_power(-6)).unwrap();
        assert_eq!(m.rational_part(&inv_pi()).unwrap(), rf(&[1], &[0, 16, 12, 2]));
        // ξ1⁴: (3/2π)/(s(s+2)(s+4))
        let m = xi_moment(&[4, 0], &Decay::from_w_power(-6)).unwrap();
        assert_eq!(m.rational_part(&inv_pi()).unwrap(), rf(&[3], &[0, 16, 12, 2]));
        assert!(xi_moment(&[1, 2], &Decay::from_w_power(-6)).unwrap().is_zero());
    }

    #[test]
    fn fixed_exponent_divergence() {
        assert!(matches!(xi_moment(&[2, 0], &Decay::fixed(rat(2, 1))), Err(Error::Divergent(_))));
        // (1/4π²) ∫ (1+|ξ|²)^{-2} = 1/(4π)
        let m = xi_moment(&[0, 0], &Decay::fixed(rat(2, 1))).unwrap();
        assert_eq!(m.value_at_zero().unwrap(), Const::sqrt_pi_pow(-2).scale(&rat(1, 4)));
    }

    #[test]
    fn line_moment_closed_form() {
        // (1/2π) ∫_R (1+ξ²)^{-(s+1)/2} = (1/(sπ)) Γ(1/2) Γ(s/2+1)/Γ((s+1)/2)
        let m = xi_moment(&[0], &Decay::from_w_power(-1)).unwrap();
        let g = SFunction::gamma_ratio(rat(1, 2), rat(1, 1), rat(1, 2)).unwrap();
        let expect = g.mul_ratfunc(&rf(&[1], &[0, 1])).scale(&Const::sqrt_pi_pow(-1));
        assert_eq!(m, expect);
    }

    #[test]
    fn beta_moments() {
        assert_eq!(beta_moment(&rat(1, 2), &rat(1, 2)).unwrap(), Const::pi());
        assert_eq!(beta_moment(&rat(1, 1), &rat(1, 1)).unwrap(), Const::from_int(1));
        assert_eq!(beta_moment(&rat(3, 2), &rat(2, 1)).unwrap(), Const::from_rational(rat(4, 15)));
        assert!(beta_moment(&rat(0, 1), &rat(1, 1)).is_err());
        assert!(beta_moment(&rat(1, 3), &rat(1, 1)).is_err());
    }

    #[test]
    fn gamma_ratio_values() {
        let sp = Const::sqrt_pi_pow(1);
        assert_eq!(gamma_ratio_at_zero(&rat(1, 1)).unwrap(), (Const::from_int(-1), Const::from_int(-1)));
        assert_eq!(gamma_ratio_at_zero(&rat(1, 2)).unwrap(), (Const::zero(), sp.scale(&rat(-2, 1))));
        assert_eq!(gamma_ratio_at_zero(&rat(2, 1)).unwrap(), (Const::from_rational(rat(1, 2)), Const::from_rational(rat(3, 4))));
    }
}
