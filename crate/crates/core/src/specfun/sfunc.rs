//! Exact functions of the spectral variable `s`.
//!
//! An [`SFunction`] is a finite sum of terms
//! `const · R(s) · Π Γ(c s + p)^e · B^{-s}` with `R` rational over `Q`,
//! `p ∈ {1/2, 1}` after normalisation and `B` a positive rational.
//! The representation is canonical, so structural equality is equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::consts::{rat, render_rational, CMono, Const};
use super::gamma::gamma;
use super::ratfunc::{RatFunc, UPoly};
use super::real::Real;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GammaKey {
    /// Coefficient of `s` in the argument.
    pub c: BigRational,
    /// Normalised offset, `1/2` or `1`.
    pub p: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SKey {
    pub c: CMono,
    pub gammas: BTreeMap<GammaKey, i32>,
    /// `B` in the factor `B^{-s}`; `1` when absent.
    pub base: BigRational,
}

impl SKey {
    fn unit() -> Self {
        SKey { c: CMono::one(), gammas: BTreeMap::new(), base: BigRational::one() }
    }

    fn mul(&self, o: &SKey) -> SKey {
        let mut gammas = self.gammas.clone();
        for (k, e) in &o.gammas {
            let v = gammas.entry(k.clone()).or_insert(0);
            *v += e;
            if *v == 0 {
                gammas.remove(k);
            }
        }
        SKey { c: self.c.mul(&o.c), gammas, base: &self.base * &o.base }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SFunction {
    terms: BTreeMap<SKey, RatFunc>,
}

fn is_half_integer(p: &BigRational) -> bool {
    (p * rat(2, 1)).is_integer()
}

/// `Γ(c s + p) = R(s) Γ(c s + p0)` with `p0 ∈ {1/2, 1}`.
fn normalise_gamma(c: &BigRational, p: &BigRational) -> (RatFunc, GammaKey) {
    let p0 = if p.is_integer() { BigRational::one() } else { rat(1, 2) };
    let n = (p - &p0).to_integer();
    let n: i64 = n.try_into().expect("gamma shift fits in i64");
    let factor = |i: i64| RatFunc::poly(UPoly::linear(c.clone(), &p0 + rat(i, 1)));
    let mut r = RatFunc::one();
    if n >= 0 {
        for i in 0..n {
            r = &r * &factor(i);
        }
    } else {
        for i in n..0 {
            r = &r * &factor(i).inv().expect("nonzero linear factor");
        }
    }
    (r, GammaKey { c: c.clone(), p: p0 })
}

impl SFunction {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SKey, &RatFunc)> {
        self.terms.iter()
    }

    fn single(key: SKey, r: RatFunc) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(key, r);
        }
        SFunction { terms }
    }

    pub fn ratfunc(r: RatFunc) -> Self {
        Self::single(SKey::unit(), r)
    }

    pub fn rational(r: BigRational) -> Self {
        Self::ratfunc(RatFunc::constant(r))
    }

    pub fn constant(c: &Const) -> Self {
        Self::rational(BigRational::one()).scale(c)
    }

    pub fn s() -> Self {
        Self::ratfunc(RatFunc::s())
    }

    /// `Γ(c s + p) / Γ(c s + q)` for half-integer `p`, `q` and `c > 0`.
    pub fn gamma_ratio(c: BigRational, p: BigRational, q: BigRational) -> Result<Self> {
        if !c.is_positive() {
            return Err(Error::Invalid("gamma ratio needs a positive coefficient of s".into()));
        }
        if !is_half_integer(&p) || !is_half_integer(&q) {
            return Err(Error::Unsupported("gamma ratio offsets must be half-integers".into()));
        }
        let (rp, kp) = normalise_gamma(&c, &p);
        let (rq, kq) = normalise_gamma(&c, &q);
        let r = &rp * &rq.inv()?;
        let mut key = SKey::unit();
        if kp != kq {
            key.gammas.insert(kp, 1);
            key.gammas.insert(kq, -1);
        }
        Ok(Self::single(key, r))
    }

    /// `B^{-s}` for a positive rational `B`.
    pub fn power_neg_s(base: BigRational) -> Result<Self> {
        if !base.is_positive() {
            return Err(Error::Invalid("scale must be positive".into()));
        }
        let mut key = SKey::unit();
        key.base = base;
        Ok(Self::single(key, RatFunc::one()))
    }

    pub fn scale(&self, c: &Const) -> Self {
        let mut out = SFunction::zero();
        for (m, r) in c.terms() {
            for (k, f) in &self.terms {
                let mut key = k.clone();
                key.c = key.c.mul(m);
                out.add_term(key, f.scale(r));
            }
        }
        out
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        SFunction { terms: self.terms.iter().map(|(k, f)| (k.clone(), f.scale(r))).collect() }
    }

    pub fn mul_ratfunc(&self, r: &RatFunc) -> Self {
        let mut out = SFunction::zero();
        for (k, f) in &self.terms {
            out.add_term(k.clone(), f * r);
        }
        out
    }

    fn add_term(&mut self, k: SKey, r: RatFunc) {
        if r.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(e) => {
                let sum = &*e + &r;
                if sum.is_zero() {
                    self.terms.remove(&k);
                } else {
                    *e = sum;
                }
            }
            None => {
                self.terms.insert(k, r);
            }
        }
    }

    /// `(f(0), f'(0))`, exact. Individual terms may carry simple poles at
    /// `s = 0` as long as they cancel in the sum.
    pub fn at_zero(&self) -> Result<(Const, Const)> {
        let psi = |p: &BigRational| -> Const {
            let g = -Const::euler_gamma();
            if p.is_integer() {
                g
            } else {
                g - Const::ln2().scale(&rat(2, 1))
            }
        };
        let trigamma = |p: &BigRational| -> Const {
            let f = if p.is_integer() { rat(1, 6) } else { rat(1, 2) };
            Const::sqrt_pi_pow(4).scale(&f)
        };
        let mut residue = Const::zero();
        let mut val = Const::zero();
        let mut der = Const::zero();
        for (key, rf) in &self.terms {
            let (v, c) = rf.laurent_at_zero(3);
            if v < -1 {
                return Err(Error::Unsupported("pole of order above one at s = 0".into()));
            }
            // prefactor: constant monomial times Γ(p0)^e
            let mut mono = key.c.clone();
            let mut a1 = -Const::ln_rational(&key.base)?;
            let mut a2 = Const::zero();
            for (g, e) in &key.gammas {
                if !g.p.is_integer() {
                    mono.sqrt_pi += e;
                }
                let e = rat(*e as i64, 1);
                a1 = a1 + psi(&g.p).scale(&(&e * &g.c));
                a2 = a2 + trigamma(&g.p).scale(&(&e * &g.c * &g.c * rat(1, 2)));
            }
            let k = Const::monomial(mono, BigRational::one());
            let t1 = a1.clone();
            let t2 = a2 + (&a1 * &a1).scale(&rat(1, 2));
            let c0 = Const::from_rational(c[0].clone());
            let c1 = Const::from_rational(c[1].clone());
            let c2 = Const::from_rational(c[2].clone());
            let p = [
                c0.clone(),
                c1.clone() + &c0 * &t1,
                c2 + &c1 * &t1 + &c0 * &t2,
            ];
            let coeff = |power: i64| -> Const {
                let idx = power - v;
                if (0..3).contains(&idx) {
                    &k * &p[idx as usize]
                } else {
                    Const::zero()
                }
            };
            residue = residue + coeff(-1);
            val = val + coeff(0);
            der = der + coeff(1);
        }
        if !residue.is_zero() {
            return Err(Error::Pole(format!("s = 0 with residue {residue}")));
        }
        Ok((val, der))
    }

    pub fn value_at_zero(&self) -> Result<Const> {
        Ok(self.at_zero()?.0)
    }

    pub fn deriv_at_zero(&self) -> Result<Const> {
        Ok(self.at_zero()?.1)
    }

    /// Numerical value at real `s`.
    pub fn eval(&self, s: &Real) -> Result<Real> {
        let mut total = Real::zero();
        for (key, rf) in &self.terms {
            let mut v = key.c.value() * rf.eval(s)?;
            for (g, e) in &key.gammas {
                let arg = Real::from_ratio(&g.c) * s + Real::from_ratio(&g.p);
                v = v * gamma(&arg)?.powi(*e);
            }
            if !key.base.is_one() {
                v = v * Real::from_ratio(&key.base).powr(&-s);
            }
            total = total + v;
        }
        Ok(total)
    }

    /// Exact derivative in `s` (available for pure rational-function content).
    pub fn derivative(&self) -> Result<SFunction> {
        let mut out = SFunction::zero();
        for (key, rf) in &self.terms {
            if !key.gammas.is_empty() || !key.base.is_one() {
                return Err(Error::Unsupported("symbolic derivative of transcendental atoms away from s = 0".into()));
            }
            out.add_term(key.clone(), rf.derivative());
        }
        Ok(out)
    }

    /// The rational function carried with constant monomial `m`, if this is
    /// a pure `Σ const · R(s)` with no Gamma or scale atoms.
    pub fn rational_part(&self, m: &CMono) -> Option<RatFunc> {
        let mut key = SKey::unit();
        key.c = m.clone();
        self.terms.get(&key).cloned()
    }

    pub fn is_pure_rational(&self) -> bool {
        self.terms.keys().all(|k| k.gammas.is_empty() && k.base.is_one())
    }
}

impl Add for &SFunction {
    type Output = SFunction;
    fn add(self, o: &SFunction) -> SFunction {
        let mut out = self.clone();
        for (k, r) in &o.terms {
            out.add_term(k.clone(), r.clone());
        }
        out
    }
}

impl Add for SFunction {
    type Output = SFunction;
    fn add(self, o: SFunction) -> SFunction {
        &self + &o
    }
}

impl Sub for &SFunction {
    type Output = SFunction;
    fn sub(self, o: &SFunction) -> SFunction {
        self + &(-o.clone())
    }
}

impl Sub for SFunction {
    type Output = SFunction;
    fn sub(self, o: SFunction) -> SFunction {
        &self - &o
    }
}

impl Neg for SFunction {
    type Output = SFunction;
    fn neg(self) -> SFunction {
        SFunction { terms: self.terms.into_iter().map(|(k, r)| (k, -r)).collect() }
    }
}

impl Mul for &SFunction {
    type Output = SFunction;
    fn mul(self, o: &SFunction) -> SFunction {
        let mut out = SFunction::zero();
        for (k1, r1) in &self.terms {
            for (k2, r2) in &o.terms {
                out.add_term(k1.mul(k2), r1 * r2);
            }
        }
        out
    }
}

impl Mul for SFunction {
    type Output = SFunction;
    fn mul(self, o: SFunction) -> SFunction {
        &self * &o
    }
}

fn render_gamma(g: &GammaKey) -> String {
    let c = if g.c.is_one() { "s".to_string() } else { format!("{}*s", render_rational(&g.c)) };
    format!("Gamma({c} + {})", render_rational(&g.p))
}

impl fmt::Display for SFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (key, rf) in &self.terms {
            let mut factors = Vec::new();
            let c = Const::monomial(key.c.clone(), BigRational::one());
            if !key.c.is_one() {
                factors.push(format!("{c}"));
            }
            factors.push(format!("[{rf}]"));
            for (g, e) in &key.gammas {
                if *e == 1 {
                    factors.push(render_gamma(g));
                } else {
                    factors.push(format!("{}^{e}", render_gamma(g)));
                }
            }
            if !key.base.is_one() {
                factors.push(format!("({})^(-s)", render_rational(&key.base)));
            }
            parts.push(factors.join("*"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_ratio_reduces_to_rational_for_integer_gaps() {
        // Γ(s/2)/Γ(s/2 + 3) = 8 / (s (s+2) (s+4))
        let g = SFunction::gamma_ratio(rat(1, 2), rat(0, 1), rat(3, 1)).unwrap();
        assert!(g.is_pure_rational());
        let r = g.rational_part(&CMono::one()).unwrap();
        let expect = RatFunc::new(UPoly::constant(rat(8, 1)), &(&UPoly::s() * &UPoly::linear(rat(1, 1), rat(2, 1))) * &UPoly::linear(rat(1, 1), rat(4, 1))).unwrap();
        assert_eq!(r, expect);
    }

    #[test]
    fn pole_cancellation_in_sums() {
        let a = SFunction::ratfunc(RatFunc::inv_linear(rat(0, 1)));
        let b = SFunction::gamma_ratio(rat(1, 1), rat(0, 1), rat(1, 1)).unwrap(); // 1/s
        let d = &a - &b;
        assert!(d.is_zero());
        assert!(matches!(a.at_zero(), Err(Error::Pole(_))));
    }
}
