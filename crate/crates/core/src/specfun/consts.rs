//! Exact constants: finite sums of rational multiples of
//! `π^{k/2} · Π (log atoms)^{e}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::real::Real;
use crate::error::{Error, Result};

/// Transcendental atoms treated as algebraically independent.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    /// `ln p` for a prime `p`.
    LnPrime(u64),
    LnPi,
    EulerGamma,
}

impl Atom {
    fn value(&self) -> Real {
        match self {
            Atom::LnPrime(p) => Real::from_i64(*p as i64).ln(),
            Atom::LnPi => Real::pi().ln(),
            Atom::EulerGamma => Real::euler_gamma(),
        }
    }

    fn name(&self) -> String {
        match self {
            Atom::LnPrime(p) => format!("ln{p}"),
            Atom::LnPi => "lnpi".into(),
            Atom::EulerGamma => "gamma".into(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CMono {
    /// Exponent of `√π`.
    pub sqrt_pi: i32,
    pub atoms: BTreeMap<Atom, u32>,
}

impl CMono {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn is_one(&self) -> bool {
        self.sqrt_pi == 0 && self.atoms.is_empty()
    }

    pub fn mul(&self, o: &CMono) -> CMono {
        let mut atoms = self.atoms.clone();
        for (a, e) in &o.atoms {
            *atoms.entry(a.clone()).or_insert(0) += e;
        }
        CMono { sqrt_pi: self.sqrt_pi + o.sqrt_pi, atoms }
    }

    pub fn value(&self) -> Real {
        let mut v = Real::pi().sqrt().powi(self.sqrt_pi);
        for (a, e) in &self.atoms {
            v = v * a.value().powi(*e as i32);
        }
        v
    }

    fn render(&self) -> String {
        let mut parts = Vec::new();
        match self.sqrt_pi {
            0 => {}
            k if k % 2 == 0 => {
                if k == 2 {
                    parts.push("pi".to_string())
                } else {
                    parts.push(format!("pi^{}", k / 2))
                }
            }
            1 => parts.push("sqrt(pi)".into()),
            k => parts.push(format!("pi^({k}/2)")),
        }
        for (a, e) in &self.atoms {
            if *e == 1 {
                parts.push(a.name());
            } else {
                parts.push(format!("{}^{e}", a.name()));
            }
        }
        parts.join("*")
    }
}

/// Exact constant field element.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Const {
    terms: BTreeMap<CMono, BigRational>,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

impl Const {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::monomial(CMono::one(), r)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n, 1))
    }

    pub fn monomial(m: CMono, r: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(m, r);
        }
        Const { terms }
    }

    pub fn atom(a: Atom) -> Self {
        let mut m = CMono::one();
        m.atoms.insert(a, 1);
        Self::monomial(m, BigRational::one())
    }

    /// `π^{k/2}`.
    pub fn sqrt_pi_pow(k: i32) -> Self {
        Self::monomial(CMono { sqrt_pi: k, atoms: BTreeMap::new() }, BigRational::one())
    }

    pub fn pi() -> Self {
        Self::sqrt_pi_pow(2)
    }

    pub fn euler_gamma() -> Self {
        Self::atom(Atom::EulerGamma)
    }

    pub fn ln_pi() -> Self {
        Self::atom(Atom::LnPi)
    }

    /// `ln r` for a positive rational with factors that fit in `u64`.
    pub fn ln_rational(r: &BigRational) -> Result<Self> {
        if !r.is_positive() {
            return Err(Error::Invalid("logarithm of a non-positive rational".into()));
        }
        let n = r.numer().to_u64().ok_or_else(|| Error::Unsupported("numerator too large".into()))?;
        let d = r.denom().to_u64().ok_or_else(|| Error::Unsupported("denominator too large".into()))?;
        let mut out = Const::zero();
        for (p, e) in factor(n) {
            out = out + Const::atom(Atom::LnPrime(p)).scale(&rat(e as i64, 1));
        }
        for (p, e) in factor(d) {
            out = out - Const::atom(Atom::LnPrime(p)).scale(&rat(e as i64, 1));
        }
        Ok(out)
    }

    pub fn ln2() -> Self {
        Self::atom(Atom::LnPrime(2))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, r) = self.terms.iter().next().unwrap();
                m.is_one().then(|| r.clone())
            }
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CMono, &BigRational)> {
        self.terms.iter()
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Const { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * r)).collect() }
    }

    pub fn value(&self) -> Real {
        self.terms.iter().fold(Real::zero(), |acc, (m, c)| acc + Real::from_ratio(c) * m.value())
    }

    fn add_term(&mut self, m: CMono, r: BigRational) {
        let e = self.terms.entry(m.clone()).or_insert_with(BigRational::zero);
        *e += r;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }
}

impl Add for Const {
    type Output = Const;
    fn add(mut self, o: Const) -> Const {
        for (m, r) in o.terms {
            self.add_term(m, r);
        }
        self
    }
}

impl Sub for Const {
    type Output = Const;
    fn sub(self, o: Const) -> Const {
        self + (-o)
    }
}

impl Neg for Const {
    type Output = Const;
    fn neg(self) -> Const {
        Const { terms: self.terms.into_iter().map(|(m, r)| (m, -r)).collect() }
    }
}

impl Mul for &Const {
    type Output = Const;
    fn mul(self, o: &Const) -> Const {
        let mut out = Const::zero();
        for (m1, r1) in &self.terms {
            for (m2, r2) in &o.terms {
                out.add_term(m1.mul(m2), r1 * r2);
            }
        }
        out
    }
}

impl Mul for Const {
    type Output = Const;
    fn mul(self, o: Const) -> Const {
        &self * &o
    }
}

pub(crate) fn render_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Const {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, r) in &self.terms {
            let neg = r.is_negative();
            let a = r.abs();
            let sign = match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let body = if m.is_one() {
                render_rational(&a)
            } else if a.is_one() {
                m.render()
            } else {
                format!("({})*{}", render_rational(&a), m.render())
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_of_rationals_splits_into_primes() {
        let c = Const::ln_rational(&rat(12, 5)).unwrap();
        let expect = Const::ln2().scale(&rat(2, 1)) + Const::atom(Atom::LnPrime(3)) - Const::atom(Atom::LnPrime(5));
        assert_eq!(c, expect);
        assert!((c.value().to_f64() - (12.0f64 / 5.0).ln()).abs() < 1e-14);
    }

    #[test]
    fn arithmetic_cancels() {
        let a = Const::pi().scale(&rat(1, 2)) + Const::ln2();
        let z = a.clone() - a;
        assert!(z.is_zero());
        let p = Const::sqrt_pi_pow(1) * Const::sqrt_pi_pow(1);
        assert_eq!(p, Const::pi());
        assert_eq!(format!("{}", Const::sqrt_pi_pow(-2).scale(&rat(-1, 2))), "-(1/2)*pi^-1");
    }
}
