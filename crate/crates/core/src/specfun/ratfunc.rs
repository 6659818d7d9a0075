//! Univariate polynomials and rational functions in `s` over `Q`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::consts::{rat, render_rational};
use super::real::Real;
use crate::error::{Error, Result};

/// Dense polynomial, coefficient `i` multiplies `s^i`; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UPoly(Vec<BigRational>);

impl UPoly {
    pub fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly(c)
    }

    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// `a s + b`.
    pub fn linear(a: BigRational, b: BigRational) -> Self {
        Self::new(vec![b, a])
    }

    pub fn s() -> Self {
        Self::linear(BigRational::one(), BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.0.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn lead(&self) -> BigRational {
        self.0.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self::new(self.0.iter().map(|c| c * r).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        self.scale(&(BigRational::one() / l))
    }

    /// Order of vanishing at `s = 0`.
    pub fn valuation(&self) -> usize {
        self.0.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn shift_down(&self, k: usize) -> Self {
        Self::new(self.0[k.min(self.0.len())..].to_vec())
    }

    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut r = self.0.clone();
        let dd = d.0.len();
        if r.len() < dd {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![BigRational::zero(); r.len() - dd + 1];
        let lead = d.lead();
        for i in (0..q.len()).rev() {
            let c = &r[i + dd - 1] / &lead;
            if !c.is_zero() {
                for (j, dj) in d.0.iter().enumerate() {
                    r[i + j] -= &c * dj;
                }
            }
            q[i] = c;
        }
        (UPoly::new(q), UPoly::new(r))
    }

    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval(&self, x: &Real) -> Real {
        self.0.iter().rev().fold(Real::zero(), |acc, c| acc * x + Real::from_ratio(c))
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(self.0.iter().enumerate().skip(1).map(|(i, c)| c * rat(i as i64, 1)).collect())
    }

    fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mon = match i {
                0 => String::new(),
                1 => "s".into(),
                k => format!("s^{k}"),
            };
            if mon.is_empty() {
                out.push_str(&render_rational(&a));
            } else if a.is_one() {
                out.push_str(&mon);
            } else {
                out.push_str(&format!("{}*{mon}", render_rational(&a)));
            }
        }
        out
    }

    fn term_count(&self) -> usize {
        self.0.iter().filter(|c| !c.is_zero()).count()
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, o: &UPoly) -> UPoly {
        let n = self.0.len().max(o.0.len());
        UPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, o: &UPoly) -> UPoly {
        let n = self.0.len().max(o.0.len());
        UPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![BigRational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UPoly::new(c)
    }
}

/// Reduced rational function with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: UPoly,
    den: UPoly,
}

impl RatFunc {
    pub fn new(num: UPoly, den: UPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Invalid("zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let (n, _) = num.div_rem(&g);
        let (d, _) = den.div_rem(&g);
        let l = d.lead();
        Ok(RatFunc { num: n.scale(&(BigRational::one() / &l)), den: d.monic() })
    }

    pub fn zero() -> Self {
        RatFunc { num: UPoly::zero(), den: UPoly::one() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        RatFunc { num: UPoly::constant(c), den: UPoly::one() }
    }

    pub fn poly(p: UPoly) -> Self {
        RatFunc { num: p, den: UPoly::one() }
    }

    pub fn s() -> Self {
        Self::poly(UPoly::s())
    }

    /// `1 / (s + a)`.
    pub fn inv_linear(a: BigRational) -> Self {
        RatFunc { num: UPoly::one(), den: UPoly::linear(BigRational::one(), a) }
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        RatFunc { num: self.num.scale(r), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn eval_rational(&self, x: &BigRational) -> Result<BigRational> {
        let d = self.den.eval_rational(x);
        if d.is_zero() {
            return Err(Error::Pole(format!("rational function at s = {x}")));
        }
        Ok(self.num.eval_rational(x) / d)
    }

    pub fn eval(&self, x: &Real) -> Result<Real> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::Pole(format!("rational function at s = {}", x.to_sci(12))));
        }
        Ok(self.num.eval(x) / d)
    }

    /// Laurent data at `s = 0`: `(v, c)` with `f = s^v Σ_i c_i s^i`, `len(c) = n`.
    pub fn laurent_at_zero(&self, n: usize) -> (i64, Vec<BigRational>) {
        if self.is_zero() {
            return (0, vec![BigRational::zero(); n]);
        }
        let vn = self.num.valuation();
        let vd = self.den.valuation();
        let a = self.num.shift_down(vn);
        let b = self.den.shift_down(vd);
        // power series a / b, b_0 != 0
        let b0 = b.coeff(0);
        let mut c: Vec<BigRational> = Vec::with_capacity(n);
        for i in 0..n {
            let mut acc = a.coeff(i);
            for (j, cj) in c.iter().enumerate() {
                acc -= cj * b.coeff(i - j);
            }
            c.push(acc / &b0);
        }
        (vn as i64 - vd as i64, c)
    }

    pub fn derivative(&self) -> RatFunc {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        let d = &self.den * &self.den;
        RatFunc::new(n, d).expect("nonzero denominator")
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc::new(&self.num + &o.num, self.den.clone()).expect("nonzero denominator");
        }
        let n = &(&self.num * &o.den) + &(&o.num * &self.den);
        RatFunc::new(n, &self.den * &o.den).expect("nonzero denominator")
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o.clone())
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: self.num.scale(&rat(-1, 1)), den: self.den }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero denominator")
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.num.render();
        if self.den.degree() == Some(0) {
            return write!(f, "{n}");
        }
        let n = if self.num.term_count() > 1 { format!("({n})") } else { n };
        write!(f, "{n}/({})", self.den.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lin(a: i64, b: i64) -> UPoly {
        UPoly::linear(rat(a, 1), rat(b, 1))
    }

    #[test]
    fn reduces_common_factors() {
        // (s+1)(s+2) / ((s+2) s) = (s+1)/s
        let r = RatFunc::new(&lin(1, 1) * &lin(1, 2), &lin(1, 2) * &lin(1, 0)).unwrap();
        assert_eq!(r, RatFunc::new(lin(1, 1), lin(1, 0)).unwrap());
        assert_eq!(format!("{r}"), "(s + 1)/(s)");
    }

    #[test]
    fn laurent_expansion() {
        // (s+1)/(s(s+2)) = 1/(2s) + 1/4 - s/8 + ...
        let r = RatFunc::new(lin(1, 1), &lin(1, 0) * &lin(1, 2)).unwrap();
        let (v, c) = r.laurent_at_zero(3);
        assert_eq!(v, -1);
        assert_eq!(c, vec![rat(1, 2), rat(1, 4), rat(-1, 8)]);
    }

    #[test]
    fn sums_to_common_denominator() {
        let a = RatFunc::inv_linear(rat(2, 1));
        let b = RatFunc::new(lin(1, 1), lin(1, 2)).unwrap();
        assert_eq!(&a + &b, RatFunc::new(lin(1, 2), lin(1, 2)).unwrap());
        assert_eq!(&a + &b, RatFunc::one());
    }
}
