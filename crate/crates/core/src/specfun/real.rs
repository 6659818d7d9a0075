//! Thin multiprecision wrapper around `astro_float::BigFloat`.
//!
//! All values carry the same working precision, which keeps the operator
//! overloads free of precision/rounding arguments.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_rational::BigRational;

/// Working precision in bits (about 77 decimal digits).
pub const PREC: usize = 256;
const RM: RoundingMode = RoundingMode::ToEven;

const EULER_GAMMA: &str = "0.57721566490153286060651209008240243104215933593992359880576723488486772677766467";

thread_local! {
    static CC: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constant cache"));
}

fn with_cc<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CC.with(|c| f(&mut c.borrow_mut()))
}

#[derive(Clone, Debug)]
pub struct Real(BigFloat);

impl Real {
    pub fn from_f64(x: f64) -> Self {
        Real(BigFloat::from_f64(x, PREC))
    }

    pub fn from_i64(x: i64) -> Self {
        Real(BigFloat::from_i64(x, PREC))
    }

    pub fn zero() -> Self {
        Self::from_i64(0)
    }

    pub fn one() -> Self {
        Self::from_i64(1)
    }

    pub fn parse(s: &str) -> Self {
        Real(with_cc(|cc| BigFloat::parse(s, Radix::Dec, PREC, RM, cc)))
    }

    pub fn from_ratio(r: &BigRational) -> Self {
        let n = Self::parse(&r.numer().to_string());
        let d = Self::parse(&r.denom().to_string());
        n / d
    }

    pub fn pi() -> Self {
        Real(with_cc(|cc| cc.pi(PREC, RM)))
    }

    pub fn ln2() -> Self {
        Real(with_cc(|cc| cc.ln_2(PREC, RM)))
    }

    pub fn euler_gamma() -> Self {
        Self::parse(EULER_GAMMA)
    }

    pub fn ln(&self) -> Self {
        Real(with_cc(|cc| self.0.ln(PREC, RM, cc)))
    }

    pub fn exp(&self) -> Self {
        Real(with_cc(|cc| self.0.exp(PREC, RM, cc)))
    }

    pub fn sqrt(&self) -> Self {
        Real(self.0.sqrt(PREC, RM))
    }

    pub fn sin(&self) -> Self {
        Real(with_cc(|cc| self.0.sin(PREC, RM, cc)))
    }

    pub fn cos(&self) -> Self {
        Real(with_cc(|cc| self.0.cos(PREC, RM, cc)))
    }

    /// `self^y` for positive `self`.
    pub fn powr(&self, y: &Real) -> Self {
        (y * &self.ln()).exp()
    }

    pub fn powi(&self, n: i32) -> Self {
        let p = Real(self.0.powi(n.unsigned_abs() as usize, PREC, RM));
        if n < 0 {
            Real::one() / p
        } else {
            p
        }
    }

    pub fn abs(&self) -> Self {
        Real(self.0.abs())
    }

    pub fn floor(&self) -> Self {
        Real(self.0.floor())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative() && !self.0.is_zero()
    }

    pub fn is_nan(&self) -> bool {
        self.0.is_nan()
    }

    pub fn is_int(&self) -> bool {
        self.0.is_int()
    }

    /// Decimal scientific notation with `digits` significant digits.
    pub fn to_sci(&self, digits: usize) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let s = with_cc(|cc| self.0.format(Radix::Dec, RM, cc)).unwrap_or_else(|_| "NaN".into());
        let (mant, exp) = match s.split_once('e') {
            Some((m, e)) => (m.to_string(), e.parse::<i64>().unwrap_or(0)),
            None => (s.clone(), 0),
        };
        let neg = mant.starts_with('-');
        let digits_only: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
        let lead = digits_only.trim_start_matches('0');
        let shift = digits_only.len() - lead.len();
        let exp = exp - shift as i64;
        let mut body: Vec<u8> = lead.bytes().map(|b| b - b'0').collect();
        let mut exp = exp;
        if body.len() > digits {
            let round_up = body[digits] >= 5;
            body.truncate(digits);
            if round_up {
                let mut i = digits;
                loop {
                    if i == 0 {
                        body.insert(0, 1);
                        body.pop();
                        exp += 1;
                        break;
                    }
                    i -= 1;
                    if body[i] == 9 {
                        body[i] = 0;
                    } else {
                        body[i] += 1;
                        break;
                    }
                }
            }
        }
        while body.len() > 1 && *body.last().unwrap() == 0 {
            body.pop();
        }
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        out.push((b'0' + body[0]) as char);
        if body.len() > 1 {
            out.push('.');
            out.extend(body[1..].iter().map(|d| (b'0' + d) as char));
        }
        if exp != 0 {
            out.push_str(&format!("e{exp}"));
        }
        out
    }

    pub fn to_f64(&self) -> f64 {
        self.to_sci(20).parse().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = f.precision().unwrap_or(30);
        write!(f, "{}", self.to_sci(d))
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.0.cmp(&other.0) == Some(0)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.cmp(&other.0).map(|c| c.cmp(&0))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $op:ident) => {
        impl $tr<&Real> for &Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                Real(self.0.$op(&rhs.0, PREC, RM))
            }
        }
        impl $tr<Real> for Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Real> for Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                (&self).$m(rhs)
            }
        }
        impl $tr<Real> for &Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);
binop!(Div, div, div);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(BigFloat::neg(&self.0))
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(BigFloat::neg(&self.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_and_rounds() {
        let x = Real::parse("1.23456789");
        assert_eq!(x.to_sci(4), "1.235");
        assert_eq!(Real::parse("0.0999999").to_sci(3), "1e-1");
        assert_eq!(Real::from_i64(-42).to_sci(5), "-4.2e1");
        assert!((Real::pi().to_f64() - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn euler_constant_matches_string() {
        assert!(Real::euler_gamma().to_sci(30).starts_with("5.772156649015328606065120900"));
    }
}
