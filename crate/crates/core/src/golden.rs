//! Reference densities in closed form, stored as exact expressions over the
//! constant field and rational functions of `s`. Used by the derivation
//! commands and the test suite as the comparison target.

use crate::error::{Error, Result};
use crate::specfun::{rat, Const, RatFunc, SFunction, UPoly};
use crate::symbolint::invariants::{CDensity, Inv, SDensity};

/// `prod (s + a)` over the given shifts.
fn factors(shifts: &[i64]) -> UPoly {
    shifts.iter().fold(UPoly::one(), |acc, &a| &acc * &UPoly::linear(rat(1, 1), rat(a, 1)))
}

/// Polynomial from ascending integer coefficients.
fn coeffs(c: &[i64]) -> UPoly {
    UPoly::new(c.iter().map(|&x| rat(x, 1)).collect())
}

fn over_pi(n: i64, d: i64) -> Const {
    Const::sqrt_pi_pow(-2).scale(&rat(n, d))
}

fn mono(m: &[(Inv, i32)]) -> Vec<(Inv, i32)> {
    let mut v = m.to_vec();
    v.sort();
    v
}

struct Builder {
    out: SDensity,
    keep_bundle: bool,
}

impl Builder {
    fn new(q: u8) -> Self {
        Builder { out: SDensity::zero(), keep_bundle: q != 0 }
    }

    fn add(&mut self, m: &[(Inv, i32)], c: Const, num: UPoly, den: UPoly) -> &mut Self {
        if !self.keep_bundle && m.iter().any(|(v, _)| v.is_bundle()) {
            return self;
        }
        let r = RatFunc::new(num, den).expect("nonzero denominator");
        self.out.add_term(mono(m), SFunction::ratfunc(r).scale(&c));
        self
    }

    fn done(&mut self) -> SDensity {
        std::mem::replace(&mut self.out, SDensity::zero())
    }
}

/// Rank of the tangential block for forms of degree `q` on a surface.
pub fn rank_dim3(q: u8) -> Result<i64> {
    match q {
        0 | 2 => Ok(1),
        1 => Ok(2),
        _ => Err(Error::Unsupported(format!("form degree {q} on a surface"))),
    }
}

use Inv::*;

/// Labels of the twelve named pieces of `r_{-3}`, in table order.
pub const TERM_LABELS: [&str; 12] = ["I", "II", "III", "IV", "V1", "V2", "V3", "V4", "V5", "V6", "V7", "V8"];

/// Integrals of the named pieces of `r_{-3}` over the contour and the
/// cotangent fibre. Bundle invariants are omitted for functions.
pub fn term_table_dim3(q: u8) -> Result<Vec<(&'static str, SDensity)>> {
    let r0 = rank_dim3(q)?;
    let one = || coeffs(&[1]);
    let mut b = Builder::new(q);
    let mut t = Vec::new();
    t.push(("I", b.add(&[(TauY, 1)], over_pi(-r0, 24), factors(&[1]), factors(&[2])).done()));
    t.push((
        "II",
        b.add(&[(TauY, 1)], over_pi(r0, 12), factors(&[1]), factors(&[2]))
            .add(&[(TrDOmA, 1)], over_pi(-1, 4), factors(&[1]), factors(&[2]))
            .done(),
    ));
    t.push(("III", SDensity::zero()));
    t.push((
        "IV",
        b.add(&[(H1, 2)], over_pi(r0, 4), factors(&[1, 1, 3]), factors(&[2, 4]))
            .add(&[(H2, 1)], over_pi(-r0, 4), factors(&[1]), factors(&[2, 4]))
            .add(&[(H1, 1), (TrOmM, 1)], over_pi(-1, 2), factors(&[1, 1]), factors(&[2]))
            .add(&[(TrOmMOmM, 1)], over_pi(1, 4), factors(&[1]), one())
            .done(),
    ));
    t.push(("V1", b.add(&[(TauY, 1)], over_pi(-r0, 24), one(), factors(&[2])).done()));
    t.push(("V2", SDensity::zero()));
    t.push((
        "V3",
        b.add(&[(TauY, 1)], over_pi(r0, 12), one(), factors(&[2]))
            .add(&[(TrDOmA, 1)], over_pi(-1, 4), one(), factors(&[2]))
            .done(),
    ));
    t.push((
        "V4",
        b.add(&[(H1, 2)], over_pi(r0, 4), factors(&[1, 3]), factors(&[2, 4]))
            .add(&[(H2, 1)], over_pi(-r0, 4), one(), factors(&[2, 4]))
            .add(&[(TrOmAOmA, 1)], over_pi(-1, 4), one(), factors(&[2]))
            .add(&[(H1, 1), (TrOmM, 1)], over_pi(-1, 2), factors(&[1]), factors(&[2]))
            .add(&[(TrOmMOmM, 1)], over_pi(1, 4), one(), one())
            .done(),
    ));
    t.push((
        "V5",
        b.add(&[(TrDOmA, 1)], over_pi(1, 4), one(), one())
            .add(&[(TrOmAOmA, 1)], over_pi(1, 4), one(), one())
            .add(&[(TrE, 1)], over_pi(1, 4), one(), one())
            .done(),
    ));
    t.push((
        "V6",
        b.add(&[(H1, 2)], over_pi(-r0, 2), factors(&[1]), factors(&[2]))
            .add(&[(H1, 1), (TrOmM, 1)], over_pi(1, 2), coeffs(&[3, 2]), factors(&[2]))
            .add(&[(TrOmMOmM, 1)], over_pi(-1, 2), one(), one())
            .done(),
    ));
    t.push((
        "V7",
        b.add(&[(TauM, 1)], over_pi(r0, 16), factors(&[1]), factors(&[2]))
            .add(&[(TauY, 1)], over_pi(-r0, 16), factors(&[1]), factors(&[2]))
            .add(&[(H1, 2)], over_pi(r0, 2), factors(&[1]), factors(&[4]))
            .add(&[(H2, 1)], over_pi(-r0, 8), coeffs(&[-4, 1, 1]), factors(&[2, 4]))
            .add(&[(TrDOmM, 1)], over_pi(-1, 4), one(), one())
            .done(),
    ));
    t.push((
        "V8",
        b.add(&[(H1, 1), (TrOmM, 1)], over_pi(-1, 2), one(), one())
            .add(&[(TrDOmM, 1)], over_pi(1, 4), one(), one())
            .add(&[(TrOmMOmM, 1)], over_pi(1, 4), one(), one())
            .done(),
    ));
    Ok(t)
}

/// Integral of `Tr r_{-3}` as a function of `s` on a surface boundary.
pub fn r3_integral_dim3(q: u8) -> Result<SDensity> {
    let r0 = rank_dim3(q)?;
    let one = || coeffs(&[1]);
    Ok(Builder::new(q)
        .add(&[(TauM, 1)], over_pi(r0, 16), factors(&[1]), factors(&[2]))
        .add(&[(TauY, 1)], over_pi(-r0, 48), factors(&[-1]), factors(&[2]))
        .add(&[(H1, 2)], over_pi(r0, 4), coeffs(&[2, 7, 6, 1]), factors(&[2, 4]))
        .add(&[(H2, 1)], over_pi(-r0, 8), factors(&[0, 3]), factors(&[2, 4]))
        .add(&[(TrE, 1)], over_pi(1, 4), one(), one())
        .add(&[(TrOmAOmA, 1)], over_pi(1, 4), factors(&[1]), factors(&[2]))
        .add(&[(H1, 1), (TrOmM, 1)], over_pi(-1, 2), coeffs(&[1, 2, 1]), factors(&[2]))
        .add(&[(TrOmMOmM, 1)], over_pi(1, 4), factors(&[1]), one())
        .done())
}

fn cdensity(terms: &[(&[(Inv, i32)], Const)]) -> CDensity {
    let mut out = CDensity::zero();
    for (m, c) in terms {
        out.add_term(mono(m), c.clone());
    }
    out
}

/// `a_0(y)` on a surface boundary in terms of the connection invariants.
pub fn a0_dim3_generic(q: u8) -> Result<CDensity> {
    let r0 = rank_dim3(q)?;
    let mut terms: Vec<(&[(Inv, i32)], Const)> = vec![
        (&[(TauM, 1)], over_pi(r0, 64)),
        (&[(TauY, 1)], over_pi(-r0, 64)),
        (&[(H1, 2)], over_pi(11 * r0, 64)),
        (&[(H2, 1)], over_pi(-3 * r0, 64)),
    ];
    if q != 0 {
        terms.push((&[(TrOmAOmA, 1)], over_pi(1, 16)));
        terms.push((&[(H1, 1), (TrOmM, 1)], over_pi(-3, 8)));
        terms.push((&[(TrOmMOmM, 1)], over_pi(1, 4)));
    }
    Ok(cdensity(&terms))
}

/// `a_0(y)` on a surface boundary for the Hodge Laplacian on `q`-forms.
pub fn a0_dim3(q: u8) -> Result<CDensity> {
    let (d, h2) = match q {
        0 => (64, -3),
        1 => (32, -15),
        2 => (64, 5),
        _ => return Err(Error::Unsupported(format!("form degree {q} on a surface"))),
    };
    Ok(cdensity(&[
        (&[(TauM, 1)], over_pi(1, d)),
        (&[(TauY, 1)], over_pi(-1, d)),
        (&[(H1, 2)], over_pi(11, d)),
        (&[(H2, 1)], over_pi(h2, d)),
    ]))
}

/// `a_0(y)` on a boundary curve in terms of the connection trace.
pub fn a0_dim2_generic() -> CDensity {
    cdensity(&[(&[(Kappa, 1)], over_pi(1, 2)), (&[(TrOmM, 1)], &Const::ln2() * &over_pi(-1, 1))])
}

/// `a_0(y)` on a boundary curve for functions and one-forms.
pub fn a0_dim2(q: u8) -> Result<CDensity> {
    match q {
        0 => Ok(cdensity(&[(&[(Kappa, 1)], over_pi(1, 2))])),
        1 => Ok(cdensity(&[(&[(Kappa, 1)], over_pi(1, 2) - (&Const::ln2() * &over_pi(1, 1)))])),
        _ => Err(Error::Unsupported(format!("form degree {q} on a curve"))),
    }
}

/// `q_1(y)` on a boundary curve.
pub fn q1_dim2(q: u8) -> Result<CDensity> {
    match q {
        0 => Ok(CDensity::zero()),
        1 => Ok(cdensity(&[(&[(Kappa, 1)], over_pi(-1, 2))])),
        _ => Err(Error::Unsupported(format!("form degree {q} on a curve"))),
    }
}

/// `pi_0(y)` on a surface boundary.
pub fn pi0_dim3(q: u8) -> Result<CDensity> {
    Ok(cdensity(&[(&[], over_pi(rank_dim3(q)?, 8))]))
}

/// `q_2(y)` on a surface boundary in terms of the connection invariants.
pub fn q2_dim3_generic(q: u8) -> Result<CDensity> {
    let r0 = rank_dim3(q)?;
    let mut terms: Vec<(&[(Inv, i32)], Const)> = vec![
        (&[(TauM, 1)], over_pi(r0, 64)),
        (&[(TauY, 1)], over_pi(r0, 192)),
        (&[(H1, 2)], over_pi(r0, 32)),
    ];
    if q != 0 {
        terms.push((&[(TrE, 1)], over_pi(1, 8)));
        terms.push((&[(TrOmAOmA, 1)], over_pi(1, 16)));
        terms.push((&[(H1, 1), (TrOmM, 1)], over_pi(-1, 8)));
        terms.push((&[(TrOmMOmM, 1)], over_pi(1, 8)));
    }
    Ok(cdensity(&terms))
}

/// Integrand of `zeta_Q(0) + dim ker Q` on a boundary curve.
pub fn zeta0_dim2(q: u8) -> Result<CDensity> {
    match q {
        0 => Ok(CDensity::zero()),
        1 => Ok(cdensity(&[(&[(Kappa, 1)], over_pi(-1, 1))])),
        _ => Err(Error::Unsupported(format!("form degree {q} on a curve"))),
    }
}

/// Integrand of `zeta_Q(0) + dim ker Q` on a surface boundary.
pub fn zeta0_dim3(q: u8) -> Result<CDensity> {
    let (tm, ty, h) = match q {
        0 => ((1, 8), (1, 24), (1, 4)),
        1 => ((-1, 4), (-5, 12), (1, 2)),
        2 => ((-3, 8), (13, 24), (1, 4)),
        _ => return Err(Error::Unsupported(format!("form degree {q} on a surface"))),
    };
    let c = |(n, d): (i64, i64)| over_pi(n, 4 * d);
    Ok(cdensity(&[(&[(TauM, 1)], c(tm)), (&[(TauY, 1)], c(ty)), (&[(H1, 2)], c(h))]))
}

/// Rational coefficient helper for callers assembling numeric constants.
pub fn coefficient(p: &CDensity, m: &[(Inv, i32)]) -> Const {
    p.coeff(&mono(m))
}
