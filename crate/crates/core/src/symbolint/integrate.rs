//! Contour integration in the spectral variable and moment integration in
//! the cotangent variable of traced resolvent symbols at a boundary point.

use std::collections::BTreeMap;

use super::invariants::GeoDensity;
use crate::error::{Error, Result};
use crate::specfun::{contour_residue, xi_moment, Decay, RatFunc};
use crate::symbolcas::model::at_base;
use crate::symbolcas::ring::Mono;
use crate::symbolcas::{Sym, SymMatrix, Var};

/// A term `(re + i im)(s) * xi^a * w^(w_exp - s) * geo` left after the
/// spectral contour integral, with `w = sqrt(|xi|^2 + 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ContourTerm {
    pub geo: Mono<Var>,
    pub xi: Vec<u32>,
    pub w_exp: i64,
    pub re: RatFunc,
    pub im: RatFunc,
}

/// Replace every `(mu - w)^{-j}` by its contour integral against
/// `mu^{-s}`, counterclockwise around `w`.
pub fn mu_contour(p: &Sym, d: usize) -> Result<Vec<ContourTerm>> {
    let mut acc: BTreeMap<(Mono<Var>, Vec<u32>, i64), (RatFunc, RatFunc)> = BTreeMap::new();
    for (mono, c) in p.terms() {
        let mut xi = vec![0u32; d];
        let mut wk = 0i64;
        let mut j = 0i64;
        let mut geo = Vec::new();
        for (v, e) in mono {
            match v {
                Var::Xi(a) => {
                    xi[*a as usize - 1] =
                        u32::try_from(*e).map_err(|_| Error::Invalid("negative power of a cotangent variable".into()))?
                }
                Var::W => wk = i64::from(*e),
                Var::Rinv => j = i64::from(*e),
                Var::Y(_) => return Err(Error::Invalid("symbol not evaluated at the base point".into())),
                other => geo.push((*other, *e)),
            }
        }
        if j <= 0 {
            return Err(Error::Invalid("term without a resolvent factor".into()));
        }
        let res = contour_residue(j as u32)?;
        let key = (geo, xi, wk - j + 1);
        let re = res.scale(&c.re);
        let im = res.scale(&c.im);
        let entry = acc.entry(key).or_insert_with(|| (RatFunc::zero(), RatFunc::zero()));
        entry.0 = &entry.0 + &re;
        entry.1 = &entry.1 + &im;
    }
    Ok(acc
        .into_iter()
        .filter(|(_, (re, im))| !(re.is_zero() && im.is_zero()))
        .map(|((geo, xi, w_exp), (re, im))| ContourTerm { geo, xi, w_exp, re, im })
        .collect())
}

/// Integrate over the cotangent fibre with the `(2 pi)^{-d}` normalisation.
/// Odd moments vanish; the imaginary part must cancel.
pub fn xi_integrate(terms: &[ContourTerm], d: usize) -> Result<GeoDensity> {
    let mut re = GeoDensity::zero();
    let mut im = GeoDensity::zero();
    for t in terms {
        if t.xi.len() != d {
            return Err(Error::Invalid("cotangent dimension mismatch".into()));
        }
        if t.xi.iter().any(|a| a % 2 == 1) {
            continue;
        }
        let moment = xi_moment(&t.xi, &Decay::from_w_power(t.w_exp))?;
        if !t.re.is_zero() {
            re.add_term(t.geo.clone(), moment.mul_ratfunc(&t.re));
        }
        if !t.im.is_zero() {
            im.add_term(t.geo.clone(), moment.mul_ratfunc(&t.im));
        }
    }
    if !im.is_zero() {
        return Err(Error::Invalid("imaginary part survives the fibre integral".into()));
    }
    Ok(re)
}

/// Trace over the tangential block, evaluate at the base point and
/// integrate.
pub fn integrate_trace(mat: &SymMatrix, d: usize) -> Result<GeoDensity> {
    let tr = mat.trace();
    let p = at_base(&tr);
    xi_integrate(&mu_contour(&p, d)?, d)
}

/// Same as [`integrate_trace`] but with odd monomials removed before the
/// trace; used to check that the two orders agree.
pub fn integrate_trace_even_first(mat: &SymMatrix, d: usize) -> Result<GeoDensity> {
    let even = mat.map(|e| {
        at_base(e).filter(|m| m.iter().all(|(v, k)| !matches!(v, Var::Xi(_)) || k % 2 == 0))
    });
    let tr = even.trace();
    xi_integrate(&mu_contour(&tr, d)?, d)
}
