//! Symbol of the resolvent `(mu - Q)^{-1}` of the boundary operator on the
//! tangential block, and its decomposition into named pieces.

use super::riccati::RiccatiSolution;
use super::symbol::{degree_part, rinv_pow, w_pow, Calculus, SymMatrix};
use crate::error::{Error, Result};
use crate::specfun::rat;

/// Restriction of a full symbol to the tangential block.
pub fn project(sol: &RiccatiSolution, m: &SymMatrix) -> SymMatrix {
    m.block(sol.frame().n_t)
}

#[derive(Clone, Debug)]
pub struct Resolvent {
    pub calc: Calculus,
    /// Projected symbols of orders 1, 0, -1.
    pub alpha: [SymMatrix; 3],
    /// `r_{-1}, r_{-2}, ...`
    pub r: Vec<SymMatrix>,
}

impl Resolvent {
    fn alpha(&self, order: i32) -> &SymMatrix {
        &self.alpha[(1 - order) as usize]
    }

    pub fn r(&self, j: usize) -> &SymMatrix {
        &self.r[j - 1]
    }
}

/// Resolvent symbol terms `r_{-1}, ..., r_{-depth}` with `depth <= 3`.
pub fn resolvent_expand(sol: &RiccatiSolution, depth: usize) -> Result<Resolvent> {
    if !(1..=3).contains(&depth) {
        return Err(Error::Unsupported(format!("resolvent depth {depth}")));
    }
    let nt = sol.frame().n_t;
    let calc = sol.lap.calc.clone();
    let alpha = [project(sol, &sol.alpha1), project(sol, &sol.alpha0), project(sol, &sol.alpha_m1)];
    let mut res = Resolvent { calc, alpha, r: vec![SymMatrix::scalar(nt, &rinv_pow(1))] };
    for j in 1..depth {
        let mut acc = SymMatrix::zero(nt);
        for k in 0..j {
            for l in 0..=(j - k) {
                let om = j - k - l;
                acc = acc.add(&res.calc.compose_order(res.alpha(1 - l as i32), res.r(k + 1), om));
            }
        }
        res.r.push(acc.mul_sym(&rinv_pow(1)));
    }
    Ok(res)
}

/// Homogeneous components, from order 0 down to `lowest`, of
/// `(mu - alpha_1 - alpha_0 - alpha_{-1}) ⋆ (r_{-1} + ... + r_{-depth}) - Id`
/// on the tangential block. `mu` is written as `(mu - w) + w`.
pub fn parametrix_defect(res: &Resolvent, lowest: i32) -> Vec<(i32, SymMatrix)> {
    let nt = res.r[0].n;
    let c = &res.calc;
    let mu = rinv_pow(-1).add(&w_pow(1));
    let a = res.alpha.iter().fold(SymMatrix::scalar(nt, &mu), |acc, x| acc.sub(x));
    let b = res.r.iter().fold(SymMatrix::zero(nt), |acc, r| acc.add(r));
    let mut prod = SymMatrix::identity(nt).neg();
    for k in 0..=(-lowest).max(0) as usize {
        prod = prod.add(&c.compose_order(&a, &b, k));
    }
    (lowest..=0).rev().map(|d| (d, prod.map(|e| degree_part(e, d)))).collect()
}

pub const TERM_LABELS: [&str; 12] = ["I", "II", "III", "IV", "V1", "V2", "V3", "V4", "V5", "V6", "V7", "V8"];

/// The twelve pieces of `r_{-3}`: four composition terms and the eight
/// pieces of `alpha_{-1} r_{-1} / (mu - w)`.
pub fn named_terms_r3(sol: &RiccatiSolution, res: &Resolvent) -> Result<Vec<(&'static str, SymMatrix)>> {
    if res.r.len() < 2 {
        return Err(Error::Invalid("resolvent expansion too short".into()));
    }
    let c = &res.calc;
    let r1 = res.r(1);
    let r2 = res.r(2);
    let a1 = res.alpha(1);
    let a0 = res.alpha(0);
    let rinv = rinv_pow(1);
    let t1 = c.compose_order(a1, r1, 2).mul_sym(&rinv);
    let t2 = c.compose_order(a1, r2, 1).mul_sym(&rinv);
    let t3 = c.compose_order(a0, r1, 1).mul_sym(&rinv);
    let t4 = c.mat_mul(a0, r2).mul_sym(&rinv);
    let mut out = vec![("I", t1), ("II", t2), ("III", t3), ("IV", t4)];
    let factor = rinv_pow(2).mul(&w_pow(-1)).scale(&rat(1, 2));
    for (k, p) in sol.parts.iter().enumerate() {
        out.push((TERM_LABELS[4 + k], project(sol, p).mul_sym(&factor)));
    }
    Ok(out)
}
