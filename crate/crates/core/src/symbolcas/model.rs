//! Taylor model of the geometry around a boundary point in boundary normal
//! coordinates, truncated at a fixed curvature weight.
//!
//! Metric jets are expressed through the principal curvatures, the
//! curvature of the boundary, the normal curvature components
//! `R(e_m, e_a, e_m, e_b)` and the tangential derivative of the second
//! fundamental form.

use super::frame::Frame;
use super::gens::Var;
use super::symbol::{int, var, Sym, SymMatrix};
use crate::specfun::rat;

/// Treatment of the connection and endomorphism at the base point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConnectionMode {
    /// Entries are free coefficients, subject only to the structural zeros
    /// of a frame adapted to the boundary.
    Abstract,
    /// Entries take the values induced by the Levi-Civita connection and
    /// the Weitzenbock endomorphism; first derivatives stay free.
    Concrete,
}

fn delta(a: u8, b: u8) -> i64 {
    i64::from(a == b)
}

fn kappa(a: u8) -> Sym {
    var(Var::Kappa(a))
}

fn rho(a: u8, b: u8) -> Sym {
    var(Var::Rho(a.min(b), a.max(b)))
}

fn dl(a: u8, b: u8, c: u8) -> Sym {
    var(Var::Dl(a.min(b), a.max(b), c))
}

#[derive(Clone, Debug)]
pub struct JetModel {
    pub frame: Frame,
    pub mode: ConnectionMode,
    /// Highest curvature weight kept.
    pub budget: i32,
    /// Tangential inverse metric, row-major `d x d`.
    pub ginv: Vec<Sym>,
    /// Tangential metric.
    pub glow: Vec<Sym>,
    pub ln_det: Sym,
    /// `omega_1, ..., omega_m`.
    pub omega: Vec<SymMatrix>,
    pub endo: SymMatrix,
}

/// Second jets `[c, e]` of the boundary inverse metric at the base point.
fn ginv_tt(d: u8, a: u8, b: u8, c: u8, e: u8) -> Sym {
    if d < 2 {
        return Sym::zero();
    }
    let k = 2 * delta(a, b) * delta(c, e) - delta(a, e) * delta(b, c) - delta(a, c) * delta(b, e);
    var(Var::CurvY).scale(&rat(k, 3))
}

struct Jets {
    value: Sym,
    normal: Sym,
    /// `[c, e]` for tangential `c, e`.
    tt: Box<dyn Fn(u8, u8) -> Sym>,
    /// `[c, m]`.
    tn: Box<dyn Fn(u8) -> Sym>,
    nn: Sym,
}

fn taylor(m: u8, budget: i32, j: Jets) -> Sym {
    let y = |a: u8| var(Var::Y(a));
    let mut p = j.value.add(&y(m).mul(&j.normal));
    if budget >= 2 {
        for c in 1..m {
            for e in 1..m {
                p.add_assign(&y(c).mul(&y(e)).mul(&(j.tt)(c, e)).scale(&rat(1, 2)));
            }
            p.add_assign(&y(c).mul(&y(m)).mul(&(j.tn)(c)));
        }
        p.add_assign(&y(m).mul(&y(m)).mul(&j.nn).scale(&rat(1, 2)));
    }
    p
}

impl JetModel {
    /// Model keeping curvature weight up to `m - 1`, which is all the
    /// densities need.
    pub fn new(frame: &Frame, mode: ConnectionMode) -> JetModel {
        Self::with_budget(frame, mode, i32::from(frame.m - 1))
    }

    /// Model keeping curvature weight up to `budget` (at most two, the
    /// order of the Taylor jets).
    pub fn with_budget(frame: &Frame, mode: ConnectionMode, budget: i32) -> JetModel {
        let m = frame.m;
        let d = m - 1;
        let budget = budget.clamp(1, 2);
        let mut ginv = Vec::new();
        let mut glow = Vec::new();
        for a in 1..=d {
            for b in 1..=d {
                let dab = delta(a, b);
                ginv.push(taylor(
                    m,
                    budget,
                    Jets {
                        value: int(dab),
                        normal: kappa(a).scale(&rat(2 * dab, 1)),
                        tt: Box::new(move |c, e| ginv_tt(d, a, b, c, e)),
                        tn: Box::new(move |c| dl(a, b, c).scale(&rat(2, 1))),
                        nn: rho(a, b).scale(&rat(2, 1)).add(&kappa(a).mul(&kappa(a)).scale(&rat(6 * dab, 1))),
                    },
                ));
                glow.push(taylor(
                    m,
                    budget,
                    Jets {
                        value: int(dab),
                        normal: kappa(a).scale(&rat(-2 * dab, 1)),
                        tt: Box::new(move |c, e| ginv_tt(d, a, b, c, e).neg()),
                        tn: Box::new(move |c| dl(a, b, c).scale(&rat(-2, 1))),
                        nn: rho(a, b).scale(&rat(-2, 1)).add(&kappa(a).mul(&kappa(a)).scale(&rat(2 * dab, 1))),
                    },
                ));
            }
        }
        let sum = |f: &dyn Fn(u8) -> Sym| (1..=d).fold(Sym::zero(), |acc, a| acc.add(&f(a)));
        let ln_det = taylor(
            m,
            budget,
            Jets {
                value: Sym::zero(),
                normal: sum(&kappa).scale(&rat(-2, 1)),
                tt: Box::new(move |c, e| {
                    if d < 2 {
                        Sym::zero()
                    } else {
                        var(Var::CurvY).scale(&rat(-2 * delta(c, e), 3))
                    }
                }),
                tn: Box::new(move |c| (1..=d).fold(Sym::zero(), |acc, a| acc.add(&dl(a, a, c))).scale(&rat(-2, 1))),
                nn: sum(&|a| kappa(a).mul(&kappa(a)).add(&rho(a, a))).scale(&rat(-2, 1)),
            },
        );

        let n = frame.n();
        let omega = (1..=m)
            .map(|k| {
                if frame.q == 0 {
                    return SymMatrix::zero(n);
                }
                let base = match mode {
                    ConnectionMode::Concrete => frame.omega_at_base(k),
                    ConnectionMode::Abstract => SymMatrix::from_fn(n, |i, j| {
                        let same = frame.is_tangential(i) == frame.is_tangential(j);
                        if k == m && !same || k != m && same {
                            Sym::zero()
                        } else {
                            var(Var::Omega { k, i: i as u8, j: j as u8, d: 0 })
                        }
                    }),
                };
                let jets = SymMatrix::from_fn(n, |i, j| {
                    let same = frame.is_tangential(i) == frame.is_tangential(j);
                    if budget < 2 || k == m && !same {
                        return Sym::zero();
                    }
                    (1..=m).fold(Sym::zero(), |acc, dir| {
                        acc.add(&var(Var::Y(dir)).mul(&var(Var::Omega { k, i: i as u8, j: j as u8, d: dir })))
                    })
                });
                base.add(&jets)
            })
            .collect();

        let endo = if frame.q == 0 || budget < 2 {
            SymMatrix::zero(n)
        } else {
            let concrete = frame.endo_at_base_tangential();
            SymMatrix::from_fn(n, |i, j| match (&concrete, mode) {
                (Some(c), ConnectionMode::Concrete) if frame.is_tangential(i) && frame.is_tangential(j) => {
                    c.get(i, j).clone()
                }
                _ => var(Var::E(i as u8, j as u8)),
            })
        };

        JetModel { frame: frame.clone(), mode, budget, ginv, glow, ln_det, omega, endo }
    }

    pub fn d(&self) -> u8 {
        self.frame.m - 1
    }

    pub fn ginv(&self, a: u8, b: u8) -> &Sym {
        &self.ginv[(a as usize - 1) * self.d() as usize + b as usize - 1]
    }

    pub fn glow(&self, a: u8, b: u8) -> &Sym {
        &self.glow[(a as usize - 1) * self.d() as usize + b as usize - 1]
    }
}

/// Value of a symbol at the base point: drop every monomial containing a
/// coordinate.
pub fn at_base(p: &Sym) -> Sym {
    p.filter(|m| !m.iter().any(|(v, _)| matches!(v, Var::Y(_))))
}

pub fn matrix_at_base(m: &SymMatrix) -> SymMatrix {
    m.map(at_base)
}
