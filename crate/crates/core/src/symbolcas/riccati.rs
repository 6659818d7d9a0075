//! Symbol of the Dirichlet-to-Neumann type factor solving the Riccati
//! equation `R^2 = D - (A - 2 omega_m) R + d_m R - (d_m omega_m + omega_m^2 - A omega_m)`.

use super::frame::Frame;
use super::laplace::LaplaceSymbol;
use super::model::{ConnectionMode, JetModel};
use super::symbol::{degree_part, imag, w_pow, SymMatrix};
use crate::error::{Error, Result};
use crate::specfun::rat;

#[derive(Clone, Debug)]
pub struct RiccatiSolution {
    pub lap: LaplaceSymbol,
    pub alpha1: SymMatrix,
    pub alpha0: SymMatrix,
    pub alpha_m1: SymMatrix,
    /// The eight contributions to `2 w alpha_{-1}`.
    pub parts: [SymMatrix; 8],
}

impl RiccatiSolution {
    pub fn frame(&self) -> &Frame {
        self.lap.frame()
    }

    pub fn alpha(&self, order: i32) -> &SymMatrix {
        match order {
            1 => &self.alpha1,
            0 => &self.alpha0,
            -1 => &self.alpha_m1,
            _ => panic!("symbol order {order} not computed"),
        }
    }
}

fn half_inv_w(m: &SymMatrix) -> SymMatrix {
    m.mul_sym(&w_pow(-1).scale(&rat(1, 2)))
}

fn times_drift(lap: &LaplaceSymbol, m: &SymMatrix) -> SymMatrix {
    lap.calc.mat_mul(&lap.drift(), m)
}

/// Solve for the top three homogeneous terms by matching orders.
pub fn riccati_solve(frame: &Frame, mode: ConnectionMode) -> Result<RiccatiSolution> {
    riccati_solve_in(LaplaceSymbol::new(frame, mode))
}

/// As `riccati_solve`, keeping curvature weight up to `budget`.
pub fn riccati_solve_with_budget(frame: &Frame, mode: ConnectionMode, budget: i32) -> Result<RiccatiSolution> {
    riccati_solve_in(LaplaceSymbol::from_model(JetModel::with_budget(frame, mode, budget)))
}

fn riccati_solve_in(lap: LaplaceSymbol) -> Result<RiccatiSolution> {
    let frame = &lap.frame().clone();
    let c = &lap.calc;
    let n = frame.n();
    let m = frame.m;

    let alpha1 = SymMatrix::scalar(n, &w_pow(1));

    // order 1: 2w alpha0 + (d_xi alpha1)(D_y alpha1) = p1 - drift alpha1 + d_m alpha1
    let known1 = c.compose_order(&alpha1, &alpha1, 1);
    let rhs1 = lap.p1.sub(&times_drift(&lap, &alpha1)).add(&c.mat_d_y(&alpha1, m));
    let alpha0 = half_inv_w(&rhs1.sub(&known1));

    // order 0
    let known0 = c
        .compose_order(&alpha1, &alpha1, 2)
        .add(&c.compose_order(&alpha1, &alpha0, 1))
        .add(&c.compose_order(&alpha0, &alpha1, 1))
        .add(&c.mat_mul(&alpha0, &alpha0));
    let rhs0 = lap
        .p0
        .sub(&times_drift(&lap, &alpha0))
        .add(&c.mat_d_y(&alpha0, m))
        .sub(&lap.normal_potential);
    let alpha_m1 = half_inv_w(&rhs0.sub(&known0));

    let parts = named_parts(&lap, &alpha1, &alpha0);
    let sol = RiccatiSolution { lap, alpha1, alpha0, alpha_m1, parts };
    let sum = sol.parts.iter().fold(SymMatrix::zero(n), |acc, p| acc.add(p));
    if half_inv_w(&sum) != sol.alpha_m1 {
        return Err(Error::Invalid("named decomposition of the order -1 symbol does not match".into()));
    }
    Ok(sol)
}

fn named_parts(lap: &LaplaceSymbol, a1: &SymMatrix, a0: &SymMatrix) -> [SymMatrix; 8] {
    let c = &lap.calc;
    let m = lap.frame().m;
    let tang: Vec<u8> = (1..m).collect();
    let i = imag(rat(1, 1));

    // P1: sum_{|omega|=2} (1/omega!) d_xi^omega w d_y^omega w
    let mut p1 = SymMatrix::zero(a1.n);
    for (idx, f) in c.multi_indices(2) {
        let dx = idx.iter().fold(a1.clone(), |acc, k| c.mat_d_xi(&acc, *k));
        let dy = idx.iter().fold(a1.clone(), |acc, k| c.mat_d_y(&acc, *k));
        p1 = p1.add(&c.mat_mul(&dx, &dy).scale(&f));
    }
    let mut p2 = SymMatrix::zero(a1.n);
    let mut p3 = SymMatrix::zero(a1.n);
    for &k in &tang {
        p2 = p2.add(&c.mat_mul(&c.mat_d_xi(a0, k), &c.mat_d_y(a1, k)));
        p3 = p3.add(&c.mat_mul(&c.mat_d_xi(a1, k), &c.mat_d_y(a0, k)));
    }
    let p2 = p2.mul_sym(&i);
    let p3 = p3.mul_sym(&i);
    let p4 = c.mat_mul(a0, a0).neg();
    let p5 = lap.p0.clone();
    let p6 = times_drift(lap, a0).neg();
    let p7 = c.mat_d_y(a0, m);
    let p8 = lap.normal_potential.neg();
    [p1, p2, p3, p4, p5, p6, p7, p8]
}

/// Homogeneous components of the Riccati residual for the truncated
/// solution `alpha1 + alpha0 + alpha_{-1}`, from degree 2 down to `lowest`.
pub fn riccati_residual(sol: &RiccatiSolution, lowest: i32) -> Vec<(i32, SymMatrix)> {
    let lap = &sol.lap;
    let c = &lap.calc;
    let n = sol.frame().n();
    let m = sol.frame().m;
    let r = sol.alpha1.add(&sol.alpha0).add(&sol.alpha_m1);
    let mut lhs = SymMatrix::zero(n);
    for k in 0..=2 {
        lhs = lhs.add(&c.compose_order(&r, &r, k));
    }
    let p2 = SymMatrix::scalar(n, &w_pow(2));
    let rhs = p2
        .add(&lap.p1)
        .add(&lap.p0)
        .sub(&times_drift(lap, &r))
        .add(&c.mat_d_y(&r, m))
        .sub(&lap.normal_potential);
    let diff = lhs.sub(&rhs);
    (lowest..=2).rev().map(|d| (d, diff.map(|e| degree_part(e, d)))).collect()
}
