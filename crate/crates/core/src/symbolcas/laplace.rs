//! Symbol of the tangential part of the Hodge Laplacian in boundary normal
//! coordinates, together with the normal-direction data entering the
//! Riccati equation.

use super::frame::Frame;
use super::model::{ConnectionMode, JetModel};
use super::symbol::{imag, xi, Calculus, Sym, SymMatrix};
use crate::specfun::rat;

#[derive(Clone, Debug)]
pub struct LaplaceSymbol {
    pub model: JetModel,
    pub calc: Calculus,
    /// Degree-one symbol.
    pub p1: SymMatrix,
    /// Degree-zero symbol.
    pub p0: SymMatrix,
    /// Scalar coefficient `A` of the first normal derivative.
    pub a: Sym,
    pub omega_m: SymMatrix,
    /// `d_m omega_m + omega_m omega_m - A omega_m`.
    pub normal_potential: SymMatrix,
}

impl LaplaceSymbol {
    pub fn new(frame: &Frame, mode: ConnectionMode) -> LaplaceSymbol {
        Self::from_model(JetModel::new(frame, mode))
    }

    pub fn from_model(model: JetModel) -> LaplaceSymbol {
        let frame = &model.frame.clone();
        let calc = Calculus::new(&model);
        let m = frame.m;
        let n = frame.n();
        let tang: Vec<u8> = (1..m).collect();
        let omega = |k: u8| &model.omega[k as usize - 1];

        // Tangential Christoffel symbols Gamma^c_{ab}.
        let christoffel = |c: u8, a: u8, b: u8| {
            let mut s = Sym::zero();
            for &e in &tang {
                let inner = calc
                    .d_coord(model.glow(e, a), b)
                    .add(&calc.d_coord(model.glow(e, b), a))
                    .sub(&calc.d_coord(model.glow(a, b), e));
                s.add_assign(&calc.mul(model.ginv(c, e), &inner));
            }
            s.scale(&rat(1, 2))
        };

        let mut scalar1 = Sym::zero();
        let mut conn1 = SymMatrix::zero(n);
        for &a in &tang {
            for &b in &tang {
                let c = calc
                    .mul(model.ginv(a, b), &calc.d_coord(&model.ln_det, a))
                    .scale(&rat(1, 2))
                    .add(&calc.d_coord(model.ginv(a, b), a));
                scalar1.add_assign(&c.mul(&xi(b)));
                conn1 = conn1.add(&calc.mat_mul_sym(omega(a), &model.ginv(a, b).mul(&xi(b))));
            }
        }
        let p1 = SymMatrix::scalar(n, &scalar1.mul(&imag(rat(-1, 1)))).add(&conn1.mul_sym(&imag(rat(-2, 1))));

        let mut inner = SymMatrix::zero(n);
        for &a in &tang {
            for &b in &tang {
                let mut t = omega(b).map(|e| calc.d_coord(e, a)).add(&calc.mat_mul(omega(a), omega(b)));
                for &c in &tang {
                    t = t.sub(&calc.mat_mul_sym(omega(c), &christoffel(c, a, b)));
                }
                inner = inner.add(&calc.mat_mul_sym(&t, model.ginv(a, b)));
            }
        }
        let p0 = inner.neg().sub(&model.endo);

        let mut a_coef = Sym::zero();
        for &a in &tang {
            for &b in &tang {
                a_coef.add_assign(&calc.mul(model.ginv(a, b), &calc.d_coord(model.glow(a, b), m)));
            }
        }
        let a_coef = a_coef.scale(&rat(-1, 2));

        let omega_m = omega(m).clone();
        let normal_potential = omega_m
            .map(|e| calc.d_coord(e, m))
            .add(&calc.mat_mul(&omega_m, &omega_m))
            .sub(&calc.mat_mul_sym(&omega_m, &a_coef));

        LaplaceSymbol { model, calc, p1, p0, a: a_coef, omega_m, normal_potential }
    }

    pub fn frame(&self) -> &Frame {
        &self.model.frame
    }

    /// `A - 2 omega_m`.
    pub fn drift(&self) -> SymMatrix {
        SymMatrix::scalar(self.frame().n(), &self.a).sub(&self.omega_m.scale(&rat(2, 1)))
    }
}
