//! Special functions: multiprecision Gamma/digamma/zeta, the exact constant
//! field, rational functions of `s`, and exact `s`-functions with symbolic
//! values and derivatives at `s = 0`.

pub mod bernoulli;
pub mod consts;
pub mod gamma;
pub mod integrals;
pub mod ratfunc;
pub mod real;
pub mod selftest;
pub mod sfunc;
pub mod zeta;

pub use consts::{rat, Atom, CMono, Const};
pub use integrals::{beta_moment, contour_residue, gamma_ratio_at_zero, xi_moment, Decay};
pub use ratfunc::{RatFunc, UPoly};
pub use real::Real;
pub use sfunc::SFunction;
pub use zeta::{hurwitz_zeta, riemann_zeta, riemann_zeta_deriv};
