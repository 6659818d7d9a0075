//! Variables of boundary symbols.

use std::fmt;

/// A variable of a full symbol.
///
/// `Xi`, `W` and `Rinv` carry the cotangent and spectral dependence
/// (`w = sqrt(g^{ab} xi_a xi_b + lambda)`, `Rinv = (mu - w)^{-1}`); `Y` are
/// boundary normal coordinates centred at the base point; the remaining
/// variables are Taylor coefficients of the geometry at the base point.
/// Tangential indices run over `1..m`, the normal index is `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Xi(u8),
    W,
    Rinv,
    Y(u8),
    /// Principal curvature.
    Kappa(u8),
    /// Gaussian curvature of the boundary surface.
    CurvY,
    /// `R(e_m, e_a, e_m, e_b)`, `a <= b`.
    Rho(u8, u8),
    /// Tangential derivative of the second fundamental form, `a <= b`.
    Dl(u8, u8, u8),
    /// Connection matrix entry `omega_k[i, j]` at the base point (`d = 0`)
    /// or its first derivative in direction `d`.
    Omega { k: u8, i: u8, j: u8, d: u8 },
    /// Endomorphism entry `E[i, j]` at the base point.
    E(u8, u8),
}

impl Var {
    /// Curvature weight: the number of derivatives of the metric the
    /// coefficient represents, with coordinates counting `-1`.
    pub fn weight(self) -> i32 {
        match self {
            Var::Xi(_) | Var::W | Var::Rinv => 0,
            Var::Y(_) => -1,
            Var::Kappa(_) => 1,
            Var::CurvY | Var::Rho(..) | Var::Dl(..) | Var::E(..) => 2,
            Var::Omega { d, .. } => {
                if d == 0 {
                    1
                } else {
                    2
                }
            }
        }
    }

    /// True for the cotangent and spectral variables.
    pub fn is_fibre(self) -> bool {
        matches!(self, Var::Xi(_) | Var::W | Var::Rinv)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Xi(a) => write!(f, "xi{a}"),
            Var::W => write!(f, "w"),
            Var::Rinv => write!(f, "R"),
            Var::Y(a) => write!(f, "y{a}"),
            Var::Kappa(a) => write!(f, "kappa{a}"),
            Var::CurvY => write!(f, "K_Y"),
            Var::Rho(a, b) => write!(f, "rho{a}{b}"),
            Var::Dl(a, b, c) => write!(f, "dL{a}{b}_{c}"),
            Var::Omega { k, i, j, d } => {
                if *d == 0 {
                    write!(f, "w{k}[{i},{j}]")
                } else {
                    write!(f, "d{d}w{k}[{i},{j}]")
                }
            }
            Var::E(i, j) => write!(f, "E[{i},{j}]"),
        }
    }
}
