//! Spectral and fibre integration of resolvent symbols and the resulting
//! local densities.

pub mod density;
pub mod integrate;
pub mod invariants;

pub use density::{
    a1_dim3, density_a0, density_pi, density_q, derivation_report, heat_difference_a1, DensityResult, Pipeline,
};
pub use integrate::{integrate_trace, mu_contour, xi_integrate, ContourTerm};
pub use invariants::{at_zero, recognise, specialise, CDensity, GeoDensity, Inv, SDensity};

#[cfg(test)]
mod tests;
