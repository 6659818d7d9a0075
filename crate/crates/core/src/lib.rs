//! Heat-trace densities and zeta-regularised determinants for
//! Dirichlet-to-Neumann operators acting on differential forms.

pub mod error;
pub mod geom;
pub mod golden;
pub mod report;
pub mod spectra;
pub mod specfun;
pub mod symbolcas;
pub mod symbolint;
pub mod zetadet;

pub use error::{Error, Result};
