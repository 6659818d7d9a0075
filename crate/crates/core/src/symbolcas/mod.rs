//! Symbolic calculus of boundary symbols: the Laplacian on forms in
//! boundary normal coordinates, the Riccati factor, and the resolvent.

pub mod frame;
pub mod gens;
pub mod laplace;
pub mod model;
pub mod resolvent;
pub mod riccati;
pub mod ring;
pub mod symbol;

pub use frame::Frame;
pub use gens::Var;
pub use laplace::LaplaceSymbol;
pub use model::{at_base, matrix_at_base, ConnectionMode, JetModel};
pub use resolvent::{named_terms_r3, parametrix_defect, resolvent_expand, Resolvent, TERM_LABELS};
pub use riccati::{riccati_residual, riccati_solve, riccati_solve_with_budget, RiccatiSolution};
pub use ring::{Poly, Ring, QI};
pub use symbol::{Calculus, Sym, SymMatrix};

#[cfg(test)]
mod tests;
