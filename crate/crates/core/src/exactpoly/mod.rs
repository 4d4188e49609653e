//! Coefficient domains: sparse Laurent polynomials over the integers and the
//! rational-function field used by the solvers.

mod intpoly;
mod laurent;
pub mod linalg;
mod rational;

pub use laurent::LaurentPoly;
pub use rational::RationalFunction;
