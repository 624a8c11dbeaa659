//! Exact polynomial arithmetic and the graded exterior algebra over a free
//! module of rank r.

pub mod endo;
pub mod kvector;
pub mod parse;
pub mod poly;

pub use endo::EndoTensor;
pub use kvector::{KVector, Naming, Variance};
pub use poly::{rat, ratio, Poly, Rational};
