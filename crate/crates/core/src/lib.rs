//! Exact symbolic calculus for Jacobi algebroids, Jacobi quasi-Nijenhuis
//! structures and generalized complex and contact structures on
//! Courant–Jacobi doubles, over trivialized bundles with polynomial
//! coefficients.

// frame and matrix code indexes several arrays in lockstep
#![allow(clippy::needless_range_loop)]

pub mod algebroid;
pub mod contact;
pub mod courant;
pub mod error;
pub mod gallery;
pub mod identities;
pub mod nijenhuis;
pub mod report;
pub mod sampling;
pub mod structure;
pub mod symalg;

pub use error::{Error, Result};
