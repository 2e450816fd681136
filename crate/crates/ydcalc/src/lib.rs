//! Exact computer algebra for the dual Radford Hopf algebras H_{p,-1}: their doubles,
//! Yetter–Drinfeld modules and braidings, Nichols algebras, lifting algebras presented
//! by rewriting systems, and the resulting classification lists.
//!
//! Everything is exact: scalars live in Q(ζ_{2p})[θ]/(θ² − c) and no floating point is used.

pub mod classify;
pub mod error;
pub mod exactla;
pub mod hopf;
pub mod nichols;
pub mod rewrite;
pub mod scalar;
pub mod ydmod;

pub use error::{Error, Result};
pub use scalar::{Cyclotomic, ScalarContext, ThetaScalar};
