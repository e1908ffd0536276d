//! Correction to the spontaneous-emission rate of an excited atom in front of
//! a half-space filled with a dilute suspension of absorptive dielectric
//! spheres.
//!
//! The crate evaluates the multipole series for the decay-rate correction
//! functions `f_perp` and `f_par`, their near- and far-distance asymptotes
//! and the point-scatterer limit, and carries an independent quadrature
//! ladder that checks every closed form it relies on.

#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod hankel_integrals;
pub mod mie;
pub mod oracle;
pub mod quadrature;
pub mod rates;
pub mod scaled;
pub mod specfun;

pub use error::{Error, Result};
pub use specfun::ComplexValue;
