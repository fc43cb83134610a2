//! Exact computer algebra for the infinite-dimensional Taft algebras
//! H(n,t,ξ): simple Yetter-Drinfeld modules, their braidings, and probes of
//! the associated Nichols algebras.
//!
//! Layers, bottom up: [`cyclo`] (scalars in ℚ(ζₙ)), [`hopf`] (the Hopf
//! algebra), [`coeffs`] (coaction coefficients and comatrices), [`yd`]
//! (modules), [`braiding`] (braidings, symmetrizers, classification) and
//! [`cli`] (configuration, reports, sweeps).

pub mod braiding;
pub mod cli;
pub mod coeffs;
pub mod cyclo;
pub mod error;
pub mod hopf;
pub mod report;
pub mod yd;

pub use error::{Error, Result};
pub use report::CheckReport;
