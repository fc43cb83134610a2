//! Exact arithmetic in ℚ(ζₙ) and dense linear algebra over it.
//!
//! Elements are reduced modulo the cyclotomic polynomial Φₙ, so equality is
//! coefficient equality. Arithmetic between different orders is an error.

mod field;
mod matrix;
mod rational;
mod sparse;

pub use field::{
    cyc_add, cyc_inv, cyc_mul, cyc_neg, cyc_root_power, cyclotomic_polynomial, euler_phi, field,
    CycNum, CycloField,
};
pub use matrix::{mat_rank, CycMatrix};
pub use rational::Rational;
pub use sparse::{EchelonBasis, SparseMatrix, SparseVec};
