//! Exact arithmetic: the scalar field Q(i, sqrt2), sparse multivariate
//! Laurent polynomials, and dense exact linear algebra.

mod matrix;
mod poly;
mod sample;
mod scalar;

pub use matrix::{ExactMatrix, Solver};
pub use poly::{Expo, LaurentPoly, VarSet, Vars};
pub use sample::Sampler;
pub use scalar::Scalar;

use thiserror::Error;

/// Errors from the exact-arithmetic layer.
#[derive(Debug, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("variable sets differ: {0} vs {1}")]
    VarMismatch(String, String),
    #[error("negative or fractional exponent on non-invertible variable {0}")]
    ExponentDomain(String),
    #[error("substitution target for {0} must be an invertible monomial")]
    BadSubstitution(String),
}
