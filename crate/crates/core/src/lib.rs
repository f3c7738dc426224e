//! Exact diagonal-operator iteration for linear ODEs.
//!
//! An equation written as `(F(D) + P) y = 0`, with `D = x d/dx` diagonal on
//! monomials and `P` a sum of homogeneous operators, is solved by
//! `y = sum_m (-1)^m [F(D)^-1 P]^m x^lambda` where `F(lambda) = 0`. This crate
//! implements the method in exact rational arithmetic and applies it to the
//! Heun equation: ascending Frobenius series about 0, descending polynomial
//! candidates from `x^n`, the similarity-transformed variants and the
//! `-sigma/x` extension. Every polynomial claim is checked by substituting it
//! back into the original equation.
//!
//! The [`oracle`] module holds independent ground truth: a Frobenius
//! recurrence read straight off the equation, the accessory-parameter
//! spectrum, reference Jacobi polynomials and an RK4 cross-check.

pub mod cli;
pub mod error;
pub mod heun;
pub mod operator;
pub mod oracle;
pub mod poly;
pub mod scalar;
pub mod series;

pub use error::{Error, Result};
pub use operator::{DiagonalOp, DiffOp, DiffOpTerm};
pub use scalar::Scalar;
pub use series::{series_combine, OffsetSeries};
