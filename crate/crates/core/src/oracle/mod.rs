//! Independent ground truth for the solver.

mod frobenius;
mod jacobi;
mod numeric;
mod spectrum;

pub use frobenius::frobenius_coefficients;
pub use jacobi::jacobi_reference;
pub use numeric::numeric_check;
pub use spectrum::{q_spectrum, QSpectrum};
