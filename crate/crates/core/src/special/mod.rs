//! Hermite and parabolic cylinder functions, oscillator eigenfunctions and
//! periodic Mathieu functions.

mod hermite;
mod mathieu;
mod tridiag;

use thiserror::Error;

pub use hermite::{
    gauss_hermite, hermite, hermite_even_at_zero, hermite_poly, hermite_with_derivative, ho_eigenfunction,
    ho_eigenfunction_derivative, ho_overlap, parabolic_D, HermiteBundle,
};
pub use mathieu::{
    char_asymptotic, floquet_recursion_residual, mathieu_char, mathieu_char_with, mathieu_eigen, mathieu_eigenpair,
    mathieu_eval, meixner_envelope, meixner_error, MathieuEigen, MathieuRow, Parity, SolverOptions,
    DEFAULT_MAX_TRUNCATION,
};
pub use tridiag::SymTridiagonal;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecialError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("no convergence for {parity} order {n} at q = {q}: truncation cap {cap} exceeded")]
    NoConvergence { parity: Parity, n: usize, q: f64, cap: usize },
}

/// `n!` as a float.
pub fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}
