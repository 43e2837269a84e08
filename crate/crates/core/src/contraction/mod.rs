//! Lie-algebra contraction of the motion algebra onto the Heisenberg
//! algebra and its footprint on the Mathieu equation.

mod brackets;
mod confluence;
mod odes;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::special::SpecialError;

pub use brackets::{bracket, conjugated_bracket, jacobi_defect, AlgebraElement, BracketTable};
pub use confluence::{
    confluence_sweep, gnuplot_script, l4_apply, l4_residual, limit_constant_factorial, limit_constant_gamma,
    limit_target, monotonicity_failures, mu_of, mu_of_with, normalized_limit, predicted_defect, pseudo_period_grid,
    sweep_csv, transported_mathieu, SampledFunction, SweepConfig, SweepRecord, MIN_POINTS_PER_OSCILLATION,
};
pub use odes::{
    algebraic_mathieu_ode, coefficient_distance, deformed_lame_ode, deformed_lame_ode_casimir, deformed_mathieu_ode,
    lame_ode, lame_oscillator_limit, oscillator_ode, param_map, param_map_inverse, principal_series_casimir,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ContractionError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("grid too coarse: {points_per_oscillation:.1} points per oscillation")]
    GridTooCoarse { points_per_oscillation: f64 },
    #[error(transparent)]
    Special(#[from] SpecialError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
