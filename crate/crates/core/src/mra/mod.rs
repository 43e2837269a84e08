//! Multiresolution embedding of the pseudo-periodic spaces `H^{α,λ}` into
//! `L²(ℝ)` through a smooth frequency window, with the operators used to
//! follow the motion-group representation to its Heisenberg limit.

mod checks;
mod group;
mod harness;
mod operators;
mod samples;
mod window;

use thiserror::Error;

use crate::special::SpecialError;

pub use checks::{ops_checks, OpsInputs, OpsReport, OPS_TOLERANCES};
pub use group::{exp_alpha, exp_heisenberg, galpha_compose, rep_galpha, rep_h3, rotation, GroupElement, ShiftMode};
pub use harness::{
    composite, convergence_harness, direction_label, harness_csv, harness_failures, harness_target, HarnessGrid, HarnessRow,
    DEFAULT_BASE_POINTS, HARNESS_CSV_HEADER,
};
pub use operators::{
    basis_function, inject, inject_onto, join_pair, op_j, op_r, op_u, periodize, project, split_pair, support_radius,
};
pub use samples::{LineSample, PseudoPeriodicSample};
pub use window::{window_checks, Smoothness, WindowFn, WindowReport, MIN_CHECK_GRID};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MraError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("shift {shift} is not a multiple of the grid step {step}")]
    ShiftOffGrid { shift: f64, step: f64 },
    #[error("operation needs an even number of grid points, got {0}")]
    OddGrid(usize),
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
    #[error(transparent)]
    Special(#[from] SpecialError),
}
