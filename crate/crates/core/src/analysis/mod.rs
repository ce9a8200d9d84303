//! Parameter sweeps, threshold search, CHSH maximisation and the Horodecki
//! bound.

mod eigen;
mod nelder_mead;
mod optimize;
mod sweep;
mod threshold;

pub use eigen::{horodecki_bound, symmetric_eigenvalues};
pub use nelder_mead::{nelder_mead, NelderMeadResult};
pub use optimize::{optimize_chsh, optimize_chsh_with, OptimizationResult, OptimizerConfig};
pub use sweep::{evaluate_point, paper_state, sweep, GridRange, SweepRecord, SweepSpec};
pub use threshold::{bisect, find_threshold, BETA_UPPER, BISECTION_MAX_ITER};
