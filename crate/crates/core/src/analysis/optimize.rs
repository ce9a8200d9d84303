use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::nelder_mead::nelder_mead;
use crate::bellstates::TwoParticleState;
use crate::correlators::{chsh, ChshSetting, MeasurementDirection};
use crate::error::{domain, Error, Result};

/// Settings for the multi-start simplex search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerConfig {
    pub restarts: usize,
    /// Nelder–Mead iterations per restart.
    pub max_iterations: usize,
    /// Simplex value spread counted as converged; also the agreement
    /// required between restarts.
    pub tolerance: f64,
    /// Edge of the initial simplex, in radians.
    pub initial_step: f64,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self { restarts: 16, max_iterations: 200, tolerance: 1e-9, initial_step: 0.5, seed: 0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptimizationResult {
    pub best_setting: ChshSetting,
    pub best_value: f64,
    /// Iterations used by the restart that produced the best value.
    pub iterations: usize,
    /// The best restart's simplex collapsed below the tolerance, or a second
    /// restart reached the same value within it.
    pub converged: bool,
}

fn setting_from_angles(x: &[f64]) -> ChshSetting {
    let d = |i: usize| MeasurementDirection::from_angles(x[2 * i], x[2 * i + 1]);
    ChshSetting { a: d(0), a_prime: d(1), b: d(2), b_prime: d(3) }
}

/// Maximises the CHSH value of `state` over all four measurement directions,
/// with Alice's pair boost-corrected at speed `beta`.
pub fn optimize_chsh(state: &TwoParticleState, beta: f64, restarts: usize, seed: u64) -> Result<OptimizationResult> {
    optimize_chsh_with(state, beta, &OptimizerConfig { restarts, seed, ..OptimizerConfig::default() })
}

pub fn optimize_chsh_with(state: &TwoParticleState, beta: f64, config: &OptimizerConfig) -> Result<OptimizationResult> {
    if beta == 1.0 {
        return Err(Error::Unsupported("optimisation at beta = 1, where observables degenerate".into()));
    }
    if !(0.0..1.0).contains(&beta) {
        return Err(domain(format!("beta must lie in [0, 1), got {beta}")));
    }
    if config.restarts == 0 {
        return Err(Error::Config("at least one restart is required".into()));
    }

    let objective = |x: &[f64]| match chsh(state, &setting_from_angles(x), beta) {
        Ok(r) => -r.value,
        Err(_) => f64::INFINITY,
    };

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut best: Option<OptimizationResult> = None;
    let mut values = Vec::with_capacity(config.restarts);
    for _ in 0..config.restarts {
        let x0: Vec<f64> = (0..8)
            .map(|i| if i % 2 == 0 { rng.random_range(0.0..PI) } else { rng.random_range(0.0..2.0 * PI) })
            .collect();
        let run = nelder_mead(objective, &x0, config.initial_step, config.max_iterations, config.tolerance);
        let value = -run.fx;
        values.push(value);
        if best.as_ref().is_none_or(|b| value > b.best_value) {
            best = Some(OptimizationResult {
                best_setting: setting_from_angles(&run.x),
                best_value: value,
                iterations: run.iterations,
                converged: run.converged,
            });
        }
    }
    let mut best = best.expect("restarts > 0");
    let agreeing = values.iter().filter(|v| (best.best_value - **v).abs() <= config.tolerance).count();
    best.converged |= agreeing >= 2;
    Ok(best)
}
