use serde::{Deserialize, Serialize};

use crate::bellstates::{bell_state, boost_one_sided, BellIndex, TwoParticleState};
use crate::correlators::{chsh, chsh_closed_form, chsh_closed_form_for, ChshSetting, SignConvention};
use crate::error::{Error, Result};
use crate::littlegroup::wigner_angle;
use crate::minkowski::{rapidity_of, FourVector};

/// Evenly spaced grid `lo, …, hi` with `steps` points; a single step yields
/// just `lo`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridRange {
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl GridRange {
    pub fn new(lo: f64, hi: f64, steps: usize) -> Self {
        Self { lo, hi, steps }
    }

    pub fn single(v: f64) -> Self {
        Self { lo: v, hi: v, steps: 1 }
    }

    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.lo];
        }
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| if i + 1 == self.steps { self.hi } else { self.lo + (self.hi - self.lo) * i as f64 / last })
            .collect()
    }

    fn validate(&self, name: &str) -> Result<()> {
        if self.steps == 0 {
            return Err(Error::Config(format!("{name} range needs at least one step")));
        }
        if !(self.lo.is_finite() && self.hi.is_finite()) || self.lo > self.hi {
            return Err(Error::Config(format!(
                "{name} range must satisfy lo <= hi with finite bounds, got [{}, {}]",
                self.lo, self.hi
            )));
        }
        Ok(())
    }
}

/// A rectangular `(β, η)` grid and the directions to evaluate on it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub beta: GridRange,
    pub eta: GridRange,
    #[serde(default)]
    pub setting: ChshSetting,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        self.beta.validate("beta")?;
        self.eta.validate("eta")?;
        if self.beta.lo < 0.0 || self.beta.hi >= 1.0 {
            return Err(Error::Config(format!(
                "beta range must lie in [0, 1), got [{}, {}]",
                self.beta.lo, self.beta.hi
            )));
        }
        Ok(())
    }
}

/// One grid point. Field order matches the CSV columns.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub beta: f64,
    pub eta: f64,
    pub omega: f64,
    pub wigner_angle: f64,
    pub e_ab: f64,
    pub e_abp: f64,
    pub e_apb: f64,
    pub e_apbp: f64,
    pub chsh_matrix: f64,
    pub chsh_closed: f64,
}

/// `Ψ₀₀` for a unit-mass pair with rapidity `eta`, with particle A boosted
/// along x by `omega`.
pub fn paper_state(eta: f64, omega: f64) -> Result<TwoParticleState> {
    let p = FourVector::along_z(eta, 1.0)?;
    boost_one_sided(&bell_state(BellIndex::B00, p)?, eta, omega)
}

/// Evaluates the CHSH value at one `(β, η)` by contraction and in closed
/// form.
pub fn evaluate_point(beta: f64, eta: f64, setting: &ChshSetting) -> Result<SweepRecord> {
    let omega = rapidity_of(beta)?;
    let angle = wigner_angle(eta, omega)?;
    let state = paper_state(eta, omega)?;
    let m = chsh(&state, setting, beta)?;
    let closed = if setting.is_standard() {
        chsh_closed_form(beta, angle)
    } else {
        chsh_closed_form_for(setting, beta, angle, SignConvention::OracleConsistent)?.value
    };
    Ok(SweepRecord {
        beta,
        eta,
        omega,
        wigner_angle: angle.0,
        e_ab: m.terms[0],
        e_abp: m.terms[1],
        e_apb: m.terms[2],
        e_apbp: m.terms[3],
        chsh_matrix: m.value,
        chsh_closed: closed,
    })
}

/// Evaluates every grid point, β-major then η.
pub fn sweep(spec: &SweepSpec) -> Result<Vec<SweepRecord>> {
    spec.validate()?;
    let etas = spec.eta.values();
    let mut rows = Vec::with_capacity(spec.beta.steps * spec.eta.steps);
    for beta in spec.beta.values() {
        for &eta in &etas {
            rows.push(evaluate_point(beta, eta, &spec.setting)?);
        }
    }
    Ok(rows)
}
