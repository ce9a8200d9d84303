//! Boost-corrected spin observables, correlators and the CHSH combination.
//!
//! Alice (particle A) is the boosted party and measures the relativistic
//! observable; Bob measures the ordinary `b·σ`.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::{Matrix2, Matrix3, Vector3};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bellstates::TwoParticleState;
use crate::error::{domain, Error, Result};
use crate::littlegroup::WignerAngle;

/// Tolerance on `|a| = 1` for measurement directions.
pub const UNIT_TOL: f64 = 1e-12;

const DEGENERATE_TOL: f64 = 1e-12;

/// `[σ_x, σ_y, σ_z]`.
pub fn pauli() -> [Matrix2<Complex64>; 3] {
    let o = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    [Matrix2::new(o, one, one, o), Matrix2::new(o, -i, i, o), Matrix2::new(one, o, o, -one)]
}

/// A unit 3-vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct MeasurementDirection(Vector3<f64>);

impl MeasurementDirection {
    /// Accepts only vectors already of unit length.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let v = Vector3::new(x, y, z);
        if v.iter().all(|c| c.is_finite()) && (v.norm() - 1.0).abs() <= UNIT_TOL {
            Ok(Self(v))
        } else {
            Err(domain(format!("direction ({x}, {y}, {z}) is not a unit vector")))
        }
    }

    /// Normalises any non-zero finite vector.
    pub fn normalized(x: f64, y: f64, z: f64) -> Result<Self> {
        let v = Vector3::new(x, y, z);
        let n = v.norm();
        if n.is_finite() && n > 0.0 {
            Ok(Self(v / n))
        } else {
            Err(domain(format!("direction ({x}, {y}, {z}) cannot be normalised")))
        }
    }

    /// Unit vector from polar angle `theta` (from +z) and azimuth `phi`.
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Self(Vector3::new(st * cp, st * sp, ct))
    }

    pub fn x_axis() -> Self {
        Self(Vector3::x())
    }

    pub fn vector(&self) -> &Vector3<f64> {
        &self.0
    }

    pub fn x(&self) -> f64 {
        self.0.x
    }

    pub fn y(&self) -> f64 {
        self.0.y
    }

    pub fn z(&self) -> f64 {
        self.0.z
    }
}

impl TryFrom<[f64; 3]> for MeasurementDirection {
    type Error = Error;

    fn try_from(a: [f64; 3]) -> Result<Self> {
        Self::normalized(a[0], a[1], a[2])
    }
}

impl From<MeasurementDirection> for [f64; 3] {
    fn from(d: MeasurementDirection) -> Self {
        [d.0.x, d.0.y, d.0.z]
    }
}

/// A two-by-two Hermitian observable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinObservable {
    m: Matrix2<Complex64>,
}

impl SpinObservable {
    /// `v·σ`.
    pub fn along(v: &Vector3<f64>) -> Self {
        let s = pauli();
        Self { m: s[0] * Complex64::from(v.x) + s[1] * Complex64::from(v.y) + s[2] * Complex64::from(v.z) }
    }

    /// Ordinary spin observable `b·σ`.
    pub fn from_direction(b: &MeasurementDirection) -> Self {
        Self::along(b.vector())
    }

    pub fn matrix(&self) -> &Matrix2<Complex64> {
        &self.m
    }

    pub fn hermiticity_defect(&self) -> f64 {
        max_norm(&(self.m - self.m.adjoint()))
    }

    /// Largest elementwise deviation of `m²` from the identity.
    pub fn square_defect(&self) -> f64 {
        max_norm(&(self.m * self.m - Matrix2::identity()))
    }
}

fn max_norm(m: &Matrix2<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn check_beta(beta: f64) -> Result<()> {
    if (0.0..=1.0).contains(&beta) {
        Ok(())
    } else {
        Err(domain(format!("beta must lie in [0, 1], got {beta}")))
    }
}

/// Boost-corrected spin observable for direction `a`, frame speed `beta`
/// and boost axis `axis`:
///
/// `â = (√(1-β²) a_⊥ + a_∥)·σ / √(1 + β²((n̂·a)² - 1))`.
///
/// The denominator is the length of the numerator vector, so `â² = I`.
/// At `β = 1` a direction perpendicular to the axis has no surviving
/// component and is rejected as degenerate.
pub fn relativistic_observable(
    a: &MeasurementDirection,
    beta: f64,
    axis: &MeasurementDirection,
) -> Result<SpinObservable> {
    check_beta(beta)?;
    let n = axis.vector();
    let along = n.dot(a.vector());
    let parallel = n * along;
    let perpendicular = a.vector() - parallel;
    let v = perpendicular * (1.0 - beta * beta).sqrt() + parallel;
    let denom_sq = 1.0 + beta * beta * (along * along - 1.0);
    if denom_sq <= DEGENERATE_TOL * DEGENERATE_TOL {
        return Err(Error::Degenerate(format!("observable for {:?} vanishes at beta = {beta}", <[f64; 3]>::from(*a))));
    }
    Ok(SpinObservable::along(&(v / denom_sq.sqrt())))
}

/// `⟨ψ|A⊗B|ψ⟩` by direct contraction with the Kronecker product.
pub fn correlation(state: &TwoParticleState, a: &SpinObservable, b: &SpinObservable) -> f64 {
    let op = a.matrix().kronecker(b.matrix());
    let v = state.as_vector();
    v.dotc(&(op * v)).re
}

/// Which sign to use for the `a_z b_x sin Ω` term of the closed-form
/// correlator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SignConvention {
    /// `-b_x sin Ω`, which is what contracting the boosted state gives.
    #[default]
    OracleConsistent,
    /// `+b_x sin Ω`, as the formula is commonly printed.
    Printed,
}

/// Closed-form `⟨â⊗b̂⟩` for the one-sided boosted `Ψ₀₀` with the boost along x:
///
/// ```text
/// [ a_x (b_x cos Ω + b_z sin Ω) - √(1-β²) a_y b_y
///   + √(1-β²) a_z (b_z cos Ω ∓ b_x sin Ω) ] / √(1 + β²(a_x² - 1))
/// ```
pub fn correlation_closed_form(
    a: &MeasurementDirection,
    b: &MeasurementDirection,
    beta: f64,
    omega_p: WignerAngle,
    convention: SignConvention,
) -> Result<f64> {
    check_beta(beta)?;
    let norm_sq = 1.0 + beta * beta * (a.x() * a.x() - 1.0);
    if norm_sq <= DEGENERATE_TOL * DEGENERATE_TOL {
        return Err(Error::Degenerate(format!("a_x = 0 at beta = {beta}")));
    }
    let (s, c) = omega_p.0.sin_cos();
    let contraction = (1.0 - beta * beta).sqrt();
    let zx = match convention {
        SignConvention::OracleConsistent => -b.x() * s,
        SignConvention::Printed => b.x() * s,
    };
    let num = (b.x() * c + b.z() * s) * a.x() - b.y() * a.y() * contraction + contraction * (b.z() * c + zx) * a.z();
    Ok(num / norm_sq.sqrt())
}

/// Measurement directions `(a, a′, b, b′)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChshSetting {
    pub a: MeasurementDirection,
    pub a_prime: MeasurementDirection,
    pub b: MeasurementDirection,
    pub b_prime: MeasurementDirection,
}

impl ChshSetting {
    /// Directions that give `2√2` for `Ψ₀₀` at rest:
    /// `a = (1, -1, 0)/√2`, `a′ = (-1, -1, 0)/√2`, `b = ŷ`, `b′ = x̂`.
    pub fn standard() -> Self {
        let h = FRAC_1_SQRT_2;
        Self {
            a: MeasurementDirection(Vector3::new(h, -h, 0.0)),
            a_prime: MeasurementDirection(Vector3::new(-h, -h, 0.0)),
            b: MeasurementDirection(Vector3::new(0.0, 1.0, 0.0)),
            b_prime: MeasurementDirection(Vector3::new(1.0, 0.0, 0.0)),
        }
    }

    pub fn is_standard(&self) -> bool {
        *self == Self::standard()
    }
}

impl Default for ChshSetting {
    fn default() -> Self {
        Self::standard()
    }
}

/// CHSH value with its four correlators in the order
/// `(ab, ab′, a′b, a′b′)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChshResult {
    pub value: f64,
    pub terms: [f64; 4],
}

impl ChshResult {
    fn from_terms(terms: [f64; 4]) -> Self {
        Self { value: terms[0] + terms[1] + terms[2] - terms[3], terms }
    }
}

/// `⟨â⊗b̂⟩ + ⟨â⊗b̂′⟩ + ⟨â′⊗b̂⟩ - ⟨â′⊗b̂′⟩` with Alice's observables boosted
/// along x at speed `beta`.
pub fn chsh(state: &TwoParticleState, setting: &ChshSetting, beta: f64) -> Result<ChshResult> {
    let axis = MeasurementDirection::x_axis();
    let a = relativistic_observable(&setting.a, beta, &axis)?;
    let ap = relativistic_observable(&setting.a_prime, beta, &axis)?;
    let b = SpinObservable::from_direction(&setting.b);
    let bp = SpinObservable::from_direction(&setting.b_prime);
    Ok(ChshResult::from_terms([
        correlation(state, &a, &b),
        correlation(state, &a, &bp),
        correlation(state, &ap, &b),
        correlation(state, &ap, &bp),
    ]))
}

/// CHSH for the standard directions in closed form:
/// `2(√(1-β²) + cos Ω) / √(2 - β²)`.
///
/// Defined for `0 ≤ β ≤ 1`; gives `2√2` at rest and `2 cos Ω` at `β = 1`.
pub fn chsh_closed_form(beta: f64, omega_p: WignerAngle) -> f64 {
    2.0 * ((1.0 - beta * beta).sqrt() + omega_p.0.cos()) / (2.0 - beta * beta).sqrt()
}

/// CHSH for an arbitrary setting, summing the closed-form correlators.
pub fn chsh_closed_form_for(
    setting: &ChshSetting,
    beta: f64,
    omega_p: WignerAngle,
    convention: SignConvention,
) -> Result<ChshResult> {
    let e = |a, b| correlation_closed_form(a, b, beta, omega_p, convention);
    Ok(ChshResult::from_terms([
        e(&setting.a, &setting.b)?,
        e(&setting.a, &setting.b_prime)?,
        e(&setting.a_prime, &setting.b)?,
        e(&setting.a_prime, &setting.b_prime)?,
    ]))
}

/// `T_ij = ⟨σ_i ⊗ σ_j⟩`, Alice's index first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationTensor {
    pub t: Matrix3<f64>,
}

pub fn correlation_tensor(state: &TwoParticleState) -> CorrelationTensor {
    let s = pauli();
    let v = state.as_vector();
    let t = Matrix3::from_fn(|i, j| v.dotc(&(s[i].kronecker(&s[j]) * v)).re);
    CorrelationTensor { t }
}

/// Large-β limit of the correlator: `sign(a_x) (b_x cos Ω + b_z sin Ω)`.
/// Only the sign of `a_x` survives, so `a_y` and `a_z` drop out.
pub fn ultra_relativistic_limit(
    a: &MeasurementDirection,
    b: &MeasurementDirection,
    omega_p: WignerAngle,
) -> Result<f64> {
    if a.x() == 0.0 {
        return Err(Error::Degenerate("a_x = 0 has no ultra-relativistic limit".into()));
    }
    let (s, c) = omega_p.0.sin_cos();
    Ok(a.x().signum() * (b.x() * c + b.z() * s))
}
