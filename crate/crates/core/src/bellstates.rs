//! Two-particle spin states, the Bell basis and the Lorentz action on them.
//!
//! A state is four amplitudes over `{↑↑, ↑↓, ↓↑, ↓↓}` (particle A in the left
//! slot) together with a momentum label for each particle. The energy ratios
//! `sqrt((Λp)⁰ / p⁰)` produced by a boost are collected in `scale`; the
//! amplitudes themselves always stay normalised.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use nalgebra::{Matrix2, Matrix4, Vector4};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::littlegroup::{spin_half_rep, wigner_angle, wigner_matrix_path, MasslessRep, Parity, SpinHalfRep};
use crate::minkowski::{boost_x, FourVector, LorentzTransform};

/// Tolerance on the norm of the amplitude vector.
pub const NORM_TOL: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// One of the four Bell states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BellIndex {
    /// `(↑↑ + ↓↓)/√2`
    B00,
    /// `(↑↑ - ↓↓)/√2`
    B01,
    /// `(↑↓ + ↓↑)/√2`
    B10,
    /// `(↑↓ - ↓↑)/√2`
    B11,
}

impl BellIndex {
    pub const ALL: [BellIndex; 4] = [BellIndex::B00, BellIndex::B01, BellIndex::B10, BellIndex::B11];

    /// Normalised amplitudes of the basis state.
    pub fn amplitudes(self) -> [Complex64; 4] {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        match self {
            BellIndex::B00 => [h, ZERO, ZERO, h],
            BellIndex::B01 => [h, ZERO, ZERO, -h],
            BellIndex::B10 => [ZERO, h, h, ZERO],
            BellIndex::B11 => [ZERO, h, -h, ZERO],
        }
    }

    fn position(self) -> usize {
        self as usize
    }
}

impl FromStr for BellIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "00" => Ok(BellIndex::B00),
            "01" => Ok(BellIndex::B01),
            "10" => Ok(BellIndex::B10),
            "11" => Ok(BellIndex::B11),
            other => Err(domain(format!("Bell index must be one of 00, 01, 10, 11; got {other:?}"))),
        }
    }
}

impl fmt::Display for BellIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BellIndex::B00 => "00",
            BellIndex::B01 => "01",
            BellIndex::B10 => "10",
            BellIndex::B11 => "11",
        };
        f.write_str(s)
    }
}

/// Two spin-½ (or helicity) particles with sharp momenta.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StateJson", into = "StateJson")]
pub struct TwoParticleState {
    amplitudes: [Complex64; 4],
    pub momentum_a: FourVector,
    pub momentum_b: FourVector,
    pub scale: f64,
}

impl TwoParticleState {
    /// Builds a state from raw amplitudes, normalising them. The norm is
    /// folded into `scale`.
    pub fn new(amplitudes: [Complex64; 4], momentum_a: FourVector, momentum_b: FourVector) -> Result<Self> {
        let norm = norm_of(&amplitudes);
        if !(norm.is_finite() && norm > 0.0) {
            return Err(domain("amplitudes must be finite and not all zero"));
        }
        Ok(Self { amplitudes: amplitudes.map(|a| a / norm), momentum_a, momentum_b, scale: norm })
    }

    pub fn amplitudes(&self) -> &[Complex64; 4] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        norm_of(&self.amplitudes)
    }

    /// `⟨self|other⟩` over the spin amplitudes only.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum()
    }

    /// Swaps the two particles: spin slots and momentum labels.
    pub fn exchanged(&self) -> Self {
        let [uu, ud, du, dd] = self.amplitudes;
        Self {
            amplitudes: [uu, du, ud, dd],
            momentum_a: self.momentum_b,
            momentum_b: self.momentum_a,
            scale: self.scale,
        }
    }

    pub(crate) fn as_vector(&self) -> Vector4<Complex64> {
        Vector4::from_column_slice(&self.amplitudes)
    }

    fn with_local_operator(&self, op: &Matrix4<Complex64>) -> [Complex64; 4] {
        let v = op * self.as_vector();
        let out = [v[0], v[1], v[2], v[3]];
        let n = norm_of(&out);
        out.map(|a| a / n)
    }
}

fn norm_of(a: &[Complex64; 4]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Coefficients over `{Ψ₀₀, Ψ₀₁, Ψ₁₀, Ψ₁₁}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BellCoefficients {
    pub c00: Complex64,
    pub c01: Complex64,
    pub c10: Complex64,
    pub c11: Complex64,
}

impl BellCoefficients {
    pub fn as_array(&self) -> [Complex64; 4] {
        [self.c00, self.c01, self.c10, self.c11]
    }

    pub fn norm(&self) -> f64 {
        norm_of(&self.as_array())
    }

    /// Spin amplitudes `Σ c_ij Ψ_ij`.
    pub fn recompose(&self) -> [Complex64; 4] {
        let mut out = [ZERO; 4];
        for (c, idx) in self.as_array().iter().zip(BellIndex::ALL) {
            for (o, b) in out.iter_mut().zip(idx.amplitudes()) {
                *o += c * b;
            }
        }
        out
    }

    pub fn get(&self, idx: BellIndex) -> Complex64 {
        self.as_array()[idx.position()]
    }
}

/// Bell state `Ψ_idx` with particle A at `p` and particle B at `𝒫p`.
pub fn bell_state(index: BellIndex, p: FourVector) -> Result<TwoParticleState> {
    let finite = p.as_array().iter().all(|c| c.is_finite());
    if !finite || p.t <= 0.0 || p.minkowski_norm() > 1e-12 * p.t * p.t {
        return Err(domain(format!("momentum {:?} is not a physical on-shell momentum", p.as_array())));
    }
    Ok(TwoParticleState { amplitudes: index.amplitudes(), momentum_a: p, momentum_b: p.parity(), scale: 1.0 })
}

/// Projects the spin amplitudes onto the Bell basis.
pub fn bell_decompose(state: &TwoParticleState) -> BellCoefficients {
    let c = BellIndex::ALL
        .map(|idx| idx.amplitudes().iter().zip(state.amplitudes()).map(|(b, a)| b.conj() * a).sum::<Complex64>());
    BellCoefficients { c00: c[0], c01: c[1], c10: c[2], c11: c[3] }
}

/// Pure-state concurrence `|⟨ψ|σ_y⊗σ_y|ψ*⟩|`.
pub fn concurrence(state: &TwoParticleState) -> f64 {
    let i = Complex64::new(0.0, 1.0);
    let sy = Matrix2::new(ZERO, -i, i, ZERO);
    let flip = sy.kronecker(&sy);
    let v = state.as_vector();
    let flipped = flip * v.map(|z| z.conj());
    v.dotc(&flipped).norm().min(1.0)
}

/// Checks that `p` is `(0, 0, m sinh η, m cosh η)` for some mass `m > 0`
/// and returns that mass.
fn check_z_geometry(p: &FourVector, eta: f64, which: &str) -> Result<f64> {
    if !eta.is_finite() {
        return Err(domain(format!("eta must be finite, got {eta}")));
    }
    let m = p.mass();
    if !(m.is_finite() && m > 0.0) {
        return Err(domain(format!("particle {which} must be massive")));
    }
    let expected = FourVector::along_z(eta, m)?;
    let tol = 1e-9 * p.t.max(1.0);
    let close = p.as_array().iter().zip(expected.as_array()).all(|(a, b)| (a - b).abs() <= tol);
    if close {
        Ok(m)
    } else {
        Err(domain(format!("particle {which} momentum {:?} is not along z with rapidity {eta}", p.as_array())))
    }
}

fn energy_ratio_sqrt(before: &FourVector, after: &FourVector) -> f64 {
    (after.t / before.t).sqrt()
}

/// Applies an x-boost of rapidity `omega` to both particles of a pair moving
/// along ±z with rapidity `eta`.
///
/// Particle A gets the forward Wigner rotation and B the inverted one; the
/// amplitudes are contracted with their Kronecker product.
pub fn boost_two_sided(state: &TwoParticleState, eta: f64, omega: f64) -> Result<TwoParticleState> {
    check_z_geometry(&state.momentum_a, eta, "A")?;
    check_z_geometry(&state.momentum_b, -eta, "B")?;
    let lambda = boost_x(omega)?;
    let angle = wigner_angle(eta, omega)?;
    let op = spin_half_rep(angle, Parity::Forward).matrix().kronecker(spin_half_rep(angle, Parity::Inverted).matrix());
    let pa = lambda.apply(&state.momentum_a);
    let pb = lambda.apply(&state.momentum_b);
    Ok(TwoParticleState {
        amplitudes: state.with_local_operator(&op),
        momentum_a: pa,
        momentum_b: pb,
        scale: state.scale * energy_ratio_sqrt(&state.momentum_a, &pa) * energy_ratio_sqrt(&state.momentum_b, &pb),
    })
}

/// Applies an x-boost of rapidity `omega` to particle A only; B is untouched.
pub fn boost_one_sided(state: &TwoParticleState, eta: f64, omega: f64) -> Result<TwoParticleState> {
    check_z_geometry(&state.momentum_a, eta, "A")?;
    let lambda = boost_x(omega)?;
    let angle = wigner_angle(eta, omega)?;
    let op = spin_half_rep(angle, Parity::Forward).matrix().kronecker(&Matrix2::identity());
    let pa = lambda.apply(&state.momentum_a);
    Ok(TwoParticleState {
        amplitudes: state.with_local_operator(&op),
        momentum_a: pa,
        momentum_b: state.momentum_b,
        scale: state.scale * energy_ratio_sqrt(&state.momentum_a, &pa),
    })
}

fn little_group_rep(lambda: &LorentzTransform, p: &FourVector) -> Result<SpinHalfRep> {
    let m = p.mass();
    if !(m.is_finite() && m > 0.0) {
        return Err(domain("little-group rotation needs a massive particle"));
    }
    SpinHalfRep::from_rotation(&wigner_matrix_path(lambda, p, m)?)
}

/// Applies an arbitrary proper Lorentz transform to particle A, with the
/// Wigner rotation taken from the matrix path. Works for any momentum
/// geometry.
pub fn transform_one_sided(state: &TwoParticleState, lambda: &LorentzTransform) -> Result<TwoParticleState> {
    let d = little_group_rep(lambda, &state.momentum_a)?;
    let op = d.matrix().kronecker(&Matrix2::identity());
    let pa = lambda.apply(&state.momentum_a);
    Ok(TwoParticleState {
        amplitudes: state.with_local_operator(&op),
        momentum_a: pa,
        momentum_b: state.momentum_b,
        scale: state.scale * energy_ratio_sqrt(&state.momentum_a, &pa),
    })
}

/// Applies an arbitrary proper Lorentz transform to both particles via the
/// matrix path.
pub fn transform_two_sided(state: &TwoParticleState, lambda: &LorentzTransform) -> Result<TwoParticleState> {
    let da = little_group_rep(lambda, &state.momentum_a)?;
    let db = little_group_rep(lambda, &state.momentum_b)?;
    let op = da.matrix().kronecker(db.matrix());
    let pa = lambda.apply(&state.momentum_a);
    let pb = lambda.apply(&state.momentum_b);
    Ok(TwoParticleState {
        amplitudes: state.with_local_operator(&op),
        momentum_a: pa,
        momentum_b: pb,
        scale: state.scale * energy_ratio_sqrt(&state.momentum_a, &pa) * energy_ratio_sqrt(&state.momentum_b, &pb),
    })
}

/// Helicity phases `exp(i(θ_a σ_a + θ_b σ_b))` on a two-photon state over
/// `{++, +-, -+, --}`. Amplitude magnitudes are untouched.
pub fn massless_boost(state: &TwoParticleState, theta_a: f64, theta_b: f64) -> TwoParticleState {
    let op = MasslessRep::new(theta_a).matrix().kronecker(&MasslessRep::new(theta_b).matrix());
    let v = op * state.as_vector();
    TwoParticleState { amplitudes: [v[0], v[1], v[2], v[3]], ..*state }
}

/// JSON form: amplitudes as `[re, im]` pairs, momenta as `[x, y, z, t]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct StateJson {
    amplitudes: [[f64; 2]; 4],
    momentum_a: [f64; 4],
    momentum_b: [f64; 4],
    scale: f64,
}

impl From<TwoParticleState> for StateJson {
    fn from(s: TwoParticleState) -> Self {
        StateJson {
            amplitudes: s.amplitudes.map(|z| [z.re, z.im]),
            momentum_a: s.momentum_a.as_array(),
            momentum_b: s.momentum_b.as_array(),
            scale: s.scale,
        }
    }
}

impl TryFrom<StateJson> for TwoParticleState {
    type Error = Error;

    fn try_from(j: StateJson) -> Result<Self> {
        let amplitudes = j.amplitudes.map(|[re, im]| Complex64::new(re, im));
        if (norm_of(&amplitudes) - 1.0).abs() > 1e-9 {
            return Err(domain("serialized amplitudes are not normalised"));
        }
        if !(j.scale.is_finite() && j.scale > 0.0) {
            return Err(domain("scale must be positive"));
        }
        Ok(TwoParticleState {
            amplitudes,
            momentum_a: j.momentum_a.into(),
            momentum_b: j.momentum_b.into(),
            scale: j.scale,
        })
    }
}
