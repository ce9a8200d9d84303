//! Four-vectors, the Minkowski metric and the axis-aligned boosts.
//!
//! Components are stored as `(x, y, z, t)`; the metric is `diag(+1, +1, +1, -1)`
//! so an on-shell momentum of mass `m` has norm `-m²`.

use std::ops::Mul;

use nalgebra::{Matrix4, Vector3, Vector4};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Tolerance used when checking the defining relations of a Lorentz matrix.
pub const LORENTZ_TOL: f64 = 1e-12;

/// Relative tolerance for deciding whether a momentum is on its mass shell.
pub const ON_SHELL_TOL: f64 = 1e-9;

/// A four-vector `(x, y, z, t)` in natural units.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 4]", into = "[f64; 4]")]
pub struct FourVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub t: f64,
}

impl FourVector {
    pub const fn new(x: f64, y: f64, z: f64, t: f64) -> Self {
        Self { x, y, z, t }
    }

    /// Rest-frame momentum `(0, 0, 0, m)`.
    pub const fn at_rest(m: f64) -> Self {
        Self::new(0.0, 0.0, 0.0, m)
    }

    /// On-shell momentum with spatial part `p` and energy `sqrt(|p|² + m²)`.
    pub fn on_shell(p: [f64; 3], m: f64) -> Result<Self> {
        check_mass(m)?;
        if p.iter().any(|c| !c.is_finite()) {
            return Err(domain("momentum components must be finite"));
        }
        let e = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + m * m).sqrt();
        Ok(Self::new(p[0], p[1], p[2], e))
    }

    /// Momentum of mass `m` moving along +z with rapidity `eta` (negative
    /// rapidity moves along -z).
    pub fn along_z(eta: f64, m: f64) -> Result<Self> {
        check_mass(m)?;
        check_finite("eta", eta)?;
        Ok(Self::new(0.0, 0.0, m * eta.sinh(), m * eta.cosh()))
    }

    /// `x² + y² + z² - t²`.
    pub fn minkowski_norm(&self) -> f64 {
        self.x * self.x + self.y * self.y + self.z * self.z - self.t * self.t
    }

    /// Invariant mass `sqrt(t² - |p|²)`; NaN for spacelike vectors.
    pub fn mass(&self) -> f64 {
        (-self.minkowski_norm()).sqrt()
    }

    pub fn spatial(&self) -> Vector3<f64> {
        Vector3::new(self.x, self.y, self.z)
    }

    /// Spatial inversion, `(x, y, z, t) -> (-x, -y, -z, t)`.
    pub fn parity(&self) -> Self {
        Self::new(-self.x, -self.y, -self.z, self.t)
    }

    /// Whether this vector is a future-pointing momentum of mass `m`, with
    /// the norm checked relative to the energy scale.
    pub fn is_on_shell(&self, m: f64) -> bool {
        let scale = (self.t * self.t).max(m * m).max(1.0);
        self.t > 0.0 && (self.minkowski_norm() + m * m).abs() <= ON_SHELL_TOL * scale
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.x, self.y, self.z, self.t]
    }

    fn to_vector(self) -> Vector4<f64> {
        Vector4::new(self.x, self.y, self.z, self.t)
    }

    fn from_vector(v: Vector4<f64>) -> Self {
        Self::new(v[0], v[1], v[2], v[3])
    }
}

impl From<[f64; 4]> for FourVector {
    fn from(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }
}

impl From<FourVector> for [f64; 4] {
    fn from(v: FourVector) -> Self {
        v.as_array()
    }
}

/// The metric `diag(+1, +1, +1, -1)`.
pub fn metric() -> Matrix4<f64> {
    Matrix4::from_diagonal(&Vector4::new(1.0, 1.0, 1.0, -1.0))
}

/// A proper orthochronous Lorentz transformation acting on `(x, y, z, t)`
/// column vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzTransform {
    m: Matrix4<f64>,
}

impl LorentzTransform {
    pub fn identity() -> Self {
        Self { m: Matrix4::identity() }
    }

    /// Wraps a matrix after checking `mᵀηm = η`, `det m = 1` and `m_tt ≥ 1`
    /// to within `tol`.
    pub fn from_matrix(m: Matrix4<f64>, tol: f64) -> Result<Self> {
        let candidate = Self { m };
        if candidate.is_proper_orthochronous(tol) {
            Ok(candidate)
        } else {
            Err(domain("matrix is not a proper orthochronous Lorentz transformation"))
        }
    }

    /// Wraps a matrix without checking the group relations. Callers are
    /// responsible for the invariants.
    pub(crate) fn from_matrix_unchecked(m: Matrix4<f64>) -> Self {
        Self { m }
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.m
    }

    /// Largest elementwise deviation of `mᵀηm` from `η`.
    pub fn pseudo_orthogonality_defect(&self) -> f64 {
        let g = metric();
        (self.m.transpose() * g * self.m - g).amax()
    }

    pub fn is_proper_orthochronous(&self, tol: f64) -> bool {
        self.m.iter().all(|v| v.is_finite())
            && self.pseudo_orthogonality_defect() <= tol
            && (self.m.determinant() - 1.0).abs() <= tol
            && self.m[(3, 3)] >= 1.0 - tol
    }

    /// `η mᵀ η`, exact up to rounding for any Lorentz matrix.
    pub fn inverse(&self) -> Self {
        let g = metric();
        Self { m: g * self.m.transpose() * g }
    }

    pub fn apply(&self, p: &FourVector) -> FourVector {
        FourVector::from_vector(self.m * p.to_vector())
    }

    /// `self · other`, i.e. `other` acts first.
    pub fn compose(&self, other: &Self) -> Self {
        Self { m: self.m * other.m }
    }

    /// Largest elementwise difference to another transform.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.m - other.m).amax()
    }
}

impl Mul for LorentzTransform {
    type Output = LorentzTransform;

    fn mul(self, rhs: Self) -> Self::Output {
        self.compose(&rhs)
    }
}

impl Mul<FourVector> for LorentzTransform {
    type Output = FourVector;

    fn mul(self, rhs: FourVector) -> Self::Output {
        self.apply(&rhs)
    }
}

fn check_mass(m: f64) -> Result<()> {
    if m.is_finite() && m > 0.0 {
        Ok(())
    } else {
        Err(domain(format!("mass must be positive and finite, got {m}")))
    }
}

fn check_finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("{name} must be finite, got {v}")))
    }
}

/// Standard boost `L(p)` for a particle of mass `m` moving along +z with
/// rapidity `eta`: carries `(0, 0, 0, m)` to `(0, 0, m sinh η, m cosh η)`.
pub fn standard_boost_z(eta: f64, m: f64) -> Result<LorentzTransform> {
    check_finite("eta", eta)?;
    check_mass(m)?;
    let (sh, ch) = (eta.sinh(), eta.cosh());
    #[rustfmt::skip]
    let mat = Matrix4::new(
        1.0, 0.0, 0.0, 0.0,
        0.0, 1.0, 0.0, 0.0,
        0.0, 0.0, ch,  sh,
        0.0, 0.0, sh,  ch,
    );
    Ok(LorentzTransform { m: mat })
}

/// Standard boost `L(𝒫p)` for the parity partner moving along -z.
pub fn standard_boost_neg_z(eta: f64, m: f64) -> Result<LorentzTransform> {
    check_finite("eta", eta)?;
    check_mass(m)?;
    let (sh, ch) = (eta.sinh(), eta.cosh());
    #[rustfmt::skip]
    let mat = Matrix4::new(
        1.0, 0.0, 0.0, 0.0,
        0.0, 1.0, 0.0, 0.0,
        0.0, 0.0, ch,  -sh,
        0.0, 0.0, -sh, ch,
    );
    Ok(LorentzTransform { m: mat })
}

/// Frame boost along x with rapidity `omega`.
///
/// Both off-diagonal entries are `sinh ω`; any other choice breaks
/// `ΛᵀηΛ = η`.
pub fn boost_x(omega: f64) -> Result<LorentzTransform> {
    check_finite("omega", omega)?;
    let (sh, ch) = (omega.sinh(), omega.cosh());
    #[rustfmt::skip]
    let mat = Matrix4::new(
        ch,  0.0, 0.0, sh,
        0.0, 1.0, 0.0, 0.0,
        0.0, 0.0, 1.0, 0.0,
        sh,  0.0, 0.0, ch,
    );
    Ok(LorentzTransform { m: mat })
}

/// Standard boost `L(q)` for an arbitrary on-shell momentum: the pure boost
/// along `q̂` carrying `(0, 0, 0, m)` to `q`.
pub fn standard_boost(q: &FourVector, m: f64) -> Result<LorentzTransform> {
    check_mass(m)?;
    if !q.is_on_shell(m) {
        return Err(domain(format!(
            "momentum {:?} is not on shell for mass {m} (norm {})",
            q.as_array(),
            q.minkowski_norm()
        )));
    }
    let p = q.spatial();
    let gamma = q.t / m;
    let mut mat = Matrix4::identity();
    let p2 = p.norm_squared();
    if p2 > 0.0 {
        // (γ - 1) p̂ p̂ᵀ written as p pᵀ / (m (E + m)) to avoid cancellation.
        let k = 1.0 / (m * (q.t + m));
        for i in 0..3 {
            for j in 0..3 {
                mat[(i, j)] += k * p[i] * p[j];
            }
        }
    }
    for i in 0..3 {
        mat[(i, 3)] = p[i] / m;
        mat[(3, i)] = p[i] / m;
    }
    mat[(3, 3)] = gamma;
    Ok(LorentzTransform { m: mat })
}

/// Frame speed for a rapidity, `β = tanh ω`.
pub fn beta_of(omega: f64) -> f64 {
    omega.tanh()
}

/// Rapidity for a frame speed, `ω = atanh β`; requires `|β| < 1`.
pub fn rapidity_of(beta: f64) -> Result<f64> {
    if beta.is_finite() && beta.abs() < 1.0 {
        Ok(beta.atanh())
    } else {
        Err(domain(format!("|beta| must be < 1, got {beta}")))
    }
}
