//! Wigner little-group elements and their spin representations.
//!
//! Two independent routes to the same rotation are provided: the closed-form
//! Wigner angle for a ±z momentum seen from an x-boosted frame, and the
//! explicit product `W = L⁻¹(Λp) Λ L(p)` of four-by-four matrices. The latter
//! works for any on-shell momentum and any proper boost.

use std::f64::consts::FRAC_PI_2;

use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::minkowski::{standard_boost, FourVector, LorentzTransform};

/// Tolerance for "W leaves the rest-frame momentum fixed".
pub const REST_FRAME_TOL: f64 = 1e-10;

/// Wigner rotation angle in radians.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct WignerAngle(pub f64);

impl WignerAngle {
    pub fn radians(self) -> f64 {
        self.0
    }
}

/// Closed-form Wigner angle for a particle with rapidity `eta` along z seen
/// from a frame boosted with rapidity `omega` along x:
///
/// `tan Ω = sinh η sinh ω / (cosh η + cosh ω)`.
///
/// The denominator is positive, so `atan2` keeps the sign of the numerator
/// and the result lies in `(-π/2, π/2)`.
pub fn wigner_angle(eta: f64, omega: f64) -> Result<WignerAngle> {
    if !eta.is_finite() || !omega.is_finite() {
        return Err(domain(format!("rapidities must be finite, got eta={eta}, omega={omega}")));
    }
    let num = eta.sinh() * omega.sinh();
    let den = eta.cosh() + omega.cosh();
    // sinh·sinh overflows before cosh + cosh does; both saturate at ±π/2.
    let angle = if num.is_finite() && den.is_finite() { num.atan2(den) } else { FRAC_PI_2.copysign(eta * omega) };
    Ok(WignerAngle(angle))
}

/// Little-group element `W(Λ, p) = L⁻¹(Λp) Λ L(p)` computed by matrix
/// products.
///
/// Every intermediate matrix has entries of order `cosh η cosh ω`, so the
/// rounding error of `W` grows like the square of that. With both rapidities
/// at 3 the result is within about 2e-12 of the exact rotation; once both
/// pass roughly 4.5 the error exceeds [`REST_FRAME_TOL`], and at 10 the
/// product is meaningless.
pub fn wigner_matrix_path(lambda: &LorentzTransform, p: &FourVector, m: f64) -> Result<LorentzTransform> {
    if !p.is_on_shell(m) {
        return Err(domain(format!("momentum {:?} is not on shell for mass {m}", p.as_array())));
    }
    let l_p = standard_boost(p, m)?;
    let lp = lambda.apply(p);
    let l_lp = standard_boost(&lp, m)?;
    Ok(l_lp.inverse() * *lambda * l_p)
}

/// Whether `w` is a pure spatial rotation, i.e. its time row and column
/// match the identity within `tol`.
pub fn fixes_rest_frame(w: &LorentzTransform, tol: f64) -> bool {
    let m = w.matrix();
    (0..3).all(|i| m[(i, 3)].abs() <= tol && m[(3, i)].abs() <= tol) && (m[(3, 3)] - 1.0).abs() <= tol
}

/// Spatial rotation about y by `angle` (right-handed):
/// `x' = x cos θ + z sin θ`, `z' = -x sin θ + z cos θ`.
pub fn rotation_about_y(angle: f64) -> LorentzTransform {
    let (s, c) = angle.sin_cos();
    #[rustfmt::skip]
    let m = Matrix4::new(
        c,   0.0, s,   0.0,
        0.0, 1.0, 0.0, 0.0,
        -s,  0.0, c,   0.0,
        0.0, 0.0, 0.0, 1.0,
    );
    LorentzTransform::from_matrix_unchecked(m)
}

/// Angle of a rotation about y, read from the x–z block of `w`.
pub fn rotation_angle_about_y(w: &LorentzTransform) -> f64 {
    let m = w.matrix();
    m[(0, 2)].atan2(m[(2, 2)])
}

/// Which member of the back-to-back pair the representation is for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    /// The particle moving along +z.
    Forward,
    /// Its spatial inversion, moving along -z. Gets the transposed matrix.
    Inverted,
}

/// Spin-½ representation `D^(1/2)(W)` over the basis `{+½, -½}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinHalfRep {
    d: Matrix2<Complex64>,
}

impl SpinHalfRep {
    pub fn identity() -> Self {
        Self { d: Matrix2::identity() }
    }

    pub fn matrix(&self) -> &Matrix2<Complex64> {
        &self.d
    }

    /// SU(2) element for a spatial rotation `w`, via its unit quaternion.
    ///
    /// The sign is fixed by taking the quaternion's scalar part non-negative,
    /// which picks the branch with rotation angle in `[-π, π]`.
    pub fn from_rotation(w: &LorentzTransform) -> Result<Self> {
        if !fixes_rest_frame(w, REST_FRAME_TOL) {
            return Err(domain("little-group element is not a spatial rotation"));
        }
        let r = w.matrix();
        let tr = r[(0, 0)] + r[(1, 1)] + r[(2, 2)];
        // Shepperd's method: branch on the largest of the four squared terms.
        let (q0, q1, q2, q3);
        if tr >= r[(0, 0)] && tr >= r[(1, 1)] && tr >= r[(2, 2)] {
            let s = 2.0 * (1.0 + tr).sqrt();
            q0 = 0.25 * s;
            q1 = (r[(2, 1)] - r[(1, 2)]) / s;
            q2 = (r[(0, 2)] - r[(2, 0)]) / s;
            q3 = (r[(1, 0)] - r[(0, 1)]) / s;
        } else if r[(0, 0)] >= r[(1, 1)] && r[(0, 0)] >= r[(2, 2)] {
            let s = 2.0 * (1.0 + r[(0, 0)] - r[(1, 1)] - r[(2, 2)]).sqrt();
            q0 = (r[(2, 1)] - r[(1, 2)]) / s;
            q1 = 0.25 * s;
            q2 = (r[(0, 1)] + r[(1, 0)]) / s;
            q3 = (r[(0, 2)] + r[(2, 0)]) / s;
        } else if r[(1, 1)] >= r[(2, 2)] {
            let s = 2.0 * (1.0 - r[(0, 0)] + r[(1, 1)] - r[(2, 2)]).sqrt();
            q0 = (r[(0, 2)] - r[(2, 0)]) / s;
            q1 = (r[(0, 1)] + r[(1, 0)]) / s;
            q2 = 0.25 * s;
            q3 = (r[(1, 2)] + r[(2, 1)]) / s;
        } else {
            let s = 2.0 * (1.0 - r[(0, 0)] - r[(1, 1)] + r[(2, 2)]).sqrt();
            q0 = (r[(1, 0)] - r[(0, 1)]) / s;
            q1 = (r[(0, 2)] + r[(2, 0)]) / s;
            q2 = (r[(1, 2)] + r[(2, 1)]) / s;
            q3 = 0.25 * s;
        }
        let sign = if q0 < 0.0 { -1.0 } else { 1.0 };
        let norm = sign / (q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3).sqrt();
        let (q0, q1, q2, q3) = (q0 * norm, q1 * norm, q2 * norm, q3 * norm);
        // exp(-iθ n·σ/2) = q0 I - i (q·σ)
        let d = Matrix2::new(
            Complex64::new(q0, -q3),
            Complex64::new(-q2, -q1),
            Complex64::new(q2, -q1),
            Complex64::new(q0, q3),
        );
        Ok(Self { d })
    }

    /// Largest elementwise deviation of `D†D` from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        (self.d.adjoint() * self.d - Matrix2::identity()).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn determinant(&self) -> Complex64 {
        self.d[(0, 0)] * self.d[(1, 1)] - self.d[(0, 1)] * self.d[(1, 0)]
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.d - other.d).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

impl std::ops::Mul for SpinHalfRep {
    type Output = SpinHalfRep;

    fn mul(self, rhs: Self) -> Self {
        Self { d: self.d * rhs.d }
    }
}

/// Spin-½ Wigner rotation for the ±z pair:
///
/// ```text
/// Forward:  [[cos Ω/2, -sin Ω/2], [ sin Ω/2, cos Ω/2]]
/// Inverted: [[cos Ω/2,  sin Ω/2], [-sin Ω/2, cos Ω/2]]
/// ```
pub fn spin_half_rep(angle: WignerAngle, parity: Parity) -> SpinHalfRep {
    let half = match parity {
        Parity::Forward => 0.5 * angle.0,
        Parity::Inverted => -0.5 * angle.0,
    };
    let (s, c) = half.sin_cos();
    let re = |v: f64| Complex64::new(v, 0.0);
    SpinHalfRep { d: Matrix2::new(re(c), re(-s), re(s), re(c)) }
}

/// Helicity of a massless particle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Helicity {
    Plus,
    Minus,
}

impl Helicity {
    pub fn sign(self) -> f64 {
        match self {
            Helicity::Plus => 1.0,
            Helicity::Minus => -1.0,
        }
    }
}

impl TryFrom<i32> for Helicity {
    type Error = crate::Error;

    fn try_from(h: i32) -> Result<Self> {
        match h {
            1 => Ok(Helicity::Plus),
            -1 => Ok(Helicity::Minus),
            _ => Err(domain(format!("helicity must be +1 or -1, got {h}"))),
        }
    }
}

/// Massless little-group representation: diagonal, `exp(iθσ)` on helicity σ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MasslessRep {
    pub theta: f64,
}

impl MasslessRep {
    pub fn new(theta: f64) -> Self {
        Self { theta }
    }

    pub fn phase(&self, helicity: Helicity) -> Complex64 {
        Complex64::from_polar(1.0, self.theta * helicity.sign())
    }

    /// `diag(exp(iθ), exp(-iθ))` over `{+, -}`.
    pub fn matrix(&self) -> Matrix2<Complex64> {
        let zero = Complex64::new(0.0, 0.0);
        Matrix2::new(self.phase(Helicity::Plus), zero, zero, self.phase(Helicity::Minus))
    }
}

/// `exp(i θ σ)` for helicity `σ ∈ {+1, -1}`.
pub fn massless_rep(theta: f64, helicity: i32) -> Result<Complex64> {
    let h = Helicity::try_from(helicity)?;
    Ok(MasslessRep::new(theta).phase(h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minkowski::{boost_x, FourVector};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn angle_vanishes_without_either_boost() {
        assert_eq!(wigner_angle(0.0, 3.0).unwrap().0, 0.0);
        assert_eq!(wigner_angle(2.0, 0.0).unwrap().0, 0.0);
    }

    #[test]
    fn angle_reference_value() {
        // Evaluated independently with numpy: atan2(sinh 2 · 4/3, cosh 2 + 5/3).
        let omega = 0.8_f64.atanh();
        assert_abs_diff_eq!(wigner_angle(2.0, omega).unwrap().0, 0.72768665697972, epsilon = 1e-13);
    }

    #[test]
    fn angle_symmetry_and_oddness() {
        for i in 0..20 {
            for j in 0..20 {
                let (eta, omega) = (-3.0 + 0.3 * i as f64, -2.5 + 0.27 * j as f64);
                let a = wigner_angle(eta, omega).unwrap().0;
                assert_eq!(a, wigner_angle(omega, eta).unwrap().0);
                assert_abs_diff_eq!(wigner_angle(-eta, omega).unwrap().0, -a, epsilon = 1e-15);
                assert!(a.abs() < FRAC_PI_2);
            }
        }
    }

    #[test]
    fn angle_saturates_for_huge_rapidities() {
        let a = wigner_angle(400.0, 400.0).unwrap().0;
        assert_abs_diff_eq!(a, FRAC_PI_2, epsilon = 1e-12);
        assert!(wigner_angle(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn matrix_path_trivial_cases() {
        let p = FourVector::along_z(1.4, 1.0).unwrap();
        let w = wigner_matrix_path(&LorentzTransform::identity(), &p, 1.0).unwrap();
        assert!(w.max_abs_diff(&LorentzTransform::identity()) < 1e-14);

        let rest = FourVector::at_rest(1.0);
        let w = wigner_matrix_path(&boost_x(2.0).unwrap(), &rest, 1.0).unwrap();
        assert!(w.max_abs_diff(&LorentzTransform::identity()) < 1e-14);
    }

    #[test]
    fn matrix_path_matches_closed_form_reference() {
        let omega = 0.8_f64.atanh();
        let p = FourVector::along_z(2.0, 1.0).unwrap();
        let w = wigner_matrix_path(&boost_x(omega).unwrap(), &p, 1.0).unwrap();
        assert!(fixes_rest_frame(&w, REST_FRAME_TOL));
        let angle = wigner_angle(2.0, omega).unwrap().0;
        assert!(w.max_abs_diff(&rotation_about_y(angle)) < 1e-10);
        assert_abs_diff_eq!(rotation_angle_about_y(&w), angle, epsilon = 1e-12);

        // The parity partner rotates the other way.
        let w = wigner_matrix_path(&boost_x(omega).unwrap(), &p.parity(), 1.0).unwrap();
        assert!(w.max_abs_diff(&rotation_about_y(-angle)) < 1e-10);
    }

    #[test]
    fn matrix_path_rejects_off_shell() {
        let p = FourVector::new(0.0, 0.0, 2.0, 1.0);
        assert!(wigner_matrix_path(&boost_x(1.0).unwrap(), &p, 1.0).is_err());
    }

    #[test]
    fn rotation_about_y_basics() {
        assert_eq!(rotation_about_y(0.0), LorentzTransform::identity());
        let v = rotation_about_y(PI).apply(&FourVector::new(1.0, 0.0, 0.0, 0.0));
        assert_abs_diff_eq!(v.x, -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(v.z, 0.0, epsilon = 1e-15);
        assert!(rotation_about_y(0.4).is_proper_orthochronous(1e-12));
    }

    #[test]
    fn spin_half_rep_values() {
        assert_eq!(spin_half_rep(WignerAngle(0.0), Parity::Forward), SpinHalfRep::identity());
        let d = spin_half_rep(WignerAngle(FRAC_PI_2), Parity::Forward);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let expected = [[h, -h], [h, h]];
        for i in 0..2 {
            for j in 0..2 {
                assert_abs_diff_eq!(d.matrix()[(i, j)].re, expected[i][j], epsilon = 1e-15);
                assert_eq!(d.matrix()[(i, j)].im, 0.0);
            }
        }
        let inv = spin_half_rep(WignerAngle(FRAC_PI_2), Parity::Inverted);
        assert_eq!(inv.matrix(), &d.matrix().transpose());
        assert!((d * inv).max_abs_diff(&SpinHalfRep::identity()) < 1e-15);
    }

    #[test]
    fn spin_half_rep_is_special_unitary() {
        for k in 0..50 {
            let a = WignerAngle(-3.0 + 0.12 * k as f64);
            for parity in [Parity::Forward, Parity::Inverted] {
                let d = spin_half_rep(a, parity);
                assert!(d.unitarity_defect() < 1e-12);
                assert!((d.determinant() - 1.0).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn su2_from_rotation_matches_closed_form() {
        for k in 0..40 {
            let angle = -3.0 + 0.15 * k as f64;
            let d = SpinHalfRep::from_rotation(&rotation_about_y(angle)).unwrap();
            let expected = spin_half_rep(WignerAngle(angle), Parity::Forward);
            assert!(d.max_abs_diff(&expected) < 1e-12, "angle {angle}");
        }
        let boost = boost_x(0.3).unwrap();
        assert!(SpinHalfRep::from_rotation(&boost).is_err());
    }

    #[test]
    fn massless_phases() {
        assert_eq!(massless_rep(0.0, 1).unwrap(), Complex64::new(1.0, 0.0));
        let z = massless_rep(PI / 3.0, -1).unwrap();
        assert_abs_diff_eq!(z.re, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(z.im, -0.8660254037844386, epsilon = 1e-15);
        for k in 0..30 {
            let theta = -7.0 + 0.5 * k as f64;
            assert_abs_diff_eq!(massless_rep(theta, 1).unwrap().norm(), 1.0, epsilon = 1e-15);
        }
        assert!(massless_rep(0.3, 0).is_err());
        assert!(massless_rep(0.3, 2).is_err());
        let m = MasslessRep::new(0.7).matrix();
        assert_eq!(m[(0, 1)], Complex64::new(0.0, 0.0));
        assert!((m.adjoint() * m - Matrix2::identity()).iter().all(|z| z.norm() < 1e-15));
    }
}
