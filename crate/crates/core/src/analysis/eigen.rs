use nalgebra::Matrix3;

use crate::correlators::CorrelationTensor;

const JACOBI_TOL: f64 = 1e-15;
const JACOBI_SWEEPS: usize = 64;

/// Eigenvalues of a real symmetric 3×3 matrix by cyclic Jacobi rotations,
/// sorted in descending order.
pub fn symmetric_eigenvalues(m: &Matrix3<f64>) -> [f64; 3] {
    let mut a = (m + m.transpose()) * 0.5;
    let scale = a.amax().max(f64::MIN_POSITIVE);
    for _ in 0..JACOBI_SWEEPS {
        let off = a[(0, 1)].abs() + a[(0, 2)].abs() + a[(1, 2)].abs();
        if off <= JACOBI_TOL * scale {
            break;
        }
        for (p, q) in [(0, 1), (0, 2), (1, 2)] {
            let apq = a[(p, q)];
            if apq == 0.0 {
                continue;
            }
            let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
            let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
            let t = if theta == 0.0 { 1.0 } else { t };
            let c = 1.0 / (t * t + 1.0).sqrt();
            let s = t * c;
            let mut rot = Matrix3::identity();
            rot[(p, p)] = c;
            rot[(q, q)] = c;
            rot[(p, q)] = s;
            rot[(q, p)] = -s;
            a = rot.transpose() * a * rot;
            a[(p, q)] = 0.0;
            a[(q, p)] = 0.0;
        }
    }
    let mut ev = [a[(0, 0)], a[(1, 1)], a[(2, 2)]];
    ev.sort_by(|x, y| y.total_cmp(x));
    ev
}

/// Largest CHSH value any choice of directions can reach for a state with
/// correlation tensor `T`: `2√(u₁ + u₂)`, with `u₁ ≥ u₂` the two largest
/// eigenvalues of `TᵀT`.
pub fn horodecki_bound(t: &CorrelationTensor) -> f64 {
    let u = symmetric_eigenvalues(&(t.t.transpose() * t.t));
    2.0 * (u[0] + u[1]).max(0.0).sqrt()
}
