use crate::correlators::{chsh_closed_form, chsh_closed_form_for, ChshSetting, SignConvention};
use crate::error::{domain, Result};
use crate::littlegroup::wigner_angle;
use crate::minkowski::rapidity_of;

/// Iteration cap for [`bisect`] in the threshold search.
pub const BISECTION_MAX_ITER: usize = 200;

/// Upper end of the β search interval. β = 1 itself has no finite rapidity.
pub const BETA_UPPER: f64 = 1.0 - 1e-12;

/// Bisection for a sign change of `f` on `[lo, hi]`.
///
/// Stops when `f` hits zero exactly, when the bracket can no longer be split
/// in floating point, or after `max_iter` halvings.
pub fn bisect<F>(f: F, mut lo: f64, mut hi: f64, max_iter: usize) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    if lo >= hi || lo.is_nan() || hi.is_nan() {
        return Err(domain(format!("bisection needs lo < hi, got [{lo}, {hi}]")));
    }
    let mut f_lo = f(lo)?;
    let f_hi = f(hi)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(domain("bisection bracket has no sign change"));
    }
    for _ in 0..max_iter {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn closed_chsh(beta: f64, eta: f64, setting: &ChshSetting) -> Result<f64> {
    let angle = wigner_angle(eta, rapidity_of(beta)?)?;
    if setting.is_standard() {
        Ok(chsh_closed_form(beta, angle))
    } else {
        Ok(chsh_closed_form_for(setting, beta, angle, SignConvention::OracleConsistent)?.value)
    }
}

/// Frame speed at which the closed-form CHSH value for rapidity `eta` drops
/// to 2, or `None` when it does not cross 2 on `[0, 1)`.
pub fn find_threshold(eta: f64, setting: &ChshSetting) -> Result<Option<f64>> {
    if !eta.is_finite() {
        return Err(domain(format!("eta must be finite, got {eta}")));
    }
    let excess = |beta: f64| closed_chsh(beta, eta, setting).map(|c| c - 2.0);
    let (start, end) = (excess(0.0)?, excess(BETA_UPPER)?);
    if !(start > 0.0 && end < 0.0) {
        return Ok(None);
    }
    bisect(excess, 0.0, BETA_UPPER, BISECTION_MAX_ITER).map(Some)
}
