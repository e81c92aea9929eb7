//! Order parameters: unicycle mass `s(t)` of the simple process, giant
//! component mass `g(t)` of the classical process, and the late-time
//! scale `ℰ(t)`.

use super::numerics::{adaptive_simpson, newton_bisect};
use super::special::{digamma, EULER_GAMMA};
use super::TheoryError;

/// Below this gluing probability the `p -> 0` limit `s = 1 - 1/t` is used.
const P_ZERO_WINDOW: f64 = 1e-8;

/// Which side of the percolation point `t = 1` a time lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Phase {
    /// `t <= 1`; the critical point itself belongs here.
    Subcritical,
    Supercritical,
}

impl Phase {
    pub fn of(t: f64) -> Self {
        if t <= 1.0 {
            Phase::Subcritical
        } else {
            Phase::Supercritical
        }
    }
}

/// `ℰ(t) = exp(-p t + p - γ - ψ(1 + 1/p))`, defined for `p > 0`.
pub fn cal_e(t: f64, p: f64) -> Result<f64, TheoryError> {
    if !(p > 0.0) {
        return Err(TheoryError::InvalidP(p));
    }
    Ok((-p * t + p - EULER_GAMMA - digamma(1.0 + 1.0 / p)).exp())
}

/// Mass of the classical giant component: the positive root of
/// `g = 1 - exp(-g t)` for `t > 1`, zero otherwise.
pub fn solve_g(t: f64) -> f64 {
    if t <= 1.0 {
        return 0.0;
    }
    // h(g) = g - 1 + e^{-g t} is convex with h(0) = 0 and h'(0) = 1 - t < 0,
    // so the positive root is bracketed by (g_min, 1).
    let h = |g: f64| (g + (-g * t).exp_m1(), 1.0 - t * (-g * t).exp());
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    // Start to the right of the root; Newton on a convex function then
    // converges monotonically from above.
    let mut g = 1.0f64;
    for _ in 0..200 {
        let (v, dv) = h(g);
        if v > 0.0 {
            hi = hi.min(g);
        } else {
            lo = lo.max(g);
        }
        let mut next = g - v / dv;
        if !(next > lo && next < hi) || !next.is_finite() {
            next = 0.5 * (lo + hi);
        }
        if (next - g).abs() <= 1e-16 * g.max(1e-300) {
            g = next;
            break;
        }
        g = next;
    }
    g
}

/// Time at which the simple process reaches unicycle mass `s`, written in
/// terms of `w = -ln(1 - s)`:
///
/// `t(w) = 1 + (1/p) ∫₀^w ((1 - e^{-u}) / (1 - e^{-w}))^{1/p} du`.
///
/// This is the implicit equation for `s` after the substitution
/// `1 - z = e^{-u}`, which removes the logarithmic endpoint divergence and
/// keeps `s^{1/p}` from underflowing at small `p`.
fn time_of_log_mass(w: f64, p: f64) -> Result<f64, TheoryError> {
    if w == 0.0 {
        return Ok(1.0);
    }
    let a = 1.0 / p;
    let s = -(-w).exp_m1();
    let tol = 1e-12 * w.min(1.0);
    if p <= 1.0 {
        let integrand = |u: f64| ((-(-u).exp_m1()) / s).powf(a);
        return Ok(1.0 + adaptive_simpson(&integrand, 0.0, w, tol)? / p);
    }
    // For p > 1 the integrand behaves like u^{1/p} at 0; u = v^p smooths it.
    let integrand = |v: f64| {
        if v == 0.0 {
            return 0.0;
        }
        let u = v.powf(p);
        p * v.powf(p) * ((-(-u).exp_m1()) / (u * s)).powf(a)
    };
    Ok(1.0 + adaptive_simpson(&integrand, 0.0, w.powf(a), tol)? / p)
}

/// Unicycle mass `s(t)` of the simple random graph process with gluing
/// probability (or rate) `p`.
pub fn solve_s(t: f64, p: f64) -> Result<f64, TheoryError> {
    if !(p >= 0.0) || !p.is_finite() {
        return Err(TheoryError::InvalidP(p));
    }
    if !(t >= 0.0) {
        return Err(TheoryError::InvalidArgument(format!("time must be >= 0, got {t}")));
    }
    if t <= 1.0 {
        return Ok(0.0);
    }
    if p < P_ZERO_WINDOW {
        return Ok(1.0 - 1.0 / t);
    }
    let e = cal_e(t, p)?;
    if e < 1e-12 {
        return Ok(1.0 - e - (t - 1.0) * e * e);
    }
    // dt/dw = (ds/dw) dt/ds with ds/dw = 1 - s and p dt/ds = (1-t)/s + 1/(1-s).
    let residual = |w: f64| -> Result<(f64, f64), TheoryError> {
        let tw = time_of_log_mass(w, p)?;
        let s = -(-w).exp_m1();
        let dt_ds = ((1.0 - tw) / s + 1.0 / (1.0 - s)) / p;
        Ok((tw - t, dt_ds * (1.0 - s)))
    };
    let mut hi = 1.0f64;
    while residual(hi)?.0 < 0.0 {
        hi *= 2.0;
        if hi > 1e4 {
            return Err(TheoryError::NonConvergence("no bracket for the unicycle mass"));
        }
    }
    // |Δs| = (1 - s)|Δw| <= |Δw|
    let w = newton_bisect(residual, 0.0, hi, 1e-13)?;
    Ok(-(-w).exp_m1())
}
