//! Tree densities `c_k(t)`, their total and their second moment.

use super::order::{solve_g, solve_s};
use super::special::ln_factorial;
use super::TheoryError;
use crate::Model;

/// `ln( k^{k-2} / k! )`.
pub(crate) fn ln_cayley_weight(k: u64) -> f64 {
    let kf = k as f64;
    (kf - 2.0) * kf.ln() - ln_factorial(k)
}

/// `ln c_k` with `c_k = k^{k-2}/k! · t^{k-1} m^k e^{-k t m}`, where `m` is the
/// mass fraction still in trees (`m = 1` classically and subcritically).
fn ln_density(k: u64, t: f64, survivor: f64) -> f64 {
    let kf = k as f64;
    let ln_t_term = if k == 1 { 0.0 } else { (kf - 1.0) * t.ln() };
    let ln_mass = if survivor == 1.0 { 0.0 } else { kf * survivor.ln() };
    ln_cayley_weight(k) + ln_t_term + ln_mass - kf * t * survivor
}

/// Density of trees of size `k` per vertex.
///
/// Subcritical (and classical at all times) this is the Cayley-weighted
/// form `k^{k-2}/k! · t^{k-1} e^{-kt}`. In the supercritical simple process
/// the time is rescaled by the tree mass `1 - s(t)`.
pub fn tree_density(k: u64, t: f64, p: f64, model: Model) -> Result<f64, TheoryError> {
    if k == 0 {
        return Err(TheoryError::InvalidArgument("tree size must be >= 1".into()));
    }
    if !(t >= 0.0) {
        return Err(TheoryError::InvalidArgument(format!("time must be >= 0, got {t}")));
    }
    if t == 0.0 {
        return Ok(if k == 1 { 1.0 } else { 0.0 });
    }
    let survivor = match model {
        Model::Classical => 1.0,
        Model::Simple => 1.0 - solve_s(t, p)?,
    };
    Ok(ln_density(k, t, survivor).exp())
}

/// Evaluates `c_k` for `k = 1..=kmax` at once, sharing a single `s(t)` solve.
pub fn tree_densities(kmax: u64, t: f64, p: f64, model: Model) -> Result<Vec<f64>, TheoryError> {
    if t == 0.0 {
        return Ok((1..=kmax).map(|k| if k == 1 { 1.0 } else { 0.0 }).collect());
    }
    let survivor = match model {
        Model::Classical => 1.0,
        Model::Simple => 1.0 - solve_s(t, p)?,
    };
    Ok((1..=kmax).map(|k| ln_density(k, t, survivor).exp()).collect())
}

/// Total density of trees `c(t) = Σ_k c_k(t)`.
pub fn total_tree_density(t: f64, p: f64, model: Model) -> Result<f64, TheoryError> {
    if t <= 1.0 {
        return Ok(1.0 - 0.5 * t);
    }
    Ok(match model {
        Model::Classical => {
            let g = solve_g(t);
            1.0 - 0.5 * t - g - (1.0 - 0.5 * g) * (-g).ln_1p()
        }
        Model::Simple if p == 0.0 => 0.5 / t,
        Model::Simple => {
            let s = solve_s(t, p)?;
            1.0 - 0.5 * (1.0 + s * s) * t + (t - 1.0) * s
        }
    })
}

/// Second moment `M₂ = Σ k² c_k` of the tree size distribution.
///
/// Returns `+∞` exactly at the critical point.
pub fn second_moment(t: f64, p: f64, model: Model) -> Result<f64, TheoryError> {
    if t == 1.0 {
        return Ok(f64::INFINITY);
    }
    if t < 1.0 {
        return Ok(1.0 / (1.0 - t));
    }
    let mass = match model {
        Model::Classical => 1.0 - solve_g(t),
        Model::Simple => 1.0 - solve_s(t, p)?,
    };
    Ok(mass / (1.0 - t * mass))
}
