//! Analytic predictions of the kinetic theory, evaluated numerically.
//!
//! All functions are pure. Combinatorial prefactors go through log-gamma so
//! sizes up to ~1e6 stay finite.

pub mod jam;
pub mod numerics;
pub mod order;
pub mod special;
pub mod trees;
pub mod unicycles;

pub use jam::{
    chi_giant_series, giant_properties, jam_predictions, random_map_probs, FrozenScales,
    GiantProperties, JamPredictions, RandomMapProbs,
};
pub use order::{cal_e, solve_g, solve_s, Phase};
pub use trees::{second_moment, total_tree_density, tree_densities, tree_density};
pub use unicycles::{
    u1_jam_p1, u1_p1_super, u_small_srg_sub, uk_p0, uk_p0_direct, unicycle_counts_classical,
    unicycle_mass_sub, ClassicalUnicycles, SmallUnicycles, UnicycleMass,
};

use crate::Model;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TheoryError {
    #[error("numerical method did not converge: {0}")]
    NonConvergence(&'static str),
    #[error("invalid gluing parameter p = {0}")]
    InvalidP(f64),
    #[error("formula needs a supercritical time, got t = {0}")]
    SubcriticalInput(f64),
    #[error("{0}")]
    InvalidArgument(String),
}

/// Bundle of analytic observables at one `(t, p)`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct TheoryPoint {
    pub t: f64,
    pub p: f64,
    pub phase: Phase,
    /// Unicycle mass; zero for the classical model.
    pub s: f64,
    /// Classical giant mass (reported for both models).
    pub g: f64,
    pub c_total: f64,
    pub m2: f64,
    /// Average number of (finite) unicycles; NaN where the infinite-size
    /// value diverges (simple model above the transition).
    pub u: f64,
    pub e_over_n: f64,
    /// Late-time scale ℰ(t); NaN for `p = 0` or the classical model.
    pub cal_e: f64,
    /// Edges per vertex in the giant; NaN unless classical and `t > 1`.
    pub edge_ratio: f64,
}

pub fn theory_point(t: f64, p: f64, model: Model) -> Result<TheoryPoint, TheoryError> {
    let g = solve_g(t);
    let c_total = total_tree_density(t, p, model)?;
    let m2 = second_moment(t, p, model)?;
    let (s, u, e_over_n, cal, edge_ratio) = match model {
        Model::Classical => {
            let u = unicycle_counts_classical(t)?.total;
            let ratio = if t > 1.0 {
                giant_properties(t, 1.0)?.edge_ratio
            } else {
                f64::NAN
            };
            (0.0, u, 0.5 * t, f64::NAN, ratio)
        }
        Model::Simple => {
            let s = solve_s(t, p)?;
            let u = if t < 1.0 { -0.5 * (-t).ln_1p() } else { f64::NAN };
            let cal = if p > 0.0 { cal_e(t, p)? } else { f64::NAN };
            (s, u, 1.0 - c_total, cal, f64::NAN)
        }
    };
    Ok(TheoryPoint {
        t,
        p,
        phase: Phase::of(t),
        s,
        g,
        c_total,
        m2,
        u,
        e_over_n,
        cal_e: cal,
        edge_ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_consistency() {
        let a = theory_point(2.0 * 2f64.ln(), 1.0, Model::Simple).unwrap();
        assert!((a.s - a.g).abs() < 1e-10);
        let c = theory_point(13.0 / 8.0, 0.0, Model::Classical).unwrap();
        assert!((c.edge_ratio - 1.092_707_8).abs() < 1e-6);
        assert!((c.e_over_n - 13.0 / 16.0).abs() < 1e-15);
        let sub = theory_point(0.5, 0.5, Model::Simple).unwrap();
        assert_eq!(sub.s, 0.0);
        assert!((sub.e_over_n - 0.25).abs() < 1e-15);
    }
}
