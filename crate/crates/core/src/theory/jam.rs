//! Frozen-state estimates, random-map probabilities and properties of the
//! classical giant component.

use super::order::solve_g;
use super::numerics::compensated_sum;
use super::special::ln_factorial;
use super::TheoryError;

/// Leading-order scales for the frozen-unicycle process (`p = 0`).
/// Amplitudes are unknown; only the `N` dependence is meaningful.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct FrozenScales {
    pub t_jam_scale: f64,
    pub u_jam_scale: f64,
    pub k_scale: f64,
    pub heuristic: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct JamPredictions {
    pub n: f64,
    pub p: f64,
    /// `ln N / p`
    pub t_jam_upper: Option<f64>,
    /// `ln N / (2p)`
    pub t_jam_lower: Option<f64>,
    /// `(1+p)/(6p) ln N`
    pub u_jam_est: Option<f64>,
    pub p0: Option<FrozenScales>,
}

pub fn jam_predictions(n: f64, p: f64) -> Result<JamPredictions, TheoryError> {
    if !(n >= 2.0) {
        return Err(TheoryError::InvalidArgument(format!("need N >= 2, got {n}")));
    }
    if !(p >= 0.0) {
        return Err(TheoryError::InvalidP(p));
    }
    let ln_n = n.ln();
    if p == 0.0 {
        return Ok(JamPredictions {
            n,
            p,
            t_jam_upper: None,
            t_jam_lower: None,
            u_jam_est: None,
            p0: Some(FrozenScales {
                t_jam_scale: n,
                u_jam_scale: n.cbrt() * ln_n.powf(2.0 / 3.0),
                k_scale: (n / ln_n).powf(2.0 / 3.0),
                heuristic: true,
            }),
        });
    }
    Ok(JamPredictions {
        n,
        p,
        t_jam_upper: Some(ln_n / p),
        t_jam_lower: Some(ln_n / (2.0 * p)),
        u_jam_est: Some((1.0 + p) / (6.0 * p) * ln_n),
        p0: None,
    })
}

/// Probabilities that the `p = 1/2` process freezes into exactly one
/// unicycle, and into `N` self-loops.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct RandomMapProbs {
    pub prob_one_unicycle: f64,
    pub prob_all_unicycles: f64,
}

/// Exact integer numerator and denominator of `(N-1)!/N^N Σ_{n<N} N^n/n!`.
/// Fits in `u128` for `N <= 20`.
fn one_unicycle_rational(n: u32) -> (u128, u128) {
    let nn = n as u128;
    // (N-1)!/n! · N^n for n = N-1 down to 0.
    let mut num = 0u128;
    let mut falling = 1u128; // (N-1)!/n!
    let mut pow = nn.pow(n - 1); // N^n
    for k in (0..n).rev() {
        num += falling * pow;
        if k > 0 {
            falling *= k as u128;
            pow /= nn;
        }
    }
    (num, nn.pow(n))
}

pub fn random_map_probs(n: u32) -> Result<RandomMapProbs, TheoryError> {
    if n == 0 {
        return Err(TheoryError::InvalidArgument("need N >= 1".into()));
    }
    let nf = n as f64;
    let prob_one = if n <= 20 {
        let (num, den) = one_unicycle_rational(n);
        let g = gcd(num, den);
        (num / g) as f64 / (den / g) as f64
    } else {
        let ln_pref = ln_factorial(n as u64 - 1) - nf * nf.ln();
        compensated_sum((0..n).map(|k| (ln_pref + k as f64 * nf.ln() - ln_factorial(k as u64)).exp()))
    };
    Ok(RandomMapProbs {
        prob_one_unicycle: prob_one,
        prob_all_unicycles: (-nf * nf.ln()).exp(),
    })
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Edge density and Euler characteristic of the classical giant component.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct GiantProperties {
    pub g: f64,
    /// `#edges / #vertices` inside the giant.
    pub edge_ratio: f64,
    /// Extensive Euler characteristic `V - E` of the giant for `N` vertices.
    pub chi_giant: f64,
    /// Expected number of isolated vertices, `N e^{-t}`.
    pub isolated_vertices: f64,
}

pub fn giant_properties(t: f64, n: f64) -> Result<GiantProperties, TheoryError> {
    if !(t > 1.0) {
        return Err(TheoryError::SubcriticalInput(t));
    }
    let g = solve_g(t);
    let l = (-g).ln_1p();
    Ok(GiantProperties {
        g,
        edge_ratio: -(2.0 - g) / (2.0 * g) * l,
        chi_giant: n * (g + 0.5 * (2.0 - g) * l),
        isolated_vertices: n * (-t).exp(),
    })
}

/// `χ_giant / N` from its power series `-Σ_{m>=3} (m-2)/(2m(m-1)) g^m`.
pub fn chi_giant_series(g: f64) -> f64 {
    let mut pow = g * g;
    let terms = (3..10_000_000u64).map_while(|m| {
        pow *= g;
        let mf = m as f64;
        let term = (mf - 2.0) / (2.0 * mf * (mf - 1.0)) * pow;
        (term > 1e-20).then_some(term)
    });
    -compensated_sum(terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn predictions_branches() {
        let j = jam_predictions(6f64.exp(), 0.5).unwrap();
        assert!((j.u_jam_est.unwrap() - 3.0).abs() < 1e-12);
        let j = jam_predictions(1e4, 1.0).unwrap();
        let l = 1e4f64.ln();
        assert!((j.t_jam_lower.unwrap() - 0.5 * l).abs() < 1e-12);
        assert!((j.t_jam_upper.unwrap() - l).abs() < 1e-12);
        let j = jam_predictions(1e4, 0.0).unwrap();
        assert!(j.t_jam_upper.is_none() && j.u_jam_est.is_none());
        assert!(j.p0.unwrap().heuristic);
    }

    #[test]
    fn random_map_small_n() {
        assert_eq!(random_map_probs(1).unwrap().prob_one_unicycle, 1.0);
        assert_eq!(random_map_probs(2).unwrap().prob_one_unicycle, 0.75);
        // N = 3: (2/27)(1 + 3 + 9/2) = 17/27
        assert!((random_map_probs(3).unwrap().prob_one_unicycle - 17.0 / 27.0).abs() < 1e-16);
        assert_eq!(random_map_probs(2).unwrap().prob_all_unicycles, 0.25);
    }

    #[test]
    fn random_map_exact_and_float_paths_agree() {
        let n = 20u32;
        let exact = random_map_probs(n).unwrap().prob_one_unicycle;
        let nf = n as f64;
        let ln_pref = ln_factorial(n as u64 - 1) - nf * nf.ln();
        let float: f64 = (0..n)
            .map(|k| (ln_pref + k as f64 * nf.ln() - ln_factorial(k as u64)).exp())
            .sum();
        assert!((exact - float).abs() < 1e-13);
    }

    #[test]
    fn random_map_asymptotics() {
        let p = random_map_probs(100).unwrap().prob_one_unicycle;
        let asym = (std::f64::consts::PI / 200.0).sqrt();
        assert!((p / asym - 1.0).abs() < 0.1, "{p} vs {asym}");
    }

    #[test]
    fn giant_at_thirteen_eighths() {
        let gp = giant_properties(13.0 / 8.0, 80.0).unwrap();
        assert!((gp.edge_ratio - 1.092_707_8).abs() < 1e-6);
        assert!((gp.isolated_vertices - 15.753).abs() < 1e-3);
        assert!(gp.chi_giant < 0.0);
        assert!(matches!(giant_properties(1.0, 10.0), Err(TheoryError::SubcriticalInput(_))));
    }

    #[test]
    fn chi_series_matches_closed_form() {
        for &t in &[1.2, 13.0 / 8.0, 3.0, 6.0] {
            let gp = giant_properties(t, 1.0).unwrap();
            assert!((gp.chi_giant - chi_giant_series(gp.g)).abs() < 1e-10);
        }
        let g = 1e-3;
        assert!((chi_giant_series(g) / (-g * g * g / 12.0) - 1.0).abs() < 2e-3);
    }
}
