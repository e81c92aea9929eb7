//! Summary statistics, pooled z-scores and chi-square goodness of fit.

use serde::Serialize;

use crate::theory::numerics::compensated_sum;
use crate::theory::special::gamma_q;

/// Mean, sample variance and standard error of one observable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Summary {
    pub n: usize,
    pub mean: f64,
    pub variance: f64,
    pub std_err: f64,
}

impl Summary {
    /// Two-pass estimate; `variance` and `std_err` are zero for one sample.
    /// NaN samples are skipped.
    pub fn of(xs: &[f64]) -> Self {
        let xs: Vec<f64> = xs.iter().copied().filter(|x| !x.is_nan()).collect();
        let n = xs.len();
        if n == 0 {
            return Self {
                n,
                mean: f64::NAN,
                variance: f64::NAN,
                std_err: f64::NAN,
            };
        }
        let mean = compensated_sum(xs.iter().copied()) / n as f64;
        let variance = if n > 1 {
            compensated_sum(xs.iter().map(|x| (x - mean) * (x - mean))) / (n - 1) as f64
        } else {
            0.0
        };
        Self {
            n,
            mean,
            variance,
            std_err: (variance / n as f64).sqrt(),
        }
    }

    pub fn std_dev(&self) -> f64 {
        self.variance.sqrt()
    }
}

/// `(a - b) / sqrt(se_a² + se_b²)`; zero when the values coincide, infinite
/// when they differ with no stated error.
pub fn z_score(a: f64, se_a: f64, b: f64, se_b: f64) -> f64 {
    let diff = a - b;
    if diff == 0.0 {
        return 0.0;
    }
    let se = (se_a * se_a + se_b * se_b).sqrt();
    if se == 0.0 {
        f64::INFINITY.copysign(diff)
    } else {
        diff / se
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChiSquare {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

/// Pearson goodness of fit of `observed` counts against `probs`.
///
/// Cells with expected count below `min_expected` are pooled (in order)
/// into their neighbours so the asymptotic law applies.
pub fn chi_square_gof(observed: &[u64], probs: &[f64], min_expected: f64) -> ChiSquare {
    assert_eq!(observed.len(), probs.len());
    let total: u64 = observed.iter().sum();
    let mut cells: Vec<(f64, f64)> = Vec::new();
    let mut acc = (0.0, 0.0);
    for (&o, &p) in observed.iter().zip(probs) {
        acc.0 += o as f64;
        acc.1 += p * total as f64;
        if acc.1 >= min_expected {
            cells.push(acc);
            acc = (0.0, 0.0);
        }
    }
    if acc.1 > 0.0 || acc.0 > 0.0 {
        match cells.last_mut() {
            Some(last) => {
                last.0 += acc.0;
                last.1 += acc.1;
            }
            None => cells.push(acc),
        }
    }
    let statistic: f64 = cells
        .iter()
        .map(|&(o, e)| if e > 0.0 { (o - e) * (o - e) / e } else if o > 0.0 { f64::INFINITY } else { 0.0 })
        .sum();
    let dof = cells.len().saturating_sub(1);
    let p_value = if dof == 0 {
        1.0
    } else if statistic.is_infinite() {
        0.0
    } else {
        gamma_q(dof as f64 / 2.0, statistic / 2.0)
    };
    ChiSquare {
        statistic,
        dof,
        p_value,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_values() {
        let s = Summary::of(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(s.mean, 2.5);
        assert!((s.variance - 5.0 / 3.0).abs() < 1e-15);
        assert!((s.std_err - (5.0f64 / 12.0).sqrt()).abs() < 1e-15);
        let one = Summary::of(&[7.0]);
        assert_eq!((one.mean, one.std_err), (7.0, 0.0));
        assert_eq!(Summary::of(&[1.0, f64::NAN, 3.0]).n, 2);
    }

    #[test]
    fn z_scores() {
        assert_eq!(z_score(1.0, 0.0, 1.0, 0.0), 0.0);
        assert_eq!(z_score(1.0, 3.0, -3.0, 0.0), 4.0 / 3.0);
        assert_eq!(z_score(2.0, 0.0, 1.0, 0.0), f64::INFINITY);
    }

    #[test]
    fn chi_square_known_quantiles() {
        // Statistic 4 with 2 degrees of freedom: p = e^{-2}.
        let c = chi_square_gof(&[40, 30, 30], &[0.5, 0.25, 0.25], 5.0);
        assert_eq!(c.dof, 2);
        assert!((c.statistic - 4.0).abs() < 1e-12);
        assert!((c.p_value - (-2.0f64).exp()).abs() < 1e-12);
        let pooled = chi_square_gof(&[98, 1, 1], &[0.98, 0.01, 0.01], 5.0);
        assert_eq!(pooled.dof, 0);
        assert_eq!(pooled.p_value, 1.0);
    }
}
