//! Average numbers of unicycles and cycles.

use std::f64::consts::PI;

use super::numerics::{adaptive_simpson, compensated_sum, log_sum_exp};
use super::order::solve_g;
use super::special::{gamma_p, li2, ln_factorial};
use super::TheoryError;

/// Unicycle statistics of the classical process at a fixed time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalUnicycles {
    pub t: f64,
    /// Giant mass (zero for `t <= 1`).
    pub g: f64,
    /// Average number of finite unicycles `U(t)`; `+∞` at `t = 1`.
    pub total: f64,
}

/// Classical unicycle counts at time `t`.
pub fn unicycle_counts_classical(t: f64) -> Result<ClassicalUnicycles, TheoryError> {
    if !(t >= 0.0) {
        return Err(TheoryError::InvalidArgument(format!("time must be >= 0, got {t}")));
    }
    let g = solve_g(t);
    let total = if t < 1.0 {
        -0.5 * (-t).ln_1p()
    } else if t == 1.0 {
        f64::INFINITY
    } else {
        -0.5 * (1.0 - (1.0 - g) * t).ln()
    };
    Ok(ClassicalUnicycles { t, g, total })
}

impl ClassicalUnicycles {
    /// `U_k(t) = ½ t^k e^{-kt} Σ_{n<k} k^{n-1}/n!`.
    pub fn size(&self, k: u64) -> f64 {
        assert!(k >= 1);
        if self.t == 0.0 {
            return 0.0;
        }
        let kf = k as f64;
        let lk = kf.ln();
        let logs: Vec<f64> = (0..k).map(|n| (n as f64 - 1.0) * lk - ln_factorial(n)).collect();
        (log_sum_exp(&logs) + kf * (self.t.ln() - self.t)).exp() * 0.5
    }

    /// Average number of cycles of length `ℓ` created so far, `t^ℓ / (2ℓ)`.
    pub fn cycles(&self, len: u64) -> f64 {
        assert!(len >= 1);
        self.t.powi(len as i32) / (2.0 * len as f64)
    }

    /// Joint density of unicycles of size `k` whose cycle has length `ℓ <= k`.
    pub fn joint(&self, k: u64, len: u64) -> f64 {
        assert!(len >= 1 && len <= k);
        if self.t == 0.0 {
            return 0.0;
        }
        let (kf, d) = (k as f64, k - len);
        let ln = (d as f64 - 1.0) * kf.ln() - ln_factorial(d) + kf * (self.t.ln() - self.t);
        0.5 * ln.exp()
    }

    /// Average number of rings (unicycles that are pure cycles) of length `ℓ`.
    pub fn rings(&self, len: u64) -> f64 {
        self.joint(len, len)
    }
}

/// Smallest unicycles `U_1`, `U_2` of the simple process below the transition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmallUnicycles {
    pub u1: f64,
    pub u2: f64,
}

/// `U_1(t)` and `U_2(t)` for the simple process with gluing probability `p`,
/// valid for `0 <= t <= 1`.
///
/// Both expressions have removable singularities at `p = 1`; `U_1` is
/// written with `expm1` and `U_2` switches to a series in `q = 1 - p`.
pub fn u_small_srg_sub(t: f64, p: f64) -> Result<SmallUnicycles, TheoryError> {
    if !(0.0..=1.0).contains(&t) {
        return Err(TheoryError::InvalidArgument(format!(
            "subcritical formula needs 0 <= t <= 1, got {t}"
        )));
    }
    if !(p >= 0.0) {
        return Err(TheoryError::InvalidP(p));
    }
    if t == 0.0 {
        return Ok(SmallUnicycles { u1: 0.0, u2: 0.0 });
    }
    let q = 1.0 - p;
    // U_1 = (e^{-pt} - e^{-t}) / (2q) = e^{-t} (e^{qt} - 1) / (2q)
    let u1 = if q == 0.0 {
        0.5 * t * (-t).exp()
    } else {
        (-t).exp() * (q * t).exp_m1() / (2.0 * q)
    };
    let u2 = if q.abs() < 1e-3 {
        let t2 = t * t;
        let series = 0.75 * t2
            + q * (7.0 / 12.0 * t2 * t - 0.25 * t2)
            + q * q * (5.0 / 16.0 * t2 * t2 - 0.25 * t2 * t)
            + q * q * q * (31.0 / 240.0 * t2 * t2 * t - 7.0 / 48.0 * t2 * t2);
        (-2.0 * t).exp() * series
    } else {
        ((1.0 + p) * (-2.0 * p * t).exp()
            - 2.0 * p * (-(1.0 + p) * t).exp()
            - (1.0 - p + 2.0 * q * t) * (-2.0 * t).exp())
            / (4.0 * q * q)
    };
    Ok(SmallUnicycles { u1, u2 })
}

/// Average unicycle mass `S(t) = Σ k U_k` below the transition, together
/// with the critical amplitudes of the first two moments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnicycleMass {
    pub mass: f64,
    /// `Σ k U_k ≃ A₁ (1-t)^{-2}` as `t ↑ 1`.
    pub amplitude_1: f64,
    /// `Σ k² U_k ≃ A₂ (1-t)^{-4}` as `t ↑ 1`.
    pub amplitude_2: f64,
}

pub fn unicycle_mass_sub(t: f64, p: f64) -> Result<UnicycleMass, TheoryError> {
    if p == 2.0 {
        return Err(TheoryError::InvalidP(p));
    }
    if !(0.0..1.0).contains(&t) {
        return Err(TheoryError::InvalidArgument(format!(
            "subcritical formula needs 0 <= t < 1, got {t}"
        )));
    }
    let x = 1.0 - t;
    let d = 2.0 - p;
    Ok(UnicycleMass {
        mass: (x.powi(-2) - x.powf(-p)) / (2.0 * d),
        amplitude_1: 1.0 / (2.0 * d),
        amplitude_2: p / (4.0 * d * d) + 3.0 / (4.0 * d),
    })
}

/// `H(h) = 1/h + (1-h) ln(1-h)/h²`, with its series `Σ h^{n-2}/(n(n-1))`
/// near the removable singularity at zero.
fn h_kernel(h: f64) -> f64 {
    if h < 1e-4 {
        return 0.5 + h / 6.0 + h * h / 12.0 + h * h * h / 20.0;
    }
    if h >= 1.0 {
        return 1.0;
    }
    1.0 / h + (1.0 - h) * (-h).ln_1p() / (h * h)
}

fn glue_integral(upper: f64) -> Result<f64, TheoryError> {
    adaptive_simpson(&|h: f64| h_kernel(h) * li2(h).exp(), 0.0, upper, 1e-12)
}

/// Average number of size-1 unicycles for `p = 1` in the supercritical phase.
pub fn u1_p1_super(t: f64) -> Result<f64, TheoryError> {
    if !(t >= 1.0) {
        return Err(TheoryError::InvalidArgument(format!(
            "supercritical formula needs t >= 1, got {t}"
        )));
    }
    let g = solve_g(t);
    let rhs = 1.0 + glue_integral(g)?;
    Ok(0.5 * rhs * (-(t * (1.0 - g)) - li2(g)).exp())
}

/// Limit of [`u1_p1_super`] as `t → ∞`: the mean number of self-loop
/// unicycles left in the frozen state of the `p = 1` process.
pub fn u1_jam_p1() -> Result<f64, TheoryError> {
    let rhs = 1.0 + glue_integral(1.0)?;
    Ok(0.5 * rhs * (-PI * PI / 6.0).exp())
}

/// `U_k(t)` for frozen unicycles (`p = 0`).
///
/// Below the transition `U_k = P(k, k t) / (2k)` with `P` the regularized
/// lower incomplete gamma function (equivalent to the Poisson tail sum
/// `e^{-kt} Σ_{n>=k} (kt)^n / n!`). Above it the Stockmayer densities add
/// `(k/e)^k / (2 k!) · ln t`.
pub fn uk_p0(k: u64, t: f64) -> Result<f64, TheoryError> {
    if k == 0 {
        return Err(TheoryError::InvalidArgument("unicycle size must be >= 1".into()));
    }
    if !(t >= 0.0) {
        return Err(TheoryError::InvalidArgument(format!("time must be >= 0, got {t}")));
    }
    let kf = k as f64;
    if t <= 1.0 {
        return Ok(gamma_p(kf, kf * t) / (2.0 * kf));
    }
    let at_one = gamma_p(kf, kf) / (2.0 * kf);
    let growth = (kf * kf.ln() - kf - ln_factorial(k)).exp() * 0.5;
    Ok(at_one + growth * t.ln())
}

/// Direct truncated summation of `(1/2k) e^{-kt} Σ_{n>=k} (kt)^n/n!`;
/// a cross-check path for [`uk_p0`] below the transition.
pub fn uk_p0_direct(k: u64, t: f64) -> f64 {
    let kf = k as f64;
    let x = kf * t;
    if x == 0.0 {
        return 0.0;
    }
    let lx = x.ln();
    let ln_first = kf * lx - x - ln_factorial(k);
    let mut terms = Vec::new();
    // For t <= 1 the Poisson weights decrease from n = k on.
    for n in k.. {
        let ln_term = n as f64 * lx - x - ln_factorial(n);
        if ln_term < ln_first - 45.0 {
            break;
        }
        terms.push(ln_term.exp());
    }
    compensated_sum(terms) / (2.0 * kf)
}
