//! Special functions used by the analytic predictions.
//!
//! Everything here is real-argument only and tuned for the ranges the
//! kinetic formulas need: log-gamma up to ~1e7, digamma for arguments
//! above 1, the dilogarithm on (-inf, 1], and regularized incomplete gamma
//! functions with large equal-ish arguments (`P(k, k t)` for k up to 1e6).

use std::f64::consts::PI;
use std::sync::OnceLock;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// Stirling remainder `ln Γ(x+1) - [(x+1/2) ln x - x + ln sqrt(2π)]` for x >= 10.
fn stirling_tail(x: f64) -> f64 {
    let r = 1.0 / x;
    let r2 = r * r;
    r * (1.0 / 12.0
        - r2 * (1.0 / 360.0
            - r2 * (1.0 / 1260.0
                - r2 * (1.0 / 1680.0
                    - r2 * (1.0 / 1188.0
                        - r2 * (691.0 / 360_360.0 - r2 * (1.0 / 156.0 - r2 * 3617.0 / 122_400.0)))))))
}

/// Natural log of the gamma function for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0, "ln_gamma domain is x > 0, got {x}");
    if x.fract() == 0.0 && x <= SMALL_FACTORIALS as f64 {
        return small_ln_factorials()[x as usize - 1];
    }
    if x < 10.0 {
        // Shift upward: Γ(x) = Γ(x+n) / (x (x+1) ... (x+n-1)).
        let mut shift = 0.0;
        let mut y = x;
        while y < 10.0 {
            shift += y.ln();
            y += 1.0;
        }
        return ln_gamma(y) - shift;
    }
    // ln Γ(x) = ln Γ(x+1) - ln x
    (x - 0.5) * x.ln() - x + HALF_LN_2PI + stirling_tail(x)
}

const SMALL_FACTORIALS: usize = 171;

fn small_ln_factorials() -> &'static [f64; SMALL_FACTORIALS] {
    static TABLE: OnceLock<[f64; SMALL_FACTORIALS]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [0.0; SMALL_FACTORIALS];
        let mut f = 1.0f64;
        for (k, slot) in t.iter_mut().enumerate().skip(1) {
            f *= k as f64;
            *slot = f.ln();
        }
        t
    })
}

/// `ln(k!)` for non-negative integers.
pub fn ln_factorial(k: u64) -> f64 {
    match small_ln_factorials().get(k as usize) {
        Some(&v) => v,
        None => ln_gamma(k as f64 + 1.0),
    }
}

/// Digamma function ψ(x) = Γ'(x)/Γ(x) for `x > 0`.
pub fn digamma(x: f64) -> f64 {
    debug_assert!(x > 0.0, "digamma domain is x > 0, got {x}");
    let mut acc = 0.0;
    let mut y = x;
    while y < 10.0 {
        acc -= 1.0 / y;
        y += 1.0;
    }
    let r2 = 1.0 / (y * y);
    let series = r2
        * (1.0 / 12.0
            - r2 * (1.0 / 120.0
                - r2 * (1.0 / 252.0
                    - r2 * (1.0 / 240.0
                        - r2 * (1.0 / 132.0 - r2 * (691.0 / 32_760.0 - r2 / 12.0))))));
    acc + y.ln() - 0.5 / y - series
}

fn li2_series(x: f64) -> f64 {
    // |x| <= 1/2: the geometric factor bounds the tail.
    let mut sum = 0.0;
    let mut pow = x;
    let mut n = 1.0_f64;
    loop {
        let term = pow / (n * n);
        sum += term;
        if term.abs() <= 1e-18 * sum.abs().max(1e-300) || n > 200.0 {
            break;
        }
        pow *= x;
        n += 1.0;
    }
    sum
}

/// Dilogarithm `Li₂(x) = Σ xⁿ/n²` for real `x <= 1`.
pub fn li2(x: f64) -> f64 {
    debug_assert!(x <= 1.0, "li2 is real only for x <= 1, got {x}");
    if x == 1.0 {
        return PI * PI / 6.0;
    }
    if x == 0.0 {
        return 0.0;
    }
    if x > 0.5 {
        // Euler reflection.
        return PI * PI / 6.0 - x.ln() * (-x).ln_1p() - li2_series(1.0 - x);
    }
    if x >= -0.5 {
        return li2_series(x);
    }
    if x >= -1.0 {
        // Landen: maps [-1, -1/2) into [1/3, 1/2].
        let l = (-x).ln_1p();
        return -li2_series(x / (x - 1.0)) - 0.5 * l * l;
    }
    // Inversion for x < -1.
    let l = (-x).ln();
    -PI * PI / 6.0 - 0.5 * l * l - li2(1.0 / x)
}

/// `ln( x^a e^{-x} / Γ(a+1) )`, stable when `x ≈ a` and both are large.
fn ln_gamma_prefactor(a: f64, x: f64) -> f64 {
    if a < 10.0 {
        return a * x.ln() - x - ln_gamma(a + 1.0);
    }
    // a ln x - x - ln Γ(a+1) = -a φ(x/a) - ln sqrt(2π a) - tail(a)
    // with φ(λ) = λ - 1 - ln λ evaluated through ln_1p.
    let d = (x - a) / a;
    let phi = d - d.ln_1p();
    -a * phi - HALF_LN_2PI - 0.5 * a.ln() - stirling_tail(a)
}

/// Regularized lower incomplete gamma `P(a, x)`; `Q = 1 - P` is [`gamma_q`].
pub fn gamma_p(a: f64, x: f64) -> f64 {
    debug_assert!(a > 0.0 && x >= 0.0);
    if x == 0.0 {
        return 0.0;
    }
    if x < a + 1.0 {
        gamma_p_series(a, x)
    } else {
        1.0 - gamma_q_fraction(a, x)
    }
}

/// Regularized upper incomplete gamma `Q(a, x)`.
pub fn gamma_q(a: f64, x: f64) -> f64 {
    debug_assert!(a > 0.0 && x >= 0.0);
    if x == 0.0 {
        return 1.0;
    }
    if x < a + 1.0 {
        1.0 - gamma_p_series(a, x)
    } else {
        gamma_q_fraction(a, x)
    }
}

fn gamma_p_series(a: f64, x: f64) -> f64 {
    // P(a,x) = x^a e^{-x}/Γ(a+1) Σ_{n>=0} x^n / ((a+1)...(a+n))
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut denom = a;
    for _ in 0..10_000_000 {
        denom += 1.0;
        term *= x / denom;
        sum += term;
        if term < sum * 1e-17 {
            break;
        }
    }
    (ln_gamma_prefactor(a, x) + sum.ln()).exp().min(1.0)
}

fn gamma_q_fraction(a: f64, x: f64) -> f64 {
    // Modified Lentz on the continued fraction for Γ(a,x) e^x x^{-a}.
    const TINY: f64 = 1e-300;
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..100_000 {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    // x^a e^{-x}/Γ(a) = a · x^a e^{-x}/Γ(a+1)
    (ln_gamma_prefactor(a, x) + a.ln() + h.ln()).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn ln_gamma_known_values() {
        assert!(close(ln_gamma(1.0), 0.0, 1e-15));
        assert!(close(ln_gamma(2.0), 0.0, 1e-15));
        assert!(close(ln_gamma(0.5), 0.5 * PI.ln(), 1e-14));
        // 20! = 2432902008176640000
        assert!(close(ln_factorial(20), 2_432_902_008_176_640_000f64.ln(), 1e-14));
        // Direct product for a moderate factorial.
        let direct: f64 = (1..=170).map(|k| (k as f64).ln()).sum();
        assert!(close(ln_factorial(170), direct, 1e-13));
    }

    #[test]
    fn digamma_identities() {
        assert!(close(digamma(1.0), -EULER_GAMMA, 1e-14));
        assert!(close(digamma(2.0), 1.0 - EULER_GAMMA, 1e-14));
        assert!(close(digamma(3.0), 1.5 - EULER_GAMMA, 1e-14));
        assert!(close(digamma(0.5), -EULER_GAMMA - 2.0 * 2f64.ln(), 1e-14));
        // Recurrence ψ(x+1) = ψ(x) + 1/x across the switch point.
        for &x in &[0.3, 1.7, 9.5, 10.2, 55.0] {
            assert!(close(digamma(x + 1.0), digamma(x) + 1.0 / x, 1e-13));
        }
    }

    #[test]
    fn dilogarithm_identities() {
        assert!(close(li2(1.0), PI * PI / 6.0, 1e-15));
        assert!(close(li2(0.5), PI * PI / 12.0 - 0.5 * 2f64.ln().powi(2), 1e-15));
        assert!(close(li2(-1.0), -PI * PI / 12.0, 1e-15));
        // Continuity across the reflection switch.
        let below = li2(0.5 - 1e-12);
        let above = li2(0.5 + 1e-12);
        assert!((below - above).abs() < 1e-11);
        // Plain series at a point where it converges quickly.
        let x: f64 = 0.9;
        let brute: f64 = (1..5000).map(|n| x.powi(n) / (n * n) as f64).sum();
        assert!(close(li2(x), brute, 1e-14));
        let y: f64 = -3.0;
        // Li2(-3) reference value.
        assert!(close(li2(y), -1.939_375_420_766_708_8, 1e-14));
    }

    #[test]
    fn incomplete_gamma_small_integer_cases() {
        // P(1, x) = 1 - e^{-x}
        for &x in &[0.1, 1.0, 3.0, 20.0] {
            assert!(close(gamma_p(1.0, x), 1.0 - (-x).exp(), 1e-15));
        }
        // Q(3, x) = e^{-x}(1 + x + x^2/2)
        for &x in &[0.5f64, 2.0, 4.0, 9.0] {
            let exact = (-x).exp() * (1.0 + x + 0.5 * x * x);
            assert!(close(gamma_q(3.0, x), exact, 1e-14));
        }
    }

    #[test]
    fn incomplete_gamma_large_argument_against_poisson_sum() {
        // Q(k, x) = e^{-x} Σ_{n<k} x^n/n!, summed in log space.
        let k = 400u64;
        let x = 380.0f64;
        let lx = x.ln();
        let logs: Vec<f64> = (0..k).map(|n| n as f64 * lx - x - ln_factorial(n)).collect();
        let m = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let q: f64 = m.exp() * logs.iter().map(|l| (l - m).exp()).sum::<f64>();
        assert!(close(gamma_q(k as f64, x), q, 1e-12));
        // Q(k, k) -> 1/2 for large k.
        assert!((gamma_q(1e6, 1e6) - 0.5).abs() < 1e-3);
    }
}
