//! Adaptive Simpson quadrature and a safeguarded Newton/bisection root finder.

use super::TheoryError;

const MAX_DEPTH: u32 = 60;
const MAX_EVALS: usize = 20_000_000;

struct Simpson<'a, F: Fn(f64) -> f64> {
    f: &'a F,
    evals: usize,
    failed: bool,
}

impl<F: Fn(f64) -> f64> Simpson<'_, F> {
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        &mut self,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = (self.f)(lm);
        let frm = (self.f)(rm);
        self.evals += 2;
        let h = (b - a) / 12.0;
        let left = h * (fa + 4.0 * flm + fm);
        let right = h * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        if depth == 0 || self.evals > MAX_EVALS {
            self.failed = true;
            return left + right + delta / 15.0;
        }
        self.recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + self.recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
}

/// Integrates `f` over `[a, b]` to absolute tolerance `tol`.
///
/// The integrand is never evaluated at a point outside `[a, b]`; singular
/// endpoints must be handled by the caller (substitution or a finite limit).
pub fn adaptive_simpson<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<f64, TheoryError> {
    if a == b {
        return Ok(0.0);
    }
    // Split into a few panels first so that narrow features are not missed
    // by the initial five-point estimate.
    const PANELS: usize = 8;
    let width = (b - a) / PANELS as f64;
    let mut state = Simpson {
        f,
        evals: 0,
        failed: false,
    };
    let mut total = 0.0;
    for i in 0..PANELS {
        let lo = a + width * i as f64;
        let hi = if i + 1 == PANELS { b } else { lo + width };
        let mid = 0.5 * (lo + hi);
        let (flo, fmid, fhi) = (f(lo), f(mid), f(hi));
        state.evals += 3;
        let whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
        total += state.recurse(lo, hi, flo, fmid, fhi, whole, tol / PANELS as f64, MAX_DEPTH);
    }
    if state.failed {
        return Err(TheoryError::NonConvergence("adaptive quadrature budget exhausted"));
    }
    Ok(total)
}

/// Finds the root of an increasing function on a bracket `[lo, hi]` with
/// `f(lo) <= 0 <= f(hi)`, polishing with Newton steps when the derivative
/// keeps the iterate inside the bracket.
///
/// `f` returns `(value, derivative)`. Iteration stops once the bracket
/// width or the Newton step drops below `x_tol`.
pub fn newton_bisect<F>(f: F, mut lo: f64, mut hi: f64, x_tol: f64) -> Result<f64, TheoryError>
where
    F: Fn(f64) -> Result<(f64, f64), TheoryError>,
{
    let mut x = 0.5 * (lo + hi);
    for iter in 0..400 {
        let (v, dv) = f(x)?;
        if v == 0.0 {
            return Ok(x);
        }
        if v < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - v / dv;
        // Newton steps can stall on a noisy residual; fall back to pure
        // bisection after a fixed number of iterations.
        let next = if iter < 40 && dv > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        let step = (next - x).abs();
        x = next;
        if step <= x_tol || hi - lo <= x_tol {
            return Ok(x);
        }
    }
    Err(TheoryError::NonConvergence("root bracket did not shrink"))
}

/// Neumaier-compensated sum.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// `ln Σ exp(x_i)` without overflow.
pub fn log_sum_exp(logs: &[f64]) -> f64 {
    let m = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + compensated_sum(logs.iter().map(|l| (l - m).exp())).ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simpson_polynomial_and_smooth() {
        let v = adaptive_simpson(&|x: f64| x * x * x, 0.0, 2.0, 1e-12).unwrap();
        assert!((v - 4.0).abs() < 1e-12);
        let v = adaptive_simpson(&|x: f64| x.sin(), 0.0, std::f64::consts::PI, 1e-12).unwrap();
        assert!((v - 2.0).abs() < 1e-11);
    }

    #[test]
    fn simpson_handles_sqrt_endpoint() {
        let v = adaptive_simpson(&|x: f64| x.sqrt(), 0.0, 1.0, 1e-10).unwrap();
        assert!((v - 2.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn root_of_cubic() {
        let r = newton_bisect(|x| Ok((x * x * x - 2.0, 3.0 * x * x)), 0.0, 2.0, 1e-15).unwrap();
        assert!((r - 2f64.cbrt()).abs() < 1e-14);
    }

    #[test]
    fn log_sum_exp_matches_direct() {
        let xs = [0.1, -2.0, 3.5];
        let direct: f64 = xs.iter().map(|x: &f64| x.exp()).sum::<f64>().ln();
        assert!((log_sum_exp(&xs) - direct).abs() < 1e-14);
        assert!(log_sum_exp(&[1000.0, 1000.0]) - (1000.0 + 2f64.ln()) < 1e-12);
    }
}
