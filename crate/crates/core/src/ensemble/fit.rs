//! Least-squares scaling fits of an observable against system size `N`.

use serde::Serialize;

/// Functional form of a fit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FitForm {
    /// `y = A N^b`
    PowerLaw,
    /// `y = A N^b (ln N)^β` with `β` held fixed.
    PowerLawFixedLog,
    /// `y = A N^b (ln N)^β` with `β` fitted.
    PowerLawLog,
    /// `y = A + b ln N`
    LinearInLog,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingFit {
    pub form: FitForm,
    /// Power-law exponent, or the slope against `ln N` for [`FitForm::LinearInLog`].
    pub exponent: f64,
    pub exponent_se: f64,
    pub log_exponent: Option<f64>,
    /// `A` (the intercept for [`FitForm::LinearInLog`]).
    pub amplitude: f64,
    /// Residuals in the fitted (transformed) variable.
    pub residuals: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FitError {
    #[error("need at least {need} distinct sizes, got {got}")]
    TooFewSizes { need: usize, got: usize },
    #[error("observable must be positive for a power-law fit")]
    NonPositive,
    #[error("singular design matrix")]
    Singular,
}

fn distinct(ns: &[f64]) -> usize {
    let mut v = ns.to_vec();
    v.sort_by(f64::total_cmp);
    v.dedup();
    v.len()
}

/// Ordinary least squares `y ≈ X β` via the normal equations, for up to
/// three regressors. Returns coefficients, their standard errors and
/// residuals.
fn least_squares(x: &[Vec<f64>], y: &[f64]) -> Result<(Vec<f64>, Vec<f64>, Vec<f64>), FitError> {
    let m = x[0].len();
    let n = y.len();
    let mut a = vec![vec![0.0; m + 1]; m];
    for (row, &yi) in x.iter().zip(y) {
        for i in 0..m {
            for j in 0..m {
                a[i][j] += row[i] * row[j];
            }
            a[i][m] += row[i] * yi;
        }
    }
    let gram: Vec<Vec<f64>> = a.iter().map(|r| r[..m].to_vec()).collect();
    let coef = solve(a)?;
    let residuals: Vec<f64> = x
        .iter()
        .zip(y)
        .map(|(row, &yi)| yi - row.iter().zip(&coef).map(|(r, c)| r * c).sum::<f64>())
        .collect();
    let dof = n.saturating_sub(m);
    let sigma2 = if dof > 0 {
        residuals.iter().map(|r| r * r).sum::<f64>() / dof as f64
    } else {
        f64::NAN
    };
    let mut se = Vec::with_capacity(m);
    for i in 0..m {
        let mut aug: Vec<Vec<f64>> = gram.clone();
        for (r, row) in aug.iter_mut().enumerate() {
            row.push(if r == i { 1.0 } else { 0.0 });
        }
        let col = solve(aug)?;
        se.push((sigma2 * col[i]).sqrt());
    }
    Ok((coef, se, residuals))
}

/// Gaussian elimination with partial pivoting on an augmented matrix.
fn solve(mut a: Vec<Vec<f64>>) -> Result<Vec<f64>, FitError> {
    let m = a.len();
    for col in 0..m {
        let piv = (col..m)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        let scale = a.iter().map(|r| r[col].abs()).fold(0.0, f64::max);
        if a[piv][col].abs() <= 1e-12 * scale.max(f64::MIN_POSITIVE) {
            return Err(FitError::Singular);
        }
        a.swap(col, piv);
        for r in col + 1..m {
            let f = a[r][col] / a[col][col];
            for c in col..=m {
                a[r][c] -= f * a[col][c];
            }
        }
    }
    let mut x = vec![0.0; m];
    for r in (0..m).rev() {
        let s: f64 = (r + 1..m).map(|c| a[r][c] * x[c]).sum();
        x[r] = (a[r][m] - s) / a[r][r];
    }
    Ok(x)
}

fn check(ns: &[f64], ys: &[f64], need: usize, positive: bool) -> Result<(), FitError> {
    assert_eq!(ns.len(), ys.len());
    let got = distinct(ns);
    if got < need {
        return Err(FitError::TooFewSizes { need, got });
    }
    if positive && ys.iter().any(|&y| !(y > 0.0)) {
        return Err(FitError::NonPositive);
    }
    Ok(())
}

pub fn fit_power_law(ns: &[f64], ys: &[f64]) -> Result<ScalingFit, FitError> {
    check(ns, ys, 3, true)?;
    let x: Vec<Vec<f64>> = ns.iter().map(|n| vec![1.0, n.ln()]).collect();
    let y: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let (c, se, residuals) = least_squares(&x, &y)?;
    Ok(ScalingFit {
        form: FitForm::PowerLaw,
        exponent: c[1],
        exponent_se: se[1],
        log_exponent: None,
        amplitude: c[0].exp(),
        residuals,
    })
}

pub fn fit_power_law_fixed_log(ns: &[f64], ys: &[f64], beta: f64) -> Result<ScalingFit, FitError> {
    check(ns, ys, 3, true)?;
    let x: Vec<Vec<f64>> = ns.iter().map(|n| vec![1.0, n.ln()]).collect();
    let y: Vec<f64> = ns
        .iter()
        .zip(ys)
        .map(|(n, y)| y.ln() - beta * n.ln().ln())
        .collect();
    let (c, se, residuals) = least_squares(&x, &y)?;
    Ok(ScalingFit {
        form: FitForm::PowerLawFixedLog,
        exponent: c[1],
        exponent_se: se[1],
        log_exponent: Some(beta),
        amplitude: c[0].exp(),
        residuals,
    })
}

/// Three-parameter fit; needs four distinct sizes to leave a residual
/// degree of freedom, three to be determined.
pub fn fit_power_law_log(ns: &[f64], ys: &[f64]) -> Result<ScalingFit, FitError> {
    check(ns, ys, 3, true)?;
    let x: Vec<Vec<f64>> = ns.iter().map(|n| vec![1.0, n.ln(), n.ln().ln()]).collect();
    let y: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let (c, se, residuals) = least_squares(&x, &y)?;
    Ok(ScalingFit {
        form: FitForm::PowerLawLog,
        exponent: c[1],
        exponent_se: se[1],
        log_exponent: Some(c[2]),
        amplitude: c[0].exp(),
        residuals,
    })
}

pub fn fit_linear_in_log(ns: &[f64], ys: &[f64]) -> Result<ScalingFit, FitError> {
    check(ns, ys, 3, false)?;
    let x: Vec<Vec<f64>> = ns.iter().map(|n| vec![1.0, n.ln()]).collect();
    let (c, se, residuals) = least_squares(&x, ys)?;
    Ok(ScalingFit {
        form: FitForm::LinearInLog,
        exponent: c[1],
        exponent_se: se[1],
        log_exponent: None,
        amplitude: c[0],
        residuals,
    })
}
