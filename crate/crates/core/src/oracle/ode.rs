//! Fixed-step RK4 integration of the truncated rate equations for tree
//! densities `c_k` and average unicycle numbers `U_k`, `k <= kmax`.
//!
//! Both hierarchies are lower triangular in `k`, so cutting them at `kmax`
//! leaves the equations for `k <= kmax` exact; the only effect of the cut is
//! mass leaving the window, which is integrated alongside as a diagnostic.

use super::OracleError;
use crate::theory::tree_densities;
use crate::Model;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeConfig {
    pub p: f64,
    pub model: Model,
    pub kmax: usize,
    pub dt: f64,
    /// Largest tolerated tree mass that left the window while subcritical.
    pub max_truncation_loss: f64,
    /// Skips the step-size cap; only convergence tests need coarse steps.
    pub(crate) coarse_steps: bool,
}

impl OdeConfig {
    pub fn new(p: f64, model: Model, kmax: usize, dt: f64) -> Self {
        Self {
            p,
            model,
            kmax,
            dt,
            max_truncation_loss: 0.1,
            coarse_steps: false,
        }
    }

    fn validate(&self) -> Result<(), OracleError> {
        if self.kmax < 2 {
            return Err(OracleError::InvalidConfig(format!("kmax must be >= 2, got {}", self.kmax)));
        }
        if !(self.dt > 0.0 && (self.dt <= 1e-3 || self.coarse_steps)) {
            return Err(OracleError::InvalidConfig(format!(
                "step must lie in (0, 1e-3], got {}",
                self.dt
            )));
        }
        if !(self.p >= 0.0) || !self.p.is_finite() {
            return Err(OracleError::InvalidConfig(format!("invalid p = {}", self.p)));
        }
        Ok(())
    }
}

/// Where the unicycle equations take their tree densities from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeInput {
    /// Integrate the tree hierarchy alongside.
    Integrated,
    /// Evaluate the closed-form densities at every stage.
    ClosedForm,
}

/// Externally supplied unicycle mass `s(t)` for supercritical simple runs.
pub type OrderParameter<'a> = &'a dyn Fn(f64) -> f64;

/// State of the truncated hierarchy at one time.
pub struct TruncatedSystem<'a> {
    cfg: OdeConfig,
    s_input: Option<OrderParameter<'a>>,
    trees: TreeInput,
    unicycles: bool,
    t: f64,
    /// `[c_1..c_K, U_1..U_K (if tracked), leaked mass]`
    y: Vec<f64>,
    stages: [Vec<f64>; 4],
    tmp: Vec<f64>,
    a: Vec<f64>,
    b: Vec<f64>,
}

/// Recorded densities at requested times.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    /// `densities[n][k-1] = c_k(times[n])`
    pub densities: Vec<Vec<f64>>,
    /// `unicycles[n][k-1] = U_k(times[n])`; empty rows unless requested.
    pub unicycles: Vec<Vec<f64>>,
    pub truncation_loss: Vec<f64>,
}

impl<'a> TruncatedSystem<'a> {
    /// All mass in monomers, no unicycles.
    pub fn new(
        cfg: OdeConfig,
        s_input: Option<OrderParameter<'a>>,
        trees: TreeInput,
        unicycles: bool,
    ) -> Result<Self, OracleError> {
        cfg.validate()?;
        let k = cfg.kmax;
        let len = k + if unicycles { k } else { 0 } + 1;
        let mut y = vec![0.0; len];
        y[0] = 1.0;
        Ok(Self {
            cfg,
            s_input,
            trees,
            unicycles,
            t: 0.0,
            y,
            stages: std::array::from_fn(|_| vec![0.0; len]),
            tmp: vec![0.0; len],
            a: vec![0.0; k + 1],
            b: vec![0.0; k + 1],
        })
    }

    pub fn time(&self) -> f64 {
        self.t
    }

    /// `c_k` at index `k-1`.
    pub fn densities(&self) -> Vec<f64> {
        match self.trees {
            TreeInput::Integrated => self.y[..self.cfg.kmax].to_vec(),
            TreeInput::ClosedForm => self.closed_form(self.t),
        }
    }

    /// `U_k` at index `k-1`; empty if unicycles are not tracked.
    pub fn unicycles(&self) -> &[f64] {
        if self.unicycles {
            &self.y[self.cfg.kmax..2 * self.cfg.kmax]
        } else {
            &[]
        }
    }

    /// Tree mass that left the window `k <= kmax` while `t <= 1`.
    pub fn truncation_loss(&self) -> f64 {
        self.y[self.y.len() - 1]
    }

    /// `Σ_{k<=kmax} k c_k`.
    pub fn window_mass(&self) -> f64 {
        self.densities()
            .iter()
            .enumerate()
            .map(|(i, c)| (i + 1) as f64 * c)
            .sum()
    }

    fn closed_form(&self, t: f64) -> Vec<f64> {
        tree_densities(self.cfg.kmax as u64, t, self.cfg.p, self.cfg.model)
            .expect("closed-form densities were validated before stepping")
    }

    fn order_parameter(&self, t: f64) -> f64 {
        match (self.cfg.model, self.s_input) {
            (Model::Classical, _) => 0.0,
            _ if t <= 1.0 => 0.0,
            (Model::Simple, Some(s)) => s(t),
            (Model::Simple, None) => unreachable!("checked in advance_to"),
        }
    }

    /// Steps to exactly `t_target` with equal steps no longer than `dt`.
    pub fn advance_to(&mut self, t_target: f64) -> Result<(), OracleError> {
        if !(t_target >= self.t) {
            return Err(OracleError::InvalidConfig(format!(
                "cannot integrate back from {} to {t_target}",
                self.t
            )));
        }
        if self.cfg.model == Model::Simple && t_target > 1.0 && self.s_input.is_none() {
            return Err(OracleError::MissingOrderParameter);
        }
        if self.trees == TreeInput::ClosedForm {
            tree_densities(1, t_target, self.cfg.p, self.cfg.model)?;
        }
        let span = t_target - self.t;
        if span == 0.0 {
            return Ok(());
        }
        let n = (span / self.cfg.dt - 1e-9).ceil().max(1.0) as usize;
        let h = span / n as f64;
        let t0 = self.t;
        for i in 0..n {
            let t = t0 + i as f64 * h;
            self.rk4_step(t, h);
            self.t = if i + 1 == n { t_target } else { t0 + (i + 1) as f64 * h };
            if self.t <= 1.0 && self.truncation_loss() > self.cfg.max_truncation_loss {
                return Err(OracleError::TruncationExceeded {
                    t: self.t,
                    loss: self.truncation_loss(),
                });
            }
        }
        Ok(())
    }

    fn rk4_step(&mut self, t: f64, h: f64) {
        let len = self.y.len();
        let mut stages = std::mem::take(&mut self.stages);
        let mut tmp = std::mem::take(&mut self.tmp);
        let y = std::mem::take(&mut self.y);
        self.rhs(t, &y, &mut stages[0]);
        for i in 0..len {
            tmp[i] = y[i] + 0.5 * h * stages[0][i];
        }
        self.rhs(t + 0.5 * h, &tmp, &mut stages[1]);
        for i in 0..len {
            tmp[i] = y[i] + 0.5 * h * stages[1][i];
        }
        self.rhs(t + 0.5 * h, &tmp, &mut stages[2]);
        for i in 0..len {
            tmp[i] = y[i] + h * stages[2][i];
        }
        self.rhs(t + h, &tmp, &mut stages[3]);
        let mut y = y;
        for i in 0..len {
            y[i] += h / 6.0
                * (stages[0][i] + 2.0 * stages[1][i] + 2.0 * stages[2][i] + stages[3][i]);
        }
        self.y = y;
        self.stages = stages;
        self.tmp = tmp;
    }

    fn rhs(&mut self, t: f64, y: &[f64], dy: &mut [f64]) {
        let kmax = self.cfg.kmax;
        let p = self.cfg.p;
        let s = self.order_parameter(t);
        let (tree_loss, glue_rate, uni_loss) = match self.cfg.model {
            Model::Classical => (1.0, 1.0, 1.0),
            Model::Simple => (1.0 - (1.0 - p) * s, p, 1.0 - s),
        };
        let closed;
        let c: &[f64] = match self.trees {
            TreeInput::Integrated => &y[..kmax],
            TreeInput::ClosedForm => {
                closed = self.closed_form(t);
                &closed
            }
        };
        // a[k] = k c_k, 1-based.
        let a = &mut self.a;
        a[0] = 0.0;
        for k in 1..=kmax {
            a[k] = k as f64 * c[k - 1];
        }
        match self.trees {
            TreeInput::Integrated => {
                for k in 1..=kmax {
                    let mut conv = 0.0;
                    let mut i = 1;
                    while 2 * i < k {
                        conv += a[i] * a[k - i];
                        i += 1;
                    }
                    if k % 2 == 0 {
                        conv += 0.5 * a[k / 2] * a[k / 2];
                    }
                    dy[k - 1] = conv - k as f64 * c[k - 1] * tree_loss;
                }
            }
            TreeInput::ClosedForm => dy[..kmax].fill(0.0),
        }
        if self.unicycles {
            let b = &mut self.b;
            b[0] = 0.0;
            for k in 1..=kmax {
                b[k] = k as f64 * y[kmax + k - 1];
            }
            for k in 1..=kmax {
                let kf = k as f64;
                let mut conv = 0.0;
                for i in 1..k {
                    conv += b[i] * a[k - i];
                }
                dy[kmax + k - 1] =
                    0.5 * kf * kf * c[k - 1] + glue_rate * conv - glue_rate * kf * y[kmax + k - 1] * uni_loss;
            }
        }
        // Mass leaving the window:
        // Σ_{i+j>K} i a_i a_j + M2_K (1 - M1_K), counted while subcritical.
        let last = dy.len() - 1;
        dy[last] = if t <= 1.0 {
            let m1: f64 = a.iter().sum();
            let m2: f64 = a.iter().enumerate().map(|(i, x)| i as f64 * x).sum();
            let mut suffix = 0.0;
            let mut cross = 0.0;
            // suffix = Σ_{j >= K-i+1} a_j while i runs upward.
            for i in 1..=kmax {
                suffix += a[kmax - i + 1];
                cross += i as f64 * a[i] * suffix;
            }
            cross + m2 * (1.0 - m1)
        } else {
            0.0
        };
    }
}

fn record(
    mut sys: TruncatedSystem<'_>,
    times: &[f64],
) -> Result<Trajectory, OracleError> {
    let mut out = Trajectory {
        times: times.to_vec(),
        densities: Vec::with_capacity(times.len()),
        unicycles: Vec::with_capacity(times.len()),
        truncation_loss: Vec::with_capacity(times.len()),
    };
    for &t in times {
        sys.advance_to(t)?;
        out.densities.push(sys.densities());
        out.unicycles.push(sys.unicycles().to_vec());
        out.truncation_loss.push(sys.truncation_loss());
    }
    Ok(out)
}

/// Tree densities at the given increasing times.
pub fn integrate_trees(
    cfg: OdeConfig,
    times: &[f64],
    s_input: Option<OrderParameter<'_>>,
) -> Result<Trajectory, OracleError> {
    record(TruncatedSystem::new(cfg, s_input, TreeInput::Integrated, false)?, times)
}

/// Unicycle numbers (and the tree densities that drive them) at the given
/// increasing times.
pub fn integrate_unicycles(
    cfg: OdeConfig,
    times: &[f64],
    s_input: Option<OrderParameter<'_>>,
    trees: TreeInput,
) -> Result<Trajectory, OracleError> {
    record(TruncatedSystem::new(cfg, s_input, trees, true)?, times)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cayley(k: usize, t: f64) -> f64 {
        crate::theory::tree_density(k as u64, t, 0.0, Model::Classical).unwrap()
    }

    #[test]
    fn initial_condition() {
        let sys = TruncatedSystem::new(
            OdeConfig::new(0.5, Model::Simple, 10, 1e-3),
            None,
            TreeInput::Integrated,
            true,
        )
        .unwrap();
        assert_eq!(sys.densities()[0], 1.0);
        assert!(sys.unicycles().iter().all(|&u| u == 0.0));
    }

    #[test]
    fn short_run_matches_cayley_form() {
        let traj =
            integrate_trees(OdeConfig::new(0.3, Model::Simple, 60, 1e-3), &[0.5], None).unwrap();
        for k in 1..=10 {
            let got = traj.densities[0][k - 1];
            assert!((got - cayley(k, 0.5)).abs() < 1e-11, "k={k}");
        }
    }

    #[test]
    fn fourth_order_convergence() {
        let err = |dt: f64| {
            let mut cfg = OdeConfig::new(1.0, Model::Classical, 20, dt);
            cfg.coarse_steps = true;
            let traj = integrate_trees(cfg, &[0.8], None).unwrap();
            (1..=5)
                .map(|k| (traj.densities[0][k - 1] - cayley(k, 0.8)).abs())
                .fold(0.0, f64::max)
        };
        let coarse = err(0.1);
        let fine = err(0.05);
        assert!((coarse / fine - 16.0).abs() < 2.0, "{coarse} / {fine}");
    }

    #[test]
    fn leak_accounts_for_window_mass() {
        let mut sys = TruncatedSystem::new(
            OdeConfig::new(1.0, Model::Classical, 40, 1e-3),
            None,
            TreeInput::Integrated,
            false,
        )
        .unwrap();
        sys.advance_to(0.9).unwrap();
        assert!(sys.truncation_loss() > 1e-3);
        assert!((sys.window_mass() + sys.truncation_loss() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn truncation_bound_and_missing_s() {
        let mut cfg = OdeConfig::new(1.0, Model::Classical, 5, 1e-3);
        cfg.max_truncation_loss = 1e-3;
        let r = integrate_trees(cfg, &[0.9], None);
        assert!(matches!(r, Err(OracleError::TruncationExceeded { .. })));
        let r = integrate_trees(OdeConfig::new(0.5, Model::Simple, 5, 1e-3), &[1.5], None);
        assert!(matches!(r, Err(OracleError::MissingOrderParameter)));
        assert!(integrate_trees(OdeConfig::new(0.5, Model::Simple, 5, 1e-2), &[0.5], None).is_err());
    }
}
