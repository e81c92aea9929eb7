use srg_core::oracle::{integrate_trees, integrate_unicycles, OdeConfig, TreeInput};
use srg_core::theory::{
    solve_s, theory_point, tree_density, u_small_srg_sub, uk_p0, unicycle_counts_classical,
};
use srg_core::Model;

use super::Context;
use crate::config::OracleKind;
use crate::error::{CliError, Result};
use crate::table::Table;

const DEFAULT_GRID: [f64; 4] = [0.5, 1.0, 1.5, 2.0];

pub fn theory(ctx: &Context) -> Result<()> {
    let s = &ctx.settings;
    let times = s.times(&DEFAULT_GRID)?;
    let mut table = Table::new(["t", "p", "s", "g", "c_total", "M2", "U", "E_over_N", "edge_ratio"]);
    for t in times {
        let pt = theory_point(t, s.p(), s.model())?;
        table.push(
            [pt.t, pt.p, pt.s, pt.g, pt.c_total, pt.m2, pt.u, pt.e_over_n, pt.edge_ratio]
                .into_iter()
                .map(Into::into)
                .collect(),
        );
    }
    ctx.sink().write("theory", &table, &[])?;
    Ok(())
}

/// Closed form against the truncated ODE, size by size.
pub fn oracle(ctx: &Context) -> Result<()> {
    let s = &ctx.settings;
    let (p, model) = (s.p(), s.model());
    let kind = s.kind.unwrap_or(OracleKind::Trees);
    let kmax = s.kmax.unwrap_or(400);
    let dt = s.dt.unwrap_or(1e-4);
    let mut k_check = s.k_check.unwrap_or(30);
    if k_check == 0 || k_check > kmax {
        return Err(CliError::Config(format!("k-check must lie in 1..={kmax}, got {k_check}")));
    }
    let cfg = OdeConfig::new(p, model, kmax, dt);
    let s_of_t = move |t: f64| solve_s(t, p).unwrap_or(f64::NAN);
    let mut notes = Vec::new();
    let (times, rows): (Vec<f64>, Vec<Vec<f64>>) = match kind {
        OracleKind::Trees => {
            let times = s.times(&[0.5, 0.9, 1.5, 2.0])?;
            let supercritical = model == Model::Simple && times.iter().any(|&t| t > 1.0);
            let input = supercritical.then_some(&s_of_t as &dyn Fn(f64) -> f64);
            if supercritical {
                notes.push("supercritical trees driven by the solved order parameter".into());
            }
            let traj = integrate_trees(cfg, &times, input)?;
            (times, traj.densities)
        }
        OracleKind::Unicycles => {
            let times = s.times(&[0.5, 0.9])?;
            if times.iter().any(|&t| t > 1.0) {
                return Err(CliError::Config("unicycle oracle covers t <= 1 only".into()));
            }
            if model == Model::Simple && p != 0.0 && k_check > 2 {
                notes.push("closed forms exist only for sizes 1 and 2 at this p".into());
                k_check = 2;
            }
            let traj = integrate_unicycles(cfg, &times, None, TreeInput::Integrated)?;
            (times, traj.unicycles)
        }
    };
    let mut table = Table::new(["t", "k", "closed_form", "ode_value", "abs_err", "max_abs_err"]);
    let mut worst = 0.0f64;
    for (t, ode) in times.iter().zip(&rows) {
        let closed = closed_forms(kind, model, p, *t, k_check)?;
        let errs: Vec<f64> = closed.iter().zip(ode).map(|(c, o)| (c - o).abs()).collect();
        let max = errs.iter().copied().fold(0.0, f64::max);
        worst = worst.max(max);
        for k in 0..k_check {
            table.push(vec![(*t).into(), (k + 1).into(), closed[k].into(), ode[k].into(), errs[k].into(), max.into()]);
        }
    }
    ctx.sink().write("oracle", &table, &notes)?;
    println!("max_abs_err {}", crate::table::format_num(worst));
    Ok(())
}

fn closed_forms(kind: OracleKind, model: Model, p: f64, t: f64, k_check: usize) -> Result<Vec<f64>> {
    let ks = 1..=k_check as u64;
    Ok(match (kind, model) {
        (OracleKind::Trees, _) => ks.map(|k| tree_density(k, t, p, model)).collect::<std::result::Result<_, _>>()?,
        (OracleKind::Unicycles, Model::Classical) => {
            let u = unicycle_counts_classical(t)?;
            ks.map(|k| u.size(k)).collect()
        }
        (OracleKind::Unicycles, Model::Simple) if p == 0.0 => {
            ks.map(|k| uk_p0(k, t)).collect::<std::result::Result<_, _>>()?
        }
        (OracleKind::Unicycles, Model::Simple) => {
            let u = u_small_srg_sub(t, p)?;
            vec![u.u1, u.u2][..k_check].to_vec()
        }
    })
}
