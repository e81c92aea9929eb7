use srg_core::ensemble::{
    derive_seed, fit_linear_in_log, fit_power_law, fit_power_law_fixed_log, fit_power_law_log,
    jam_ensemble, jam_stats, kappa_histogram, FitError, FitForm, ScalingFit, JAM_OBSERVABLES,
};
use srg_core::{Model, ProcessParams, Sampler};

use super::Context;
use crate::config::Settings;
use crate::error::{CliError, Result};
use crate::table::{Cell, Table};

const DEFAULT_SIZES: [usize; 3] = [1_000, 10_000, 100_000];

fn form_name(form: FitForm) -> &'static str {
    match form {
        FitForm::PowerLaw => "power_law",
        FitForm::PowerLawFixedLog => "power_law_fixed_log",
        FitForm::PowerLawLog => "power_law_log",
        FitForm::LinearInLog => "linear_in_log",
    }
}

pub fn jam_scan(ctx: &Context) -> Result<()> {
    let s = &ctx.settings;
    if s.model() != Model::Simple {
        return Err(CliError::Config("jam-scan needs the simple model".into()));
    }
    let sizes = s.sizes.clone().unwrap_or_else(|| DEFAULT_SIZES.to_vec());
    if sizes.is_empty() {
        return Err(CliError::Config("size list is empty".into()));
    }
    let n_runs = s.require_runs(1)?;
    let bin_width = s.kappa_bin_width.unwrap_or(0.01);
    if !(bin_width > 0.0 && bin_width <= 1.0) {
        return Err(CliError::Config(format!("bin width must lie in (0, 1], got {bin_width}")));
    }
    let p = s.p();

    let mut cols = vec!["N".to_owned(), "n_runs".to_owned()];
    for name in JAM_OBSERVABLES {
        cols.push(format!("{name}_mean"));
        cols.push(format!("{name}_err"));
    }
    let mut table = Table::new(cols);
    let mut hist = Table::new(["N", "kappa_lo", "count", "density"]);
    let (mut t_means, mut u_means) = (Vec::new(), Vec::new());
    for (i, &n) in sizes.iter().enumerate() {
        let params = ProcessParams::simple(n, p)
            .with_sampler(s.sampler.unwrap_or(Sampler::EventDriven))
            .with_rate_mode(Settings::flag(s.rate_mode))
            .with_cycles(Settings::flag(s.track_cycles));
        params.validate()?;
        let seed = derive_seed(s.seed(), i as u64);
        let reports = jam_ensemble(&params, n_runs, seed)?;
        let stats = jam_stats(&reports);
        let mut row: Vec<Cell> = vec![n.into(), n_runs.into()];
        for (_, sum) in &stats {
            row.push(sum.mean.into());
            row.push(sum.std_err.into());
        }
        table.push(row);
        t_means.push(stats[0].1.mean);
        u_means.push(stats[1].1.mean);
        for (lo, count) in kappa_histogram(&reports, bin_width) {
            let density = count as f64 / (n_runs as f64 * bin_width);
            hist.push(vec![n.into(), lo.into(), count.into(), density.into()]);
        }
    }

    let ns: Vec<f64> = sizes.iter().map(|&n| n as f64).collect();
    let mut fits = Table::new(["observable", "form", "exponent", "exponent_se", "log_exponent", "amplitude"]);
    let mut notes = Vec::new();
    let mut add = |name: &str, fit: std::result::Result<ScalingFit, FitError>| match fit {
        Ok(f) => fits.push(vec![
            name.into(),
            form_name(f.form).into(),
            f.exponent.into(),
            f.exponent_se.into(),
            f.log_exponent.unwrap_or(f64::NAN).into(),
            f.amplitude.into(),
        ]),
        Err(e) => notes.push(format!("{name}: {e}")),
    };
    if p > 0.0 {
        add("t_jam", fit_linear_in_log(&ns, &t_means));
        add("u_jam", fit_linear_in_log(&ns, &u_means));
    } else {
        add("t_jam", fit_power_law(&ns, &t_means));
        add("t_jam", fit_power_law_log(&ns, &t_means));
        add("u_jam", fit_power_law(&ns, &u_means));
        add("u_jam", fit_power_law_log(&ns, &u_means));
        add("u_jam", fit_power_law_fixed_log(&ns, &u_means, 2.0 / 3.0));
        notes.push("p = 0 fits are reported only; the jamming-time scaling is an open question".into());
    }

    let sink = ctx.sink();
    sink.write("jam_scan", &table, &[])?;
    sink.write("jam_kappa_hist", &hist, &[])?;
    sink.write("jam_fits", &fits, &notes)?;
    Ok(())
}
