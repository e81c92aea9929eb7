use std::collections::BTreeMap;

use srg_core::ensemble::{grid_stats, simulate_grid, SNAPSHOT_OBSERVABLES};
use srg_core::{Model, ProcessParams, Snapshot, StopCondition};

use super::Context;
use crate::config::Settings;
use crate::error::Result;
use crate::table::{Cell, Table};

const DEFAULT_GRID: [f64; 4] = [0.5, 1.0, 1.5, 2.0];

/// Process template stopping at the last grid time.
pub fn process_params(s: &Settings, t_end: f64) -> Result<ProcessParams> {
    let n = s.n_vertices();
    let base = match s.model() {
        Model::Classical => ProcessParams::classical(n, t_end),
        Model::Simple => ProcessParams::simple(n, s.p()).with_stop(StopCondition::AtTime(t_end)),
    };
    let sampler = s.sampler.unwrap_or(base.sampler);
    let params = base
        .with_sampler(sampler)
        .with_rate_mode(Settings::flag(s.rate_mode))
        .with_cycles(Settings::flag(s.track_cycles));
    params.validate()?;
    Ok(params)
}

fn run(ctx: &Context, min_runs: usize) -> Result<(ProcessParams, Vec<f64>, Vec<Vec<Snapshot>>)> {
    let s = &ctx.settings;
    let times = s.times(&DEFAULT_GRID)?;
    let n_runs = s.require_runs(min_runs)?;
    let params = process_params(s, *times.last().expect("non-empty grid"))?;
    let runs = simulate_grid(&params, &times, n_runs, s.seed())?;
    Ok((params, times, runs))
}

pub fn simulate(ctx: &Context) -> Result<()> {
    let (_, _, runs) = run(ctx, 1)?;
    let mut cols = vec!["t".to_owned(), "n_runs".to_owned()];
    for name in SNAPSHOT_OBSERVABLES {
        cols.push(format!("{name}_mean"));
        cols.push(format!("{name}_err"));
    }
    cols.push("v".to_owned());
    let mut table = Table::new(cols);
    for st in grid_stats(&runs) {
        let mut row: Vec<Cell> = vec![st.t.into(), st.n_runs.into()];
        for (_, sum) in &st.observables {
            row.push(sum.mean.into());
            row.push(sum.std_err.into());
        }
        row.push(st.v.into());
        table.push(row);
    }
    ctx.sink().write("simulate", &table, &[])?;
    if Settings::flag(ctx.settings.histograms) {
        ctx.sink().write("simulate_hist", &histograms(&runs), &[])?;
    }
    Ok(())
}

/// Mean count per run of trees, unicycles, cycles and bare cycles by size.
fn histograms(runs: &[Vec<Snapshot>]) -> Table {
    let mut table = Table::new(["t", "kind", "size", "mean_count"]);
    let n_runs = runs.len() as f64;
    for j in 0..runs.first().map_or(0, Vec::len) {
        let kinds: [(&str, fn(&Snapshot) -> &BTreeMap<u32, u64>); 4] = [
            ("tree", |s| &s.tree_hist),
            ("unicycle", |s| &s.uni_hist),
            ("cycle", |s| &s.cycle_hist),
            ("ring", |s| &s.ring_hist),
        ];
        for (kind, hist) in kinds {
            let mut total: BTreeMap<u32, u64> = BTreeMap::new();
            for r in runs {
                for (&k, &c) in hist(&r[j]) {
                    *total.entry(k).or_insert(0) += c;
                }
            }
            for (k, c) in total {
                table.push(vec![runs[0][j].t.into(), kind.into(), (k as u64).into(), (c as f64 / n_runs).into()]);
            }
        }
    }
    table
}

/// Tree-count fluctuations `v(t) = sd(T)/sqrt(N)`.
pub fn fluct(ctx: &Context) -> Result<()> {
    let (params, _, runs) = run(ctx, 100)?;
    let frozen = params.model == Model::Simple && params.gluing_p == 0.0;
    let mut table = Table::new(["t", "n_runs", "n_trees_mean", "n_trees_sd", "v", "caveat"]);
    for st in grid_stats(&runs) {
        let trees = st.get("n_trees").expect("tree count observable");
        let caveat = frozen && st.t > 1.0;
        table.push(vec![
            st.t.into(),
            st.n_runs.into(),
            trees.mean.into(),
            trees.std_dev().into(),
            st.v.into(),
            (caveat as u64).into(),
        ]);
    }
    let mut notes = Vec::new();
    if frozen {
        notes.push(
            "caveat = 1: frozen-unicycle regime, the size scaling of v is unknown; values are reported, not predicted"
                .to_owned(),
        );
    }
    ctx.sink().write("fluct", &table, &notes)?;
    Ok(())
}
