use std::path::{Path, PathBuf};

use clap::Args;
use serde::Serialize;
use srg_core::ensemble::z_score;

use super::Context;
use crate::error::{CliError, Result};
use crate::table::{ReadTable, Table};

const Z_MAX: f64 = 3.0;

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    /// Ensemble table, e.g. simulate.csv
    #[arg(long)]
    pub sim: PathBuf,
    /// Reference table, e.g. theory.csv
    #[arg(long)]
    pub theory: PathBuf,
    /// Restrict to these observables
    #[arg(long, value_delimiter = ',')]
    pub only: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub observable: String,
    pub t: f64,
    pub z: f64,
    pub pass: bool,
}

const KEY_COLUMNS: [&str; 3] = ["t", "n_runs", "N"];

/// Observable name -> (value column, error column).
fn observables(t: &ReadTable) -> Vec<(String, usize, Option<usize>)> {
    t.columns
        .iter()
        .enumerate()
        .filter(|(_, c)| !KEY_COLUMNS.contains(&c.as_str()) && !c.ends_with("_err"))
        .map(|(i, c)| {
            let name = c.strip_suffix("_mean").unwrap_or(c).to_owned();
            let err = t.index(&format!("{name}_err"));
            (name, i, err)
        })
        .collect()
}

fn read(path: &Path) -> Result<(ReadTable, Vec<u8>, usize)> {
    let (t, bytes) = ReadTable::read(path)?;
    let key = t
        .index("t")
        .ok_or_else(|| CliError::Schema(format!("{}: no t column", path.display())))?;
    Ok((t, bytes, key))
}

fn same_time(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
}

pub fn compare(ctx: &Context, args: &CompareArgs) -> Result<()> {
    let (sim, sim_bytes, sim_t) = read(&args.sim)?;
    let (theory, theory_bytes, theory_t) = read(&args.theory)?;
    let reference: Vec<(String, usize, Option<usize>)> = observables(&theory);
    let pairs: Vec<_> = observables(&sim)
        .into_iter()
        .filter_map(|(name, i, ei)| {
            let (_, j, ej) = reference.iter().find(|(n, _, _)| *n == name)?;
            Some((name, i, ei, *j, *ej))
        })
        .filter(|(name, ..)| args.only.as_ref().map_or(true, |o| o.contains(name)))
        .collect();
    if pairs.is_empty() {
        return Err(CliError::Schema("no observable appears in both tables".into()));
    }

    let mut verdicts = Vec::new();
    let mut table = Table::new(["observable", "t", "sim", "sim_err", "reference", "reference_err", "z", "pass"]);
    for r in 0..sim.rows.len() {
        let t = sim.num(r, sim_t)?;
        let Some(q) = (0..theory.rows.len()).find(|&q| theory.num(q, theory_t).is_ok_and(|u| same_time(t, u))) else {
            continue;
        };
        for (name, i, ei, j, ej) in &pairs {
            let err = |tab: &ReadTable, row, col: &Option<usize>| col.map_or(Ok(0.0), |c| tab.num(row, c));
            let (a, ea) = (sim.num(r, *i)?, err(&sim, r, ei)?);
            let (b, eb) = (theory.num(q, *j)?, err(&theory, q, ej)?);
            if !a.is_finite() || !b.is_finite() {
                continue;
            }
            let z = z_score(a, ea, b, eb);
            let pass = z.abs() <= Z_MAX;
            table.push(vec![
                name.as_str().into(),
                t.into(),
                a.into(),
                ea.into(),
                b.into(),
                eb.into(),
                z.into(),
                (pass as u64).into(),
            ]);
            verdicts.push(Verdict {
                observable: name.clone(),
                t,
                z,
                pass,
            });
        }
    }
    if verdicts.is_empty() {
        return Err(CliError::Schema("the tables share no time points".into()));
    }

    let mut sink = ctx.sink();
    sink.inputs = [sink.inputs.as_slice(), &sim_bytes, &theory_bytes].concat();
    sink.write("compare", &table, &[format!("pass iff |z| <= {Z_MAX}")])?;
    let path = ctx.out_dir.join("compare_verdict.json");
    std::fs::write(&path, serde_json::to_string_pretty(&verdicts).expect("verdicts serialize"))
        .map_err(|e| CliError::io(&path, e))?;
    let failed = verdicts.iter().filter(|v| !v.pass).count();
    for v in &verdicts {
        println!("{} {} t={} z={:+.3}", if v.pass { "PASS" } else { "FAIL" }, v.observable, v.t, v.z);
    }
    if failed > 0 {
        return Err(CliError::ComparisonFailed(failed));
    }
    Ok(())
}
