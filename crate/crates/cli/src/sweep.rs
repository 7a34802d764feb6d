use clap::Args;
use rayon::prelude::*;
use wexp_core::constructions::build_core;
use wexp_core::metrics::expansion_report;
use wexp_core::radiosim::{experiment_lower_bound, ProtocolKind};
use wexp_core::random::gnp;
use wexp_core::spokesman::{oracle_exact, select_best, ORACLE_CAP};
use wexp_core::{BipartiteInstance, Ratio};

use crate::error::CliError;
use crate::output::{csv_doc, json_doc, Format, Output};
use crate::Ctx;

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// spokesman-core | broadcast | relations
    #[arg(long)]
    pub experiment: String,
    /// `key=v1,v2;key2=w1,w2`, expanded as a cross product
    #[arg(long)]
    pub grid: String,
}

type Grid = Vec<(String, Vec<String>)>;

pub fn parse_grid(text: &str) -> Result<Grid, CliError> {
    let mut grid = Vec::new();
    for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, vs) = part
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("grid entry `{part}` needs key=values")))?;
        let vals: Vec<String> = vs.split(',').map(|v| v.trim().to_string()).filter(|v| !v.is_empty()).collect();
        if vals.is_empty() {
            return Err(CliError::Usage(format!("grid key `{k}` has no values")));
        }
        grid.push((k.trim().to_string(), vals));
    }
    if grid.is_empty() {
        return Err(CliError::Usage("empty grid".into()));
    }
    Ok(grid)
}

/// Cells in row-major order, first key outermost.
fn cells(grid: &Grid) -> Vec<Vec<(String, String)>> {
    let mut out = vec![Vec::new()];
    for (k, vals) in grid {
        out = out
            .into_iter()
            .flat_map(|cell| {
                vals.iter().map(move |v| {
                    let mut c = cell.clone();
                    c.push((k.clone(), v.clone()));
                    c
                })
            })
            .collect();
    }
    out
}

struct Experiment {
    keys: &'static [&'static str],
    defaults: &'static [(&'static str, &'static str)],
    columns: &'static [&'static str],
}

fn experiment(name: &str) -> Result<Experiment, CliError> {
    Ok(match name {
        "spokesman-core" => Experiment {
            keys: &["s"],
            defaults: &[],
            columns: &["gamma", "covered", "certified_bound", "meets_bound", "oracle"],
        },
        "broadcast" => Experiment {
            keys: &["s", "hops", "seeds", "protocol"],
            defaults: &[("s", "8"), ("seeds", "100"), ("protocol", "decay")],
            columns: &["mean_R", "median_R", "min_R", "mean_R_i", "timeouts"],
        },
        "relations" => Experiment {
            keys: &["n", "p"],
            defaults: &[("p", "0.5")],
            columns: &["beta", "beta_u", "beta_w", "ordered"],
        },
        other => return Err(CliError::Usage(format!("unknown experiment `{other}` (spokesman-core, broadcast, relations)"))),
    })
}

fn get<T: std::str::FromStr>(cell: &[(String, String)], exp: &Experiment, key: &str) -> Result<T, String> {
    let raw = cell
        .iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v.as_str())
        .or_else(|| exp.defaults.iter().find(|(k, _)| *k == key).map(|(_, v)| *v))
        .ok_or_else(|| format!("missing `{key}`"))?;
    raw.parse().map_err(|_| format!("bad value `{raw}` for `{key}`"))
}

fn run_cell(name: &str, exp: &Experiment, cell: &[(String, String)], ctx: &Ctx, index: u64) -> Result<Vec<String>, String> {
    let seed = ctx.cfg.seed;
    match name {
        "spokesman-core" => {
            let s: usize = get(cell, exp, "s")?;
            let core = build_core(s).map_err(|e| e.to_string())?;
            let inst = BipartiteInstance::new(core.graph).map_err(|e| e.to_string())?;
            let best = select_best(&inst, seed);
            let oracle = if inst.s() <= ctx.cfg.cap.min(ORACLE_CAP) {
                oracle_exact(&inst).map(|o| o.covered.to_string()).unwrap_or_default()
            } else {
                String::new()
            };
            Ok(vec![
                inst.gamma().to_string(),
                best.covered.to_string(),
                format!("{:.6}", best.certified_bound),
                best.meets_bound().to_string(),
                oracle,
            ])
        }
        "broadcast" => {
            let (s, hops, count): (usize, usize, u64) = (get(cell, exp, "s")?, get(cell, exp, "hops")?, get(cell, exp, "seeds")?);
            let protocol = match get::<String>(cell, exp, "protocol")?.as_str() {
                "decay" => ProtocolKind::Decay,
                "alltransmit" => ProtocolKind::AllTransmit,
                p => return Err(format!("unknown protocol `{p}`")),
            };
            let seeds: Vec<u64> = (0..count).map(|i| seed.wrapping_add(i)).collect();
            let t = experiment_lower_bound(s, hops, protocol, &seeds).map_err(|e| e.to_string())?;
            Ok(vec![
                format!("{:.4}", t.mean_rounds),
                format!("{:.1}", t.median_rounds),
                t.min_rounds.to_string(),
                format!("{:.4}", t.mean_per_hop),
                t.rows.iter().filter(|r| r.timeout).count().to_string(),
            ])
        }
        "relations" => {
            let (n, p): (usize, f64) = (get(cell, exp, "n")?, get(cell, exp, "p")?);
            let g = gnp(n, p, seed.wrapping_add(index));
            let alpha: Ratio = ctx.alpha;
            let r = expansion_report(&g, alpha).map_err(|e| e.to_string())?;
            Ok(vec![
                r.beta.to_string(),
                r.beta_u.to_string(),
                r.beta_w.to_string(),
                (r.beta >= r.beta_w && r.beta_w >= r.beta_u).to_string(),
            ])
        }
        _ => unreachable!("experiment names checked"),
    }
}

pub fn run(a: &SweepArgs, ctx: &Ctx) -> Result<Output, CliError> {
    let exp = experiment(&a.experiment)?;
    let grid = parse_grid(&a.grid)?;
    if let Some((k, _)) = grid.iter().find(|(k, _)| !exp.keys.contains(&k.as_str())) {
        return Err(CliError::Usage(format!("`{k}` is not a parameter of {}", a.experiment)));
    }
    let cells = cells(&grid);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(ctx.cfg.jobs)
        .build()
        .map_err(|e| CliError::Failed(e.to_string()))?;
    let results: Vec<Result<Vec<String>, String>> = pool.install(|| {
        cells
            .par_iter()
            .enumerate()
            .map(|(i, c)| run_cell(&a.experiment, &exp, c, ctx, i as u64))
            .collect()
    });
    let mut header: Vec<String> = grid.iter().map(|(k, _)| k.clone()).collect();
    header.extend(exp.columns.iter().map(|c| c.to_string()));
    header.push("error".into());
    let rows: Vec<Vec<String>> = cells
        .iter()
        .zip(&results)
        .map(|(cell, res)| {
            let mut row: Vec<String> = cell.iter().map(|(_, v)| v.clone()).collect();
            match res {
                Ok(vals) => {
                    row.extend(vals.iter().cloned());
                    row.push(String::new());
                }
                Err(msg) => {
                    row.extend(exp.columns.iter().map(|_| String::new()));
                    row.push(msg.clone());
                }
            }
            row
        })
        .collect();
    match ctx.format.unwrap_or(Format::Csv) {
        Format::Csv => Ok(Output::new(csv_doc(&ctx.cfg, ctx.timestamp, &header, &rows)?)),
        Format::Json => {
            let objs: Vec<serde_json::Map<String, serde_json::Value>> = rows
                .iter()
                .map(|r| header.iter().cloned().zip(r.iter().map(|v| serde_json::Value::from(v.as_str()))).collect())
                .collect();
            Ok(Output::new(json_doc(&ctx.cfg, ctx.timestamp, "rows", objs)))
        }
        Format::Graph => Err(CliError::Usage("sweep writes csv or json".into())),
    }
}
