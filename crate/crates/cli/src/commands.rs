use clap::{Args, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use wexp_core::constructions::{
    build_bad_unique, build_broadcast_chain, build_core, build_core_ncopy, build_core_scopy, build_generalized_core,
    build_generalized_core_relaxed, plug_worst_case, Certificate, PlugParams,
};
use wexp_core::metrics::{expansion_report_in, wireless_at, Scope};
use wexp_core::radiosim::{experiment_lower_bound, ExperimentTable, ProtocolKind};
use wexp_core::spectral::check_spectral_relation;
use wexp_core::spokesman::{
    oracle_exact, select_avgdeg, select_best, select_bucket, select_naive, select_randomized, select_smallbeta,
    select_tight, SpokesmanResult, DEFAULT_C, DEFAULT_T, DEFAULT_TRIALS, ORACLE_CAP,
};
use wexp_core::{BipartiteInstance, Graph, Ratio, VertexSet};

use crate::error::CliError;
use crate::output::{csv_doc, header_lines, json_doc, Format, Output};
use crate::{read_graph, Ctx};

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[command(subcommand)]
    pub family: Family,
}

#[derive(Subcommand, Debug)]
pub enum Family {
    Core {
        #[arg(long)]
        s: usize,
    },
    Ncopy {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        beta: f64,
    },
    Scopy {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        beta: f64,
    },
    Badunique {
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        beta: usize,
        #[arg(long)]
        s: usize,
    },
    Gencore {
        #[arg(long)]
        delta_star: usize,
        #[arg(long)]
        beta_star: f64,
        /// build even when β* is outside [2e/Δ*, Δ*/(2e)]
        #[arg(long)]
        relaxed: bool,
    },
    Chain {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        hops: usize,
    },
    /// Plug a generalized core onto a base graph
    Plug {
        /// a graph file, or `complete:N`, `cycle:N`, `petersen`
        #[arg(long)]
        base: String,
        #[arg(long, default_value = "1/4")]
        epsilon: String,
        /// base expansion; computed exactly at --alpha when omitted
        #[arg(long)]
        beta: Option<String>,
    },
}

fn named_or_file(spec: &str) -> Result<Graph, CliError> {
    let sized = |rest: &str| rest.parse::<usize>().map_err(|_| CliError::Usage(format!("bad size in `{spec}`")));
    if let Some(rest) = spec.strip_prefix("complete:") {
        return Ok(Graph::complete(sized(rest)?));
    }
    if let Some(rest) = spec.strip_prefix("cycle:") {
        return Ok(Graph::cycle(sized(rest)?));
    }
    if spec == "petersen" {
        return Ok(Graph::petersen());
    }
    read_graph(spec)
}

fn ratio(text: &str) -> Result<Ratio, CliError> {
    Ratio::parse(text).map_err(|e| CliError::Usage(e.to_string()))
}

pub fn construct(a: &ConstructArgs, ctx: &Ctx) -> Result<Output, CliError> {
    let (graph, cert) = match &a.family {
        Family::Core { s } => {
            let c = build_core(*s)?;
            (c.graph.clone(), Certificate::Core(c.spec.certificate()))
        }
        Family::Ncopy { s, beta } => {
            let c = build_core_ncopy(*s, *beta)?;
            (c.graph.clone(), Certificate::Core(c.spec.certificate()))
        }
        Family::Scopy { s, beta } => {
            let c = build_core_scopy(*s, *beta)?;
            (c.graph.clone(), Certificate::Core(c.spec.certificate()))
        }
        Family::Badunique { delta, beta, s } => {
            let (g, c) = build_bad_unique(*delta, *beta, *s)?;
            (g, Certificate::BadUnique(c))
        }
        Family::Gencore { delta_star, beta_star, relaxed } => {
            let gen = if *relaxed {
                build_generalized_core_relaxed(*delta_star, *beta_star)?
            } else {
                build_generalized_core(*delta_star, *beta_star)?
            };
            (gen.core.graph, Certificate::Generalized(gen.cert))
        }
        Family::Chain { s, hops } => {
            let c = build_broadcast_chain(*s, *hops, ctx.cfg.seed)?;
            (c.graph, Certificate::Chain(c.cert))
        }
        Family::Plug { base, epsilon, beta } => {
            let g = named_or_file(base)?;
            let beta = match beta {
                Some(b) => ratio(b)?,
                None => wexp_core::metrics::ordinary_expansion_in(&g, &Scope::new(ctx.alpha).with_cap(ctx.cfg.cap))?.0,
            };
            let params = PlugParams::derive(ratio(epsilon)?, g.max_degree(), beta)?;
            let p = plug_worst_case(&g, ctx.alpha, beta, &params)?;
            (p.graph, Certificate::Plug(p.cert))
        }
    };
    match ctx.format.unwrap_or(Format::Graph) {
        Format::Graph => {
            let body = header_lines(&ctx.cfg, ctx.timestamp)
                + &wexp_core::io::format_graph(&graph, &[]);
            let mut out = Output::new(body);
            out.sidecars.push((".cert.json".into(), json_doc(&ctx.cfg, ctx.timestamp, "certificate", &cert)));
            Ok(out)
        }
        Format::Json => {
            let g = json!({
                "n": graph.n(),
                "m": graph.m(),
                "bipartite": graph.bipartition(),
                "edges": graph.edges().collect::<Vec<_>>(),
            });
            Ok(Output::new(json_doc(&ctx.cfg, ctx.timestamp, "result", json!({ "graph": g, "certificate": cert }))))
        }
        Format::Csv => Err(CliError::Usage("construct writes graph or json".into())),
    }
}

#[derive(Args, Debug)]
pub struct MetricsArgs {
    #[arg(long)]
    pub graph: String,
    /// which vertices S ranges over: all | left | right
    #[arg(long, default_value = "all")]
    pub domain: String,
    /// evaluate the best S′ for one set only, e.g. `0,1,2`
    #[arg(long)]
    pub set: Option<String>,
    /// also check the spectral relation (regular graphs)
    #[arg(long)]
    pub lambda2: bool,
}

fn parse_set(n: usize, text: &str) -> Result<VertexSet, CliError> {
    let ids: Result<Vec<usize>, _> = text.split(',').filter(|t| !t.trim().is_empty()).map(|t| t.trim().parse()).collect();
    let ids = ids.map_err(|_| CliError::Usage(format!("bad vertex list `{text}`")))?;
    Ok(VertexSet::new(n, ids)?)
}

pub fn metrics(a: &MetricsArgs, ctx: &Ctx) -> Result<Output, CliError> {
    let g = read_graph(&a.graph)?;
    let domain = match a.domain.as_str() {
        "all" => None,
        "left" | "right" => {
            let side = if a.domain == "left" { g.left_side() } else { g.right_side() };
            Some(side.ok_or_else(|| CliError::Usage("graph file has no bipartition".into()))?)
        }
        other => return Err(CliError::Usage(format!("unknown domain `{other}`"))),
    };
    let scope = Scope { alpha: ctx.alpha, domain, cap: ctx.cfg.cap };
    let mut fields = serde_json::Map::new();
    if let Some(set) = &a.set {
        let s = parse_set(g.n(), set)?;
        fields.insert("set".into(), serde_json::to_value(wireless_at(&g, &s)?).unwrap());
    } else {
        fields.insert("report".into(), serde_json::to_value(expansion_report_in(&g, &scope)?).unwrap());
    }
    if a.lambda2 {
        fields.insert("spectral".into(), serde_json::to_value(check_spectral_relation(&g, ctx.alpha)?).unwrap());
    }
    match ctx.format.unwrap_or(Format::Json) {
        Format::Json => Ok(Output::new(json_doc(&ctx.cfg, ctx.timestamp, "result", fields))),
        Format::Csv => {
            let mut header = Vec::new();
            let mut row = Vec::new();
            flatten("", &serde_json::Value::Object(fields), &mut header, &mut row);
            Ok(Output::new(csv_doc(&ctx.cfg, ctx.timestamp, &header, &[row])?))
        }
        Format::Graph => Err(CliError::Usage("metrics writes json or csv".into())),
    }
}

/// Nested JSON to dotted CSV columns; arrays become space-separated cells.
fn flatten(prefix: &str, v: &serde_json::Value, header: &mut Vec<String>, row: &mut Vec<String>) {
    use serde_json::Value;
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, header, row);
            }
        }
        Value::Array(xs) => {
            header.push(prefix.to_string());
            row.push(xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
        }
        Value::String(s) => {
            header.push(prefix.to_string());
            row.push(s.clone());
        }
        other => {
            header.push(prefix.to_string());
            row.push(other.to_string());
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Algo {
    Oracle,
    Rand,
    Smallbeta,
    Naive,
    Avgdeg,
    Bucket,
    Tight,
    Best,
}

#[derive(Args, Debug)]
pub struct SpokesmanArgs {
    #[arg(long)]
    pub graph: String,
    #[arg(long, value_enum, default_value = "best")]
    pub algo: Algo,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    pub trials: usize,
    #[arg(long, default_value_t = DEFAULT_C)]
    pub c: f64,
    /// restrict buckets to right degrees ≤ t·δ_N
    #[arg(long)]
    pub t: Option<f64>,
}

#[derive(Serialize)]
struct SpokesmanReport<'a> {
    s: usize,
    gamma: usize,
    result: &'a SpokesmanResult,
    meets_bound: bool,
    oracle_covered: Option<usize>,
    oracle_gap: Option<usize>,
}

pub fn spokesman(a: &SpokesmanArgs, ctx: &Ctx) -> Result<Output, CliError> {
    let inst = BipartiteInstance::new(read_graph(&a.graph)?)?;
    let seed = ctx.cfg.seed;
    let res = match a.algo {
        Algo::Oracle => oracle_exact(&inst)?,
        Algo::Rand => select_randomized(&inst, a.trials, seed),
        Algo::Smallbeta => select_smallbeta(&inst, a.trials, seed),
        Algo::Naive => select_naive(&inst),
        Algo::Avgdeg => select_avgdeg(&inst),
        Algo::Bucket => select_bucket(&inst, a.c, Some(a.t.unwrap_or(DEFAULT_T)))?,
        Algo::Tight => select_tight(&inst),
        Algo::Best => select_best(&inst, seed),
    };
    let oracle = if inst.s() <= ctx.cfg.cap.min(ORACLE_CAP) { Some(oracle_exact(&inst)?.covered) } else { None };
    let report = SpokesmanReport {
        s: inst.s(),
        gamma: inst.gamma(),
        meets_bound: res.meets_bound(),
        oracle_covered: oracle,
        oracle_gap: oracle.map(|o| o - res.covered),
        result: &res,
    };
    match ctx.format.unwrap_or(Format::Json) {
        Format::Json => Ok(Output::new(json_doc(&ctx.cfg, ctx.timestamp, "result", &report))),
        Format::Csv => {
            let header: Vec<String> = ["algorithm", "s", "gamma", "covered", "certified_bound", "meets_bound", "oracle", "gap", "chosen"]
                .map(String::from)
                .to_vec();
            let opt = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
            let row = vec![
                res.algorithm.name().to_string(),
                inst.s().to_string(),
                inst.gamma().to_string(),
                res.covered.to_string(),
                res.certified_bound.to_string(),
                res.meets_bound().to_string(),
                opt(oracle),
                opt(report.oracle_gap),
                res.chosen.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "),
            ];
            Ok(Output::new(csv_doc(&ctx.cfg, ctx.timestamp, &header, &[row])?))
        }
        Format::Graph => Err(CliError::Usage("spokesman writes json or csv".into())),
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ProtocolArg {
    Decay,
    Alltransmit,
}

#[derive(Args, Debug)]
pub struct BroadcastArgs {
    #[arg(long)]
    pub s: usize,
    #[arg(long)]
    pub hops: usize,
    #[arg(long, value_enum, default_value = "decay")]
    pub protocol: ProtocolArg,
    /// inclusive range `a..b`, or a single seed
    #[arg(long, default_value = "0..99")]
    pub seeds: String,
}

pub fn parse_seeds(text: &str) -> Result<Vec<u64>, CliError> {
    let bad = || CliError::Usage(format!("seeds must be `a..b` or `a` (got `{text}`)"));
    match text.split_once("..") {
        Some((a, b)) => {
            let (a, b): (u64, u64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
            if a > b {
                return Err(bad());
            }
            Ok((a..=b).collect())
        }
        None => Ok(vec![text.trim().parse().map_err(|_| bad())?]),
    }
}

pub fn protocol_kind(p: ProtocolArg) -> ProtocolKind {
    match p {
        ProtocolArg::Decay => ProtocolKind::Decay,
        ProtocolArg::Alltransmit => ProtocolKind::AllTransmit,
    }
}

pub fn broadcast_rows(t: &ExperimentTable) -> (Vec<String>, Vec<Vec<String>>) {
    let mut header = vec!["seed".to_string(), "R".to_string()];
    header.extend((1..=t.d_hops).map(|i| format!("R_{i}")));
    header.push("timeout_flag".into());
    let rows = t
        .rows
        .iter()
        .map(|r| {
            let mut row = vec![r.seed.to_string(), r.rounds.to_string()];
            row.extend((0..t.d_hops).map(|i| r.per_hop.get(i).map(|x| x.to_string()).unwrap_or_default()));
            row.push((r.timeout as u8).to_string());
            row
        })
        .collect();
    (header, rows)
}

pub fn broadcast(a: &BroadcastArgs, ctx: &Ctx) -> Result<Output, CliError> {
    let seeds = parse_seeds(&a.seeds)?;
    let table = experiment_lower_bound(a.s, a.hops, protocol_kind(a.protocol), &seeds)?;
    match ctx.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let (header, rows) = broadcast_rows(&table);
            Ok(Output::new(csv_doc(&ctx.cfg, ctx.timestamp, &header, &rows)?))
        }
        Format::Json => Ok(Output::new(json_doc(&ctx.cfg, ctx.timestamp, "result", &table))),
        Format::Graph => Err(CliError::Usage("broadcast writes csv or json".into())),
    }
}
