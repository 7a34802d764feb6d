//! Named invariant suites. Each check carries a short name, a verdict and
//! the values it compared.

use clap::Args;
use rayon::prelude::*;
use serde::Serialize;
use wexp_core::constructions::{
    build_bad_unique, build_core, plug_worst_case, CoreGraph, PlugParams,
};
use wexp_core::graph::{neighborhood, unique_neighborhood};
use wexp_core::metrics::{expansion_report, ordinary_expansion, unique_bound_holds, unique_expansion_in, wireless_at, Scope};
use wexp_core::radiosim::{experiment_lower_bound, min_rounds_fraction, ProtocolKind};
use wexp_core::random::{bipartite_instance_upto, gnp};
use wexp_core::spectral::{check_spectral_relation, lambda2_with, Method};
use wexp_core::spokesman::{
    exact_bucket_expectation, meets, oracle_exact, partition_trace, select_avgdeg, select_naive, select_tight,
};
use wexp_core::{Graph, Ratio, VertexSet};

use crate::error::CliError;
use crate::output::{csv_doc, json_doc, Format, Output};
use crate::Ctx;

pub const SUITES: [&str; 10] = [
    "core",
    "relations",
    "badunique",
    "spectral",
    "partition",
    "selectors",
    "randomized-expectation",
    "corollary-detcor",
    "broadcast-scaling",
    "plug",
];

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub suite: String,
    #[arg(long)]
    pub s: Option<usize>,
    /// largest random graph size
    #[arg(long)]
    pub n: Option<usize>,
    /// number of random instances
    #[arg(long)]
    pub graphs: Option<usize>,
    /// number of broadcast seeds per chain length
    #[arg(long)]
    pub seeds: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
    Check { name: name.into(), passed, detail: detail.into() }
}

#[derive(Serialize)]
struct Report<'a> {
    suite: &'a str,
    passed: bool,
    checks: &'a [Check],
}

pub fn run(a: &VerifyArgs, ctx: &Ctx) -> Result<Output, CliError> {
    if !SUITES.contains(&a.suite.as_str()) {
        return Err(CliError::Usage(format!("unknown suite `{}`; known: {}", a.suite, SUITES.join(", "))));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(ctx.cfg.jobs)
        .build()
        .map_err(|e| CliError::Failed(e.to_string()))?;
    let checks = pool.install(|| suite(a, ctx))?;
    let passed = checks.iter().all(|c| c.passed);
    let mut out = match ctx.format.unwrap_or(Format::Json) {
        Format::Json => Output::new(json_doc(&ctx.cfg, ctx.timestamp, "result", Report { suite: &a.suite, passed, checks: &checks })),
        Format::Csv => {
            let header = ["check", "passed", "detail"].map(String::from).to_vec();
            let rows: Vec<Vec<String>> =
                checks.iter().map(|c| vec![c.name.clone(), c.passed.to_string(), c.detail.clone()]).collect();
            Output::new(csv_doc(&ctx.cfg, ctx.timestamp, &header, &rows)?)
        }
        Format::Graph => return Err(CliError::Usage("verify writes json or csv".into())),
    };
    if !passed {
        let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        out.failed = Some(format!("suite {} failed: {}", a.suite, failed.join(", ")));
    }
    Ok(out)
}

fn suite(a: &VerifyArgs, ctx: &Ctx) -> Result<Vec<Check>, CliError> {
    let seed = ctx.cfg.seed;
    match a.suite.as_str() {
        "core" => core(a.s),
        "relations" => relations(a.n.unwrap_or(14), a.graphs.unwrap_or(200), ctx.alpha, seed),
        "badunique" => badunique(),
        "spectral" => spectral(),
        "partition" => partition(a.graphs.unwrap_or(1000), seed),
        "selectors" => selectors(a.graphs.unwrap_or(1000), seed),
        "randomized-expectation" => expectation(a.graphs.unwrap_or(20), seed),
        "corollary-detcor" => detcor(a.s),
        "broadcast-scaling" => scaling(a.s.unwrap_or(8), a.seeds.unwrap_or(100), seed),
        "plug" => plug(),
        _ => unreachable!("suite names checked by run"),
    }
}

fn core(s: Option<usize>) -> Result<Vec<Check>, CliError> {
    let sizes = s.map(|s| vec![s]).unwrap_or_else(|| vec![2, 4, 8, 16, 32]);
    let mut out = Vec::new();
    for s in sizes {
        let core = build_core(s)?;
        let s = core.spec.s;
        let g = &core.graph;
        let lg = s.trailing_zeros() as usize + 1;
        let n_side = core.spec.n_side();
        out.push(check(format!("s={s} item 1: |N| = s log 2s"), n_side == s * lg, format!("{n_side} vs {}", s * lg)));
        let bad_deg = (0..s).filter(|&u| g.degree(u) != 2 * s - 1).count();
        out.push(check(format!("s={s} item 2: S-degree 2s-1"), bad_deg == 0, format!("{bad_deg} off")));
        let max_n = (s..g.n()).map(|v| g.degree(v)).max().unwrap_or(0);
        out.push(check(format!("s={s} item 3: max N-degree s"), max_n == s, format!("{max_n}")));
        let avg = g.m() as f64 / n_side as f64;
        out.push(check(
            format!("s={s} item 3: average N-degree <= 2s/log 2s"),
            avg <= 2.0 * s as f64 / lg as f64 + 1e-12,
            format!("{avg:.4} vs {:.4}", 2.0 * s as f64 / lg as f64),
        ));
        let rule = edge_rule_holds(&core);
        out.push(check(format!("s={s} edge rule"), rule, ""));
        if s <= 8 {
            let (expand, cap, induction) = brute_force_items(&core, lg);
            out.push(check(format!("s={s} item 4: |N(S')| >= log 2s |S'|"), expand, ""));
            out.push(check(format!("s={s} item 5: unique cover <= 2s"), cap.0, format!("max {}", cap.1)));
            out.push(check(format!("s={s} per-node cap 2^(j+1)-1"), induction, ""));
        }
    }
    Ok(out)
}

fn edge_rule_holds(core: &CoreGraph) -> bool {
    let spec = &core.spec;
    let s = spec.s_side();
    (0..s).all(|u| {
        (s..core.graph.n()).all(|v| core.graph.has_edge(u, v) == spec.is_ancestor(spec.node_of(v), spec.leaf_of(u)))
    })
}

fn brute_force_items(core: &CoreGraph, lg: usize) -> (bool, (bool, usize), bool) {
    let g = &core.graph;
    let s = core.spec.s;
    let full = VertexSet::range(g.n(), 0..s);
    let nodes: Vec<_> = core.spec.nodes().collect();
    let subs: Vec<VertexSet> = nodes.iter().map(|&v| core.spec.subtree_n(v)).collect();
    let (mut expand, mut induction, mut best) = (true, true, 0);
    for mask in 1u32..(1 << s) {
        let sp = VertexSet::new(g.n(), (0..s).filter(|&u| mask >> u & 1 == 1)).expect("in range");
        expand &= neighborhood(g, &sp).expect("in range").len() >= lg * sp.len();
        let uni = unique_neighborhood(g, &full, &sp).expect("subset");
        best = best.max(uni.len());
        for (node, sub) in nodes.iter().zip(&subs) {
            induction &= uni.intersection(sub).len() < 1 << (core.spec.inverse_level(*node) + 1);
        }
    }
    (expand, (best <= 2 * s, best), induction)
}

fn relations(n_max: usize, graphs: usize, alpha: Ratio, seed: u64) -> Result<Vec<Check>, CliError> {
    if n_max < 2 {
        return Err(CliError::Usage("--n must be at least 2".into()));
    }
    let results: Vec<Result<(bool, bool), CliError>> = (0..graphs as u64)
        .into_par_iter()
        .map(|i| {
            let n = 2 + (i as usize % (n_max - 1));
            let g = gnp(n, 0.2 + 0.6 * ((i * 7919) % 100) as f64 / 100.0, seed.wrapping_add(i));
            match expansion_report(&g, alpha) {
                Ok(r) => Ok((
                    r.beta >= r.beta_w && r.beta_w >= r.beta_u,
                    unique_bound_holds(r.beta, r.beta_u, g.max_degree()),
                )),
                // α too small for this n: no admissible set, nothing to check
                Err(wexp_core::Error::Domain(_)) => Ok((true, true)),
                Err(e) => Err(e.into()),
            }
        })
        .collect();
    let mut chain_bad = 0;
    let mut bound_bad = 0;
    for r in results {
        let (a, b) = r?;
        chain_bad += !a as usize;
        bound_bad += !b as usize;
    }
    Ok(vec![
        check("beta >= beta_w >= beta_u", chain_bad == 0, format!("{chain_bad} of {graphs} violate")),
        check("beta_u >= 2 beta - Delta", bound_bad == 0, format!("{bound_bad} of {graphs} violate")),
    ])
}

fn badunique() -> Result<Vec<Check>, CliError> {
    let mut out = Vec::new();
    for (delta, beta, s) in [(4usize, 2usize, 4usize), (4, 3, 5), (6, 4, 4)] {
        let (g, cert) = build_bad_unique(delta, beta, s)?;
        let left = g.left_side().expect("bipartite");
        let (bu, _) = unique_expansion_in(&g, &Scope::over(Ratio::integer(1), left.clone()))?;
        let want = Ratio::integer(cert.expected_beta_u as u64);
        out.push(check(format!("({delta},{beta},{s}) beta_u = 2beta-Delta"), bu == want, format!("{bu} vs {want}")));
        let w = wireless_at(&g, &left)?;
        let lower = Ratio::integer(cert.wireless_lower as u64);
        out.push(check(
            format!("({delta},{beta},{s}) wireless at S >= max(2beta-Delta, Delta/2)"),
            w.ratio >= lower,
            format!("{} vs {lower}", w.ratio),
        ));
    }
    Ok(out)
}

fn spectral() -> Result<Vec<Check>, CliError> {
    let cases = [
        ("K4", Graph::complete(4), Ratio::new(1, 4), -1.0),
        ("C6", Graph::cycle(6), Ratio::new(1, 3), 1.0),
        ("Petersen", Graph::petersen(), Ratio::new(3, 10), 1.0),
    ];
    let mut out = Vec::new();
    for (name, g, alpha, want) in cases {
        let dense = lambda2_with(&g, Method::Dense)?;
        let power = lambda2_with(&g, Method::Power)?;
        out.push(check(
            format!("{name} lambda2"),
            (dense.lambda2 - want).abs() < 1e-6 && (power.lambda2 - dense.lambda2).abs() < 1e-6,
            format!("dense {:.9} power {:.9}", dense.lambda2, power.lambda2),
        ));
        let rel = check_spectral_relation(&g, alpha)?;
        out.push(check(format!("{name} relation"), rel.holds, format!("{:.6} >= {:.6}", rel.lhs, rel.rhs)));
    }
    Ok(out)
}

fn partition(graphs: usize, seed: u64) -> Result<Vec<Check>, CliError> {
    let bad: usize = (0..graphs as u64)
        .into_par_iter()
        .map(|i| {
            let inst = bipartite_instance_upto(12, 24, seed.wrapping_add(i));
            let trace = partition_trace(&inst);
            let (last, steps) = trace.split_last().expect("nonempty trace");
            let g = inst.graph();
            let mid = steps.iter().any(|st| !st.violations(g, false).is_empty());
            (mid || !last.violations(g, true).is_empty()) as usize
        })
        .sum();
    Ok(vec![check("P1-P4 at every step", bad == 0, format!("{bad} of {graphs} instances violate"))])
}

fn selectors(graphs: usize, seed: u64) -> Result<Vec<Check>, CliError> {
    let counts: Vec<[usize; 4]> = (0..graphs as u64)
        .into_par_iter()
        .map(|i| {
            let inst = bipartite_instance_upto(12, 24, seed.wrapping_add(i));
            let gamma = inst.gamma() as f64;
            let oracle = oracle_exact(&inst).expect("left side within cap").covered;
            let naive = select_naive(&inst);
            let avg = select_avgdeg(&inst);
            let tight = select_tight(&inst);
            [
                !meets(naive.covered, gamma / inst.max_deg_s() as f64) as usize,
                !meets(avg.covered, gamma / (8.0 * inst.delta_n())) as usize,
                !meets(tight.covered, gamma / (9.0 * (2.0 * inst.delta_n()).log2())) as usize,
                [&naive, &avg, &tight].iter().any(|r| r.covered > oracle) as usize,
            ]
        })
        .collect();
    let sum = |k: usize| counts.iter().map(|c| c[k]).sum::<usize>();
    Ok(vec![
        check("naive >= gamma/Delta_S", sum(0) == 0, format!("{} violations", sum(0))),
        check("avgdeg >= gamma/(8 delta_N)", sum(1) == 0, format!("{} violations", sum(1))),
        check("tight >= gamma/(9 log 2delta_N)", sum(2) == 0, format!("{} violations", sum(2))),
        check("every selector <= oracle", sum(3) == 0, format!("{} violations", sum(3))),
    ])
}

fn expectation(graphs: usize, seed: u64) -> Result<Vec<Check>, CliError> {
    let mut worst = f64::INFINITY;
    let mut bad = 0;
    for i in 0..graphs as u64 {
        let inst = bipartite_instance_upto(12, 24, seed.wrapping_add(i));
        let ex = exact_bucket_expectation(&inst)?;
        let ratio = ex.expected / ex.bucket_size as f64;
        worst = worst.min(ratio);
        bad += (ex.expected < (-3.0f64).exp() * ex.bucket_size as f64) as usize;
    }
    Ok(vec![check(
        "E[unique cover of N_j] >= e^-3 |N_j|",
        bad == 0,
        format!("worst ratio {worst:.4}, {bad} of {graphs} below"),
    )])
}

fn detcor(s: Option<usize>) -> Result<Vec<Check>, CliError> {
    let sizes = s.map(|s| vec![s]).unwrap_or_else(|| vec![4, 8]);
    let mut out = Vec::new();
    for s in sizes {
        let core = build_core(s)?;
        for i in 0..=core.spec.levels / 2 {
            let r = min_rounds_fraction(&core, i)?;
            out.push(check(format!("s={} i={i} rounds >= 1+i", core.spec.s), r > i, format!("{r}")));
        }
    }
    Ok(out)
}

fn scaling(s: usize, seeds: usize, seed: u64) -> Result<Vec<Check>, CliError> {
    let seed_list: Vec<u64> = (0..seeds as u64).map(|i| seed.wrapping_add(i)).collect();
    let hops = [2usize, 4, 8];
    let tables: Vec<_> = hops
        .par_iter()
        .map(|&d| experiment_lower_bound(s, d, ProtocolKind::Decay, &seed_list))
        .collect::<Result<_, _>>()?;
    let causal = tables.iter().all(|t| t.rows.iter().all(|r| !r.timeout && r.rounds >= t.d_hops));
    let means: Vec<f64> = tables.iter().map(|t| t.mean_rounds).collect();
    let xs: Vec<f64> = hops.iter().map(|&d| d as f64).collect();
    let slope = least_squares_slope(&xs, &means);
    let per_hop = tables.iter().map(|t| t.mean_per_hop).fold(f64::INFINITY, f64::min);
    Ok(vec![
        check("R >= d_hops on every run", causal, ""),
        check(
            "mean R nondecreasing, slope >= 1",
            means.windows(2).all(|w| w[0] <= w[1]) && slope >= 1.0,
            format!("means {means:?} slope {slope:.3}"),
        ),
        check("mean R^i >= 1.25", per_hop >= 1.25, format!("min mean {per_hop:.3}")),
    ])
}

pub fn least_squares_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let (mx, my) = (x.iter().sum::<f64>() / n, y.iter().sum::<f64>() / n);
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

fn plug() -> Result<Vec<Check>, CliError> {
    let mut out = Vec::new();
    for n in [9usize, 12] {
        let base = Graph::complete(n);
        let alpha = Ratio::new(1, 2);
        let eps = Ratio::new(1, 4);
        let (beta, _) = ordinary_expansion(&base, alpha)?;
        let params = PlugParams::derive(eps, base.max_degree(), beta)?;
        let p = plug_worst_case(&base, alpha, beta, &params)?;
        let c = &p.cert;
        out.push(check(format!("K{n} n~ <= 1.25 n"), c.n_tilde as f64 <= 1.25 * n as f64, format!("{}", c.n_tilde)));
        out.push(check(
            format!("K{n} Delta~ <= 1.25 Delta"),
            c.max_degree_tilde as f64 <= 1.25 * (n - 1) as f64,
            format!("{}", c.max_degree_tilde),
        ));
        let w = wireless_at(&p.graph, &c.s_star)?;
        let log_ok = c.core.log_cap.is_none_or(|cap| w.covered as f64 <= cap + 1e-9);
        out.push(check(
            format!("K{n} wireless at S* within cap"),
            w.covered <= c.core.structural_cap && log_ok,
            format!("{} vs {}", w.covered, c.core.structural_cap),
        ));
        let (bt, _) = ordinary_expansion(&p.graph, c.alpha_tilde)?;
        out.push(check(format!("K{n} beta at alpha~ >= beta~"), bt >= c.beta_tilde, format!("{bt} vs {}", c.beta_tilde)));
    }
    Ok(out)
}
