use serde::Serialize;

use super::engine::{simulate, AllTransmit, Decay, Protocol, SimConfig, Stop};
use crate::constructions::build_broadcast_chain;
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProtocolKind {
    Decay,
    AllTransmit,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentRow {
    pub seed: u64,
    /// rounds until rt^{d_hops} was informed, or rounds played on timeout
    pub rounds: usize,
    pub per_hop: Vec<usize>,
    pub timeout: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentTable {
    pub s: usize,
    pub d_hops: usize,
    pub protocol: ProtocolKind,
    pub rows: Vec<ExperimentRow>,
    /// aggregates over rows that did not time out
    pub mean_rounds: f64,
    pub median_rounds: f64,
    pub min_rounds: usize,
    pub mean_per_hop: f64,
}

/// One fresh chain per seed; the protocol sees only local information and
/// the run stops once the last rt holds the message.
pub fn experiment_lower_bound(
    s: usize,
    d_hops: usize,
    protocol: ProtocolKind,
    seeds: &[u64],
) -> Result<ExperimentTable> {
    let mut rows = Vec::with_capacity(seeds.len());
    for &seed in seeds {
        let chain = build_broadcast_chain(s, d_hops, seed)?;
        let target = *chain.rt.last().expect("rt sequence is nonempty");
        let mut cfg = SimConfig::new(0, seed);
        cfg.stop = Stop::Informed(target);
        let mut decay = Decay { phase_len: (chain.graph.n() as f64).log2().ceil() as usize };
        let proto: &mut dyn Protocol = match protocol {
            ProtocolKind::Decay => &mut decay,
            ProtocolKind::AllTransmit => &mut AllTransmit,
        };
        let trace = simulate(&chain.graph, proto, &cfg)?;
        let reached = trace.first_informed[target].is_some();
        let per_hop = if reached { trace.per_hop(&chain.rt).unwrap_or_default() } else { Vec::new() };
        rows.push(ExperimentRow { seed, rounds: trace.rounds, per_hop, timeout: !reached });
    }
    let done: Vec<&ExperimentRow> = rows.iter().filter(|r| !r.timeout).collect();
    let mut r: Vec<usize> = done.iter().map(|r| r.rounds).collect();
    r.sort_unstable();
    let mean_rounds = mean(r.iter().map(|&x| x as f64));
    let median_rounds = match r.len() {
        0 => f64::NAN,
        k if k % 2 == 1 => r[k / 2] as f64,
        k => (r[k / 2 - 1] + r[k / 2]) as f64 / 2.0,
    };
    let mean_per_hop = mean(done.iter().flat_map(|r| r.per_hop.iter().map(|&x| x as f64)));
    Ok(ExperimentTable {
        s,
        d_hops,
        protocol,
        min_rounds: r.first().copied().unwrap_or(0),
        rows,
        mean_rounds,
        median_rounds,
        mean_per_hop,
    })
}

fn mean(xs: impl Iterator<Item = f64>) -> f64 {
    let (sum, k) = xs.fold((0.0, 0usize), |(s, k), x| (s + x, k + 1));
    if k == 0 {
        f64::NAN
    } else {
        sum / k as f64
    }
}
