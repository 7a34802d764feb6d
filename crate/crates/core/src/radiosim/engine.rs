use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{receivers, RadioRoundState};
use crate::error::{input, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// Everything a vertex may base its decision on. No ids, no adjacency.
#[derive(Clone, Copy, Debug)]
pub struct LocalView {
    /// 1-based round about to be played
    pub round: usize,
    /// round in which this vertex got the message (0 for the source)
    pub informed_at: usize,
    pub n: usize,
    pub diameter: usize,
}

pub trait Protocol {
    fn transmits(&mut self, local: &LocalView, rng: &mut ChaCha8Rng) -> bool;

    /// True when decisions depend on nothing but informed status, so a round
    /// without progress repeats forever.
    fn memoryless(&self) -> bool {
        false
    }
}

/// Round `i` of every phase transmits with probability 2^{-i}.
#[derive(Clone, Copy, Debug)]
pub struct Decay {
    pub phase_len: usize,
}

impl Protocol for Decay {
    fn transmits(&mut self, local: &LocalView, rng: &mut ChaCha8Rng) -> bool {
        let i = (local.round - 1) % self.phase_len + 1;
        rng.gen_bool(0.5f64.powi(i as i32))
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct AllTransmit;

impl Protocol for AllTransmit {
    fn transmits(&mut self, _: &LocalView, _: &mut ChaCha8Rng) -> bool {
        true
    }

    fn memoryless(&self) -> bool {
        true
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Channel {
    Collision,
    /// hypothetical channel where any number of transmitting neighbors is heard
    NoCollision,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stop {
    AllInformed,
    Informed(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Completed,
    Stalled,
    Timeout,
}

#[derive(Clone, Debug)]
pub struct SimConfig {
    pub source: usize,
    pub seed: u64,
    pub channel: Channel,
    pub stop: Stop,
    /// default 64·D·⌈log₂ n⌉
    pub round_cap: Option<usize>,
    /// keep every round's state (for replay checks)
    pub record_states: bool,
}

impl SimConfig {
    pub fn new(source: usize, seed: u64) -> Self {
        SimConfig {
            source,
            seed,
            channel: Channel::Collision,
            stop: Stop::AllInformed,
            round_cap: None,
            record_states: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BroadcastTrace {
    pub outcome: Outcome,
    /// rounds played
    pub rounds: usize,
    /// last round that informed someone new
    pub last_progress: usize,
    pub first_informed: Vec<Option<usize>>,
    /// informed count after each round, starting with round 0
    pub informed_history: Vec<usize>,
    #[serde(skip)]
    pub states: Vec<RadioRoundState>,
}

impl BroadcastTrace {
    pub fn timed_out(&self) -> bool {
        self.outcome == Outcome::Timeout
    }

    /// R^i = first-informed round of rt^i minus that of rt^{i−1}; `None` if
    /// some rt was never reached.
    pub fn per_hop(&self, rt: &[usize]) -> Option<Vec<usize>> {
        let rounds: Option<Vec<usize>> = rt.iter().map(|&v| self.first_informed[v]).collect();
        rounds.map(|r| r.windows(2).map(|w| w[1] - w[0]).collect())
    }
}

fn ceil_log2(n: usize) -> usize {
    (usize::BITS - (n.max(2) - 1).leading_zeros()) as usize
}

pub fn simulate(g: &Graph, protocol: &mut dyn Protocol, cfg: &SimConfig) -> Result<BroadcastTrace> {
    let n = g.n();
    if cfg.source >= n {
        return input(format!("source {} out of range", cfg.source));
    }
    if let Stop::Informed(t) = cfg.stop {
        if t >= n {
            return input(format!("target {t} out of range"));
        }
    }
    let diameter = g.diameter().unwrap_or(n);
    let cap = cfg.round_cap.unwrap_or(64 * diameter.max(1) * ceil_log2(n));
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(1);

    let mut first: Vec<Option<usize>> = vec![None; n];
    first[cfg.source] = Some(0);
    let mut informed_count = 1;
    let mut history = vec![1];
    let mut state = RadioRoundState::initial(n, cfg.source)?;
    let mut states = Vec::new();
    if cfg.record_states {
        states.push(state.clone());
    }
    let done = |first: &[Option<usize>], count: usize| match cfg.stop {
        Stop::AllInformed => count == n,
        Stop::Informed(t) => first[t].is_some(),
    };
    let mut round = 0;
    let mut last_progress = 0;
    let mut outcome = Outcome::Completed;
    while !done(&first, informed_count) {
        if round == cap {
            outcome = Outcome::Timeout;
            break;
        }
        round += 1;
        let mut talking = Vec::new();
        for v in 0..n {
            if let Some(at) = first[v] {
                let local = LocalView { round, informed_at: at, n, diameter };
                if protocol.transmits(&local, &mut rng) {
                    talking.push(v);
                }
            }
        }
        let transmitters = VertexSet::from_sorted(n, talking);
        let received = match cfg.channel {
            Channel::Collision => receivers(g, &transmitters),
            Channel::NoCollision => {
                let mut hit = vec![false; n];
                for u in transmitters.iter() {
                    g.neighbors(u).iter().for_each(|&v| hit[v] = true);
                }
                transmitters.iter().for_each(|v| hit[v] = false);
                VertexSet::from_flags(&hit)
            }
        };
        let mut progressed = false;
        for v in received.iter() {
            if first[v].is_none() {
                first[v] = Some(round);
                informed_count += 1;
                progressed = true;
            }
        }
        history.push(informed_count);
        if cfg.record_states {
            state = RadioRoundState {
                informed: state.informed.union(&received),
                transmitting: transmitters,
                received,
            };
            states.push(state.clone());
        }
        if progressed {
            last_progress = round;
        } else if protocol.memoryless() {
            outcome = Outcome::Stalled;
            break;
        }
    }
    Ok(BroadcastTrace { outcome, rounds: round, last_progress, first_informed: first, informed_history: history, states })
}

/// Decay until every vertex is informed or the round cap is hit.
pub fn run_decay(g: &Graph, source: usize, seed: u64, phase_len: Option<usize>) -> Result<BroadcastTrace> {
    run_decay_until(g, source, seed, phase_len, Stop::AllInformed)
}

pub fn run_decay_until(
    g: &Graph,
    source: usize,
    seed: u64,
    phase_len: Option<usize>,
    stop: Stop,
) -> Result<BroadcastTrace> {
    let phase_len = phase_len.unwrap_or_else(|| ceil_log2(g.n())).max(1);
    let mut cfg = SimConfig::new(source, seed);
    cfg.stop = stop;
    simulate(g, &mut Decay { phase_len }, &cfg)
}

pub fn run_all_transmit(g: &Graph, source: usize) -> Result<BroadcastTrace> {
    simulate(g, &mut AllTransmit, &SimConfig::new(source, 0))
}

/// All-transmit on a collision-free channel: plain BFS flooding.
pub fn flood(g: &Graph, source: usize) -> Result<BroadcastTrace> {
    let mut cfg = SimConfig::new(source, 0);
    cfg.channel = Channel::NoCollision;
    simulate(g, &mut AllTransmit, &cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// K_5 on 0..5 plus a source 5 joined to 0 and 1.
    fn c_plus() -> Graph {
        let mut edges: Vec<(usize, usize)> = (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))).collect();
        edges.extend([(0, 5), (1, 5)]);
        Graph::from_edges(6, edges).unwrap()
    }

    #[test]
    fn all_transmit_stalls_on_c_plus() {
        let t = run_all_transmit(&c_plus(), 5).unwrap();
        assert_eq!(t.outcome, Outcome::Stalled);
        assert_eq!(t.last_progress, 1);
        assert_eq!(t.informed_history[1], 3);
    }

    #[test]
    fn all_transmit_on_path() {
        let t = run_all_transmit(&Graph::path(7), 0).unwrap();
        assert_eq!((t.outcome, t.rounds), (Outcome::Completed, 6));
    }

    #[test]
    fn decay_on_an_edge() {
        let g = Graph::path(2);
        let mut first_round = 0;
        for seed in 0..200 {
            let t = run_decay(&g, 0, seed, None).unwrap();
            assert_eq!(t.outcome, Outcome::Completed);
            if t.rounds == 1 {
                first_round += 1;
            }
        }
        // P(round 1) = 1/2
        assert!((70..130).contains(&first_round), "{first_round}");
    }

    #[test]
    fn flood_is_bfs() {
        let g = Graph::petersen();
        assert_eq!(flood(&g, 0).unwrap().rounds, 2);
    }

    #[test]
    fn timeout_is_flagged() {
        let mut cfg = SimConfig::new(0, 0);
        cfg.round_cap = Some(2);
        let t = simulate(&Graph::path(9), &mut AllTransmit, &cfg).unwrap();
        assert!(t.timed_out());
    }
}
