//! Synchronous radio networks: a silent vertex hears a message iff exactly
//! one neighbor transmits; collisions look like silence.

mod adversary;
mod engine;
mod experiment;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

pub use self::adversary::{min_rounds_fraction, ADVERSARY_CAP};
pub use self::engine::{
    flood, run_all_transmit, run_decay, run_decay_until, simulate, AllTransmit, BroadcastTrace,
    Channel, Decay, LocalView, Outcome, Protocol, SimConfig, Stop,
};
pub use self::experiment::{experiment_lower_bound, ExperimentRow, ExperimentTable, ProtocolKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadioRoundState {
    pub informed: VertexSet,
    pub transmitting: VertexSet,
    pub received: VertexSet,
}

impl RadioRoundState {
    pub fn initial(n: usize, source: usize) -> Result<Self> {
        Ok(RadioRoundState {
            informed: VertexSet::new(n, [source])?,
            transmitting: VertexSet::empty(n),
            received: VertexSet::empty(n),
        })
    }
}

/// Vertices outside `transmitters` with exactly one transmitting neighbor.
pub fn receivers(g: &Graph, transmitters: &VertexSet) -> VertexSet {
    let mut count = vec![0u32; g.n()];
    for u in transmitters.iter() {
        for &v in g.neighbors(u) {
            count[v] += 1;
        }
    }
    let flags: Vec<bool> = (0..g.n()).map(|v| count[v] == 1 && !transmitters.contains(v)).collect();
    VertexSet::from_flags(&flags)
}

/// One round under the collision rule.
pub fn step(g: &Graph, state: &RadioRoundState, transmitters: &VertexSet) -> Result<RadioRoundState> {
    g.check_ids(transmitters)?;
    if let Some(v) = transmitters.iter().find(|&v| !state.informed.contains(v)) {
        return Err(Error::Protocol(format!("vertex {v} transmits without the message")));
    }
    let received = receivers(g, transmitters);
    Ok(RadioRoundState {
        informed: state.informed.union(&received),
        transmitting: transmitters.clone(),
        received,
    })
}
