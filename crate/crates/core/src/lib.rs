//! Wireless expansion of graphs.
//!
//! * [`graph`], [`bipartite`], [`io`]: graphs, spokesman instances and the
//!   edge-list file format.
//! * [`metrics`], [`spectral`]: exact expansion measures and λ₂.
//! * [`constructions`]: the explicit extremal families with certificates.
//! * [`spokesman`]: selecting transmitters with many unique neighbors.
//! * [`radiosim`]: collision-semantics broadcast simulation.

pub mod bipartite;
pub mod constructions;
mod error;
pub mod graph;
pub mod io;
pub mod metrics;
pub mod radiosim;
pub mod random;
mod ratio;
pub mod spectral;
pub mod spokesman;
mod vertex_set;

pub use bipartite::BipartiteInstance;
pub use error::{Error, Result};
pub use graph::Graph;
pub use ratio::Ratio;
pub use vertex_set::VertexSet;
