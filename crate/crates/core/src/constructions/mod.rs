//! Builders for the explicit graph families. Each returns the graph together
//! with a serializable certificate of the parameters it claims; the claims
//! are re-measured in tests rather than trusted.

mod chain;
mod core;
mod generalized;

use serde::Serialize;

use crate::error::{domain, Result};
use crate::graph::Graph;

pub use self::chain::{build_broadcast_chain, Chain, ChainCert};
pub use self::core::{
    build_core, build_core_ncopy, build_core_scopy, CoreCert, CoreGraph, CoreGraphSpec, TreeNode,
};
pub use self::generalized::{
    build_generalized_core, build_generalized_core_relaxed, plug_worst_case, Branch,
    GeneralizedCert, GeneralizedCore, PlugCert, PlugParams, Plugged,
};

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Certificate {
    BadUnique(BadUniqueCert),
    Core(CoreCert),
    Generalized(GeneralizedCert),
    Plug(PlugCert),
    Chain(ChainCert),
}

#[derive(Clone, Debug, Serialize)]
pub struct BadUniqueCert {
    pub delta: usize,
    pub beta: usize,
    pub s: usize,
    pub n_side: usize,
    /// 2β − Δ
    pub expected_beta_u: usize,
    /// max{2β − Δ, ⌊Δ/2⌋}, claimed for S = the whole left side
    pub wireless_lower: usize,
}

/// Left vertex `v_i` is adjacent to the right vertices `iβ, …, iβ+Δ−1`
/// (mod `sβ`), so cyclically consecutive left vertices share `Δ−β`
/// neighbors and nothing else overlaps.
pub fn build_bad_unique(delta: usize, beta: usize, s: usize) -> Result<(Graph, BadUniqueCert)> {
    if s < 3 || beta > delta || 2 * beta < delta || beta == 0 {
        return domain(format!("need Δ/2 ≤ β ≤ Δ, β ≥ 1 and s ≥ 3 (got Δ={delta}, β={beta}, s={s})"));
    }
    let right = s * beta;
    let edges = (0..s).flat_map(|i| (0..delta).map(move |t| (i, s + (i * beta + t) % right)));
    let g = Graph::bipartite(s, s + right, edges)?;
    let cert = BadUniqueCert {
        delta,
        beta,
        s,
        n_side: right,
        expected_beta_u: 2 * beta - delta,
        wireless_lower: (2 * beta - delta).max(delta / 2),
    };
    Ok((g, cert))
}

pub(crate) fn next_pow2(s: usize) -> usize {
    s.max(1).next_power_of_two()
}

pub(crate) fn prev_pow2(s: usize) -> usize {
    let s = s.max(1);
    1 << (usize::BITS - 1 - s.leading_zeros())
}

pub(crate) fn log2(x: usize) -> f64 {
    (x as f64).log2()
}
