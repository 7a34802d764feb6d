use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::core::core_variant;
use crate::error::{domain, Result};
use crate::graph::Graph;

#[derive(Clone, Debug, Serialize)]
pub struct ChainCert {
    pub s: usize,
    pub d_hops: usize,
    pub seed: u64,
    pub n: usize,
    /// rt⁰, rt¹, …, rt^{d_hops}
    pub rt: Vec<usize>,
    /// first vertex id of hop i's left side, i = 1..=d_hops
    pub hop_offsets: Vec<usize>,
    pub expected_diameter: usize,
}

#[derive(Clone, Debug)]
pub struct Chain {
    pub graph: Graph,
    pub rt: Vec<usize>,
    pub cert: ChainCert,
}

impl Chain {
    pub fn hop_s(&self, hop: usize) -> std::ops::Range<usize> {
        let start = self.cert.hop_offsets[hop - 1];
        start..start + self.cert.s
    }

    pub fn hop_n(&self, hop: usize) -> std::ops::Range<usize> {
        let start = self.cert.hop_offsets[hop - 1] + self.cert.s;
        let width = self.cert.s * (self.cert.s.trailing_zeros() as usize + 1);
        start..start + width
    }
}

/// `d_hops` core graphs in series. Vertex 0 is rt⁰, adjacent to the first
/// left side; rt^i is drawn uniformly from the right side of hop i and, for
/// i < d_hops, joined to every left vertex of hop i+1.
pub fn build_broadcast_chain(s: usize, d_hops: usize, seed: u64) -> Result<Chain> {
    if s == 0 || !s.is_power_of_two() || d_hops == 0 {
        return domain(format!("need s a power of two and d_hops ≥ 1 (got s={s}, d_hops={d_hops})"));
    }
    let core = core_variant(s, 1, 1, None);
    let block = core.graph.n();
    let n = 1 + d_hops * block;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    let mut rt = vec![0usize];
    let mut hop_offsets = Vec::with_capacity(d_hops);
    for hop in 0..d_hops {
        let offset = 1 + hop * block;
        hop_offsets.push(offset);
        edges.extend(core.graph.edges().map(|(u, v)| (offset + u, offset + v)));
        let prev = *rt.last().expect("rt⁰ present");
        edges.extend((offset..offset + s).map(|z| (prev, z)));
        rt.push(offset + s + rng.gen_range(0..block - s));
    }
    let graph = Graph::from_edges(n, edges)?;
    let cert = ChainCert {
        s,
        d_hops,
        seed,
        n,
        rt: rt.clone(),
        hop_offsets,
        expected_diameter: 2 * d_hops + 2,
    };
    Ok(Chain { graph, rt, cert })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_hop_counts() {
        let c = build_broadcast_chain(4, 1, 9).unwrap();
        assert_eq!(c.graph.n(), 1 + 4 + 12);
        assert_eq!(c.rt.len(), 2);
        assert!(c.hop_n(1).contains(&c.rt[1]));
        assert_eq!(c.graph.degree(0), 4);
    }

    #[test]
    fn seeded() {
        let a = build_broadcast_chain(8, 4, 3).unwrap();
        let b = build_broadcast_chain(8, 4, 3).unwrap();
        assert_eq!(a.rt, b.rt);
        assert_eq!(a.graph, b.graph);
        assert!(build_broadcast_chain(6, 2, 0).is_err());
    }
}
