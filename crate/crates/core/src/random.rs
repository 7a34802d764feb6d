//! Seeded random instances for property checks and sweeps.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bipartite::BipartiteInstance;
use crate::graph::Graph;

/// G(n, p) from a seed.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    Graph::from_edges(n, edges).expect("simple by construction")
}

/// Random spokesman instance with `s` left and `gamma` right vertices; each
/// pair is an edge with probability `p`, and isolated vertices get one
/// random edge.
pub fn bipartite_instance(s: usize, gamma: usize, p: f64, seed: u64) -> BipartiteInstance {
    assert!(s >= 1 && gamma >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut adj = vec![vec![false; gamma]; s];
    for row in adj.iter_mut() {
        for cell in row.iter_mut() {
            *cell = rng.gen_bool(p);
        }
    }
    for u in 0..s {
        if !adj[u].iter().any(|&b| b) {
            let v = rng.gen_range(0..gamma);
            adj[u][v] = true;
        }
    }
    for v in 0..gamma {
        if !(0..s).any(|u| adj[u][v]) {
            let u = rng.gen_range(0..s);
            adj[u][v] = true;
        }
    }
    let edges: Vec<(usize, usize)> = (0..s)
        .flat_map(|u| (0..gamma).map(move |v| (u, v)))
        .filter(|&(u, v)| adj[u][v])
        .map(|(u, v)| (u, s + v))
        .collect();
    BipartiteInstance::new(Graph::bipartite(s, s + gamma, edges).expect("crossing edges"))
        .expect("no isolated vertices")
}

/// Random instance with sizes drawn from `1..=max_s`, `1..=max_gamma`.
pub fn bipartite_instance_upto(max_s: usize, max_gamma: usize, seed: u64) -> BipartiteInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let s = rng.gen_range(1..=max_s);
    let gamma = rng.gen_range(1..=max_gamma);
    let p = rng.gen_range(0.05..0.6);
    bipartite_instance(s, gamma, p, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_and_valid() {
        assert_eq!(gnp(10, 0.4, 3), gnp(10, 0.4, 3));
        for seed in 0..50 {
            let inst = bipartite_instance_upto(12, 24, seed);
            assert!(inst.s() <= 12 && inst.gamma() <= 24);
        }
    }
}
