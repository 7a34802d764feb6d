use crate::error::{input, Result};
use crate::graph::Graph;
use crate::ratio::Ratio;
use crate::vertex_set::VertexSet;

/// A spokesman instance `(S, N, E)` with `S = 0..s` and `N = s..s+γ`.
#[derive(Clone, Debug)]
pub struct BipartiteInstance {
    graph: Graph,
    s: usize,
    gamma: usize,
    max_deg_s: usize,
    max_deg_n: usize,
}

impl BipartiteInstance {
    /// Needs a bipartition tag and no isolated vertex.
    pub fn new(graph: Graph) -> Result<Self> {
        let Some(s) = graph.bipartition() else {
            return input("graph carries no bipartition");
        };
        let gamma = graph.n() - s;
        if s == 0 || gamma == 0 {
            return input("both sides must be nonempty");
        }
        if let Some(v) = (0..graph.n()).find(|&v| graph.degree(v) == 0) {
            return input(format!("vertex {v} is isolated"));
        }
        let max_deg_s = (0..s).map(|v| graph.degree(v)).max().unwrap_or(0);
        let max_deg_n = (s..graph.n()).map(|v| graph.degree(v)).max().unwrap_or(0);
        Ok(BipartiteInstance { graph, s, gamma, max_deg_s, max_deg_n })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn gamma(&self) -> usize {
        self.gamma
    }

    pub fn edges(&self) -> usize {
        self.graph.m()
    }

    pub fn s_side(&self) -> VertexSet {
        VertexSet::range(self.graph.n(), 0..self.s)
    }

    pub fn n_side(&self) -> VertexSet {
        VertexSet::range(self.graph.n(), self.s..self.graph.n())
    }

    /// δ_S as an exact fraction `|E| / |S|`.
    pub fn delta_s_exact(&self) -> Ratio {
        Ratio::new(self.edges() as u64, self.s as u64)
    }

    /// δ_N as an exact fraction `|E| / γ`.
    pub fn delta_n_exact(&self) -> Ratio {
        Ratio::new(self.edges() as u64, self.gamma as u64)
    }

    pub fn delta_s(&self) -> f64 {
        self.delta_s_exact().to_f64()
    }

    pub fn delta_n(&self) -> f64 {
        self.delta_n_exact().to_f64()
    }

    pub fn max_deg_s(&self) -> usize {
        self.max_deg_s
    }

    pub fn max_deg_n(&self) -> usize {
        self.max_deg_n
    }

    /// |Γ¹_S(chosen)| with S the whole left side.
    pub fn covered(&self, chosen: &VertexSet) -> usize {
        let mut counts = vec![0u32; self.graph.n()];
        for u in chosen.iter() {
            for &v in self.graph.neighbors(u) {
                counts[v] += 1;
            }
        }
        counts[self.s..].iter().filter(|&&c| c == 1).count()
    }
}
