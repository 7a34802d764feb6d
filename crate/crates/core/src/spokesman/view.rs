use crate::bipartite::BipartiteInstance;

/// An induced piece `(S_view, N_view)` of an instance with local indices.
/// Unlike `BipartiteInstance`, left vertices may be isolated here.
#[derive(Clone, Debug)]
pub(crate) struct View {
    pub s_ids: Vec<usize>,
    pub n_ids: Vec<usize>,
    /// local right indices per left vertex
    pub s_adj: Vec<Vec<usize>>,
    /// local left indices per right vertex
    pub n_adj: Vec<Vec<usize>>,
}

impl View {
    pub fn full(inst: &BipartiteInstance) -> Self {
        let s_ids: Vec<usize> = (0..inst.s()).collect();
        let n_ids: Vec<usize> = (inst.s()..inst.graph().n()).collect();
        View::induced(inst, &s_ids, &n_ids)
    }

    /// Both id lists must be sorted global ids from the matching sides.
    pub fn induced(inst: &BipartiteInstance, s_ids: &[usize], n_ids: &[usize]) -> Self {
        let g = inst.graph();
        let mut local = vec![usize::MAX; g.n()];
        for (i, &v) in s_ids.iter().enumerate() {
            local[v] = i;
        }
        for (i, &v) in n_ids.iter().enumerate() {
            local[v] = i;
        }
        let mut in_n = vec![false; g.n()];
        n_ids.iter().for_each(|&v| in_n[v] = true);
        let mut s_adj = vec![Vec::new(); s_ids.len()];
        let mut n_adj = vec![Vec::new(); n_ids.len()];
        for (i, &u) in s_ids.iter().enumerate() {
            for &v in g.neighbors(u) {
                if in_n[v] {
                    s_adj[i].push(local[v]);
                    n_adj[local[v]].push(i);
                }
            }
        }
        View { s_ids: s_ids.to_vec(), n_ids: n_ids.to_vec(), s_adj, n_adj }
    }

    pub fn gamma(&self) -> usize {
        self.n_ids.len()
    }

    pub fn edges(&self) -> usize {
        self.s_adj.iter().map(Vec::len).sum()
    }

    /// Right vertices with degree ≤ factor·δ, δ being this view's average
    /// right degree.
    pub fn low_degree_n(&self, factor: f64) -> Vec<usize> {
        let (e, gamma) = (self.edges() as f64, self.gamma() as f64);
        (0..self.gamma())
            .filter(|&i| self.n_adj[i].len() as f64 * gamma <= factor * e + 1e-9)
            .map(|i| self.n_ids[i])
            .collect()
    }
}
