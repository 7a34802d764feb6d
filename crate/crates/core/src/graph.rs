//! Undirected simple graphs on dense ids, plus the neighborhood operators
//! every other module is written against.

use std::collections::VecDeque;

use crate::error::{check_cap, input, Result};
use crate::vertex_set::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    m: usize,
    /// Size of the left side when the graph was built as bipartite with
    /// vertices `0..left` on the left.
    left: Option<usize>,
}

impl Graph {
    /// Rejects self-loops, duplicate edges (in either orientation) and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        let mut m = 0;
        for (u, v) in edges {
            if u >= n || v >= n {
                return input(format!("edge ({u},{v}) out of range for n={n}"));
            }
            if u == v {
                return input(format!("self-loop at {u}"));
            }
            adj[u].push(v);
            adj[v].push(u);
            m += 1;
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return input(format!("duplicate edge ({u},{})", w[0]));
            }
        }
        Ok(Graph { n, adj, m, left: None })
    }

    /// Bipartite graph with `0..left` on the left; every edge must cross.
    pub fn bipartite(
        left: usize,
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        Graph::from_edges(n, edges)?.with_bipartition(left)
    }

    pub fn with_bipartition(mut self, left: usize) -> Result<Self> {
        if left > self.n {
            return input(format!("left side {left} larger than n={}", self.n));
        }
        for u in 0..left {
            if let Some(&v) = self.adj[u].iter().find(|&&v| v < left) {
                return input(format!("edge ({u},{v}) lies inside the left side"));
            }
        }
        for u in left..self.n {
            if let Some(&v) = self.adj[u].iter().find(|&&v| v >= left) {
                return input(format!("edge ({u},{v}) lies inside the right side"));
            }
        }
        self.left = Some(left);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn bipartition(&self) -> Option<usize> {
        self.left
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `Some(d)` when every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|a| a.len() == d).then_some(d)
    }

    /// Edges `(u, v)` with `u < v` in ascending lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn left_side(&self) -> Option<VertexSet> {
        self.left.map(|s| VertexSet::range(self.n, 0..s))
    }

    pub fn right_side(&self) -> Option<VertexSet> {
        self.left.map(|s| VertexSet::range(self.n, s..self.n))
    }

    /// BFS distances from `src`; `usize::MAX` marks unreachable vertices.
    pub fn distances(&self, src: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        dist[src] = 0;
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn eccentricity(&self, v: usize) -> Option<usize> {
        let d = self.distances(v);
        d.iter().all(|&x| x != usize::MAX).then(|| d.into_iter().max().unwrap_or(0))
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.distances(0).iter().all(|&x| x != usize::MAX)
    }

    /// `None` for disconnected graphs.
    pub fn diameter(&self) -> Option<usize> {
        (0..self.n).map(|v| self.eccentricity(v)).try_fold(0, |acc, e| e.map(|e| acc.max(e)))
    }

    pub(crate) fn check_ids(&self, s: &VertexSet) -> Result<()> {
        match s.as_slice().last() {
            Some(&v) if v >= self.n => input(format!("vertex {v} out of range for n={}", self.n)),
            _ => Ok(()),
        }
    }

    // ---- small named graphs ----

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edges(n, edges).expect("valid")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid")
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("valid")
    }

    /// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i -- i+5`.
    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
            edges.push((i, i + 5));
        }
        Graph::from_edges(10, edges).expect("valid")
    }

    /// `K_{a,b}` with the `a` side first.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
        Graph::bipartite(a, a + b, edges).expect("valid")
    }
}

/// Γ(S): every vertex with a neighbor in S, members of S included.
pub fn neighborhood(g: &Graph, s: &VertexSet) -> Result<VertexSet> {
    g.check_ids(s)?;
    let mut hit = vec![false; g.n()];
    for u in s.iter() {
        for &v in g.neighbors(u) {
            hit[v] = true;
        }
    }
    Ok(VertexSet::from_flags(&hit))
}

/// Γ⁻(S) = Γ(S) \ S.
pub fn external_neighborhood(g: &Graph, s: &VertexSet) -> Result<VertexSet> {
    Ok(neighborhood(g, s)?.difference(s))
}

/// Γ¹_S(S′): vertices outside `s` with exactly one neighbor in `sprime`.
pub fn unique_neighborhood(g: &Graph, s: &VertexSet, sprime: &VertexSet) -> Result<VertexSet> {
    g.check_ids(s)?;
    if !sprime.is_subset(s) {
        return input("S′ is not a subset of S");
    }
    let counts = neighbor_counts(g, sprime.iter());
    let ids = (0..g.n()).filter(|&v| counts[v] == 1 && !s.contains(v)).collect();
    Ok(VertexSet::from_sorted(g.n(), ids))
}

/// Number of neighbors each vertex has inside `set`.
pub(crate) fn neighbor_counts(g: &Graph, set: impl Iterator<Item = usize>) -> Vec<u32> {
    let mut counts = vec![0u32; g.n()];
    for u in set {
        for &v in g.neighbors(u) {
            counts[v] += 1;
        }
    }
    counts
}

/// Largest arboricity-style density `max ⌈|E(U)|/(|U|−1)⌉` over `|U| ≥ 2`,
/// by enumerating every vertex subset.
pub fn arboricity_bruteforce(g: &Graph, cap: usize) -> Result<u64> {
    check_cap("graph", g.n(), cap.min(26))?;
    let n = g.n();
    if n < 2 {
        return Ok(0);
    }
    let adj: Vec<u32> =
        (0..n).map(|u| g.neighbors(u).iter().fold(0u32, |m, &v| m | 1 << v)).collect();
    // edges[U] built from edges[U minus its lowest vertex]
    let mut edges = vec![0u32; 1 << n];
    let mut best = 0u64;
    for mask in 1u32..(1 << n) {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        edges[mask as usize] = edges[rest as usize] + (adj[low] & rest).count_ones();
        let size = mask.count_ones() as u64;
        if size >= 2 {
            let e = edges[mask as usize] as u64;
            best = best.max(e.div_ceil(size - 1));
        }
    }
    Ok(best)
}
