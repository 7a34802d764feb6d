use serde::Serialize;

use super::{log2, next_pow2};
use crate::error::{domain, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// A node of the perfect binary tree; the root is level 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TreeNode {
    pub level: usize,
    pub index: usize,
}

/// Layout of a core graph and its copied variants.
///
/// Left side: leaf `z`, copy `c` is vertex `z·s_copies + c`.
/// Right side: level by level, node by node; a node at level `l` owns
/// `s/2^l` base vertices, each repeated `n_copies` times.
#[derive(Clone, Debug, Serialize)]
pub struct CoreGraphSpec {
    pub s_requested: usize,
    pub s: usize,
    pub levels: usize,
    pub n_copies: usize,
    pub s_copies: usize,
    /// Unrounded copy count, when one was derived from a target β.
    pub k_exact: Option<f64>,
    pub tree_map: Vec<TreeNode>,
}

#[derive(Clone, Debug)]
pub struct CoreGraph {
    pub graph: Graph,
    pub spec: CoreGraphSpec,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoreCert {
    pub variant: &'static str,
    pub s_requested: usize,
    pub s: usize,
    pub levels: usize,
    pub k: usize,
    pub k_exact: Option<f64>,
    pub s_side: usize,
    pub n_side: usize,
    pub s_degree: usize,
    pub max_n_degree: usize,
    pub avg_n_degree_bound: f64,
    /// every S′ on the left has |Γ(S′)| ≥ expansion_factor·|S′|
    pub expansion_factor: f64,
    /// every S′ on the left has |Γ¹_S(S′)| ≤ wireless_cap
    pub wireless_cap: usize,
}

impl CoreGraphSpec {
    pub fn s_side(&self) -> usize {
        self.s * self.s_copies
    }

    pub fn n_side(&self) -> usize {
        self.s * self.levels * self.n_copies
    }

    fn leaf_level(&self) -> usize {
        self.levels - 1
    }

    /// log s − level; leaves sit at inverse-level 0.
    pub fn inverse_level(&self, node: TreeNode) -> usize {
        self.leaf_level() - node.level
    }

    pub fn leaf_of(&self, s_vertex: usize) -> usize {
        s_vertex / self.s_copies
    }

    pub fn node_of(&self, n_vertex: usize) -> TreeNode {
        self.tree_map[n_vertex - self.s_side()]
    }

    pub fn is_ancestor(&self, node: TreeNode, leaf: usize) -> bool {
        leaf >> (self.leaf_level() - node.level) == node.index
    }

    pub fn nodes(&self) -> impl Iterator<Item = TreeNode> + '_ {
        (0..self.levels).flat_map(|level| (0..1 << level).map(move |index| TreeNode { level, index }))
    }

    /// Ň_v: right vertices owned by `node` or any of its descendants.
    pub fn subtree_n(&self, node: TreeNode) -> VertexSet {
        let base = self.s_side();
        let ids = self
            .tree_map
            .iter()
            .enumerate()
            .filter(|(_, t)| t.level >= node.level && t.index >> (t.level - node.level) == node.index)
            .map(|(p, _)| base + p);
        VertexSet::new(base + self.n_side(), ids).expect("in range")
    }

    pub fn certificate(&self) -> CoreCert {
        let lg = log2(2 * self.s);
        let variant = match (self.n_copies, self.s_copies) {
            (1, 1) => "core",
            (_, 1) => "ncopy",
            _ => "scopy",
        };
        CoreCert {
            variant,
            s_requested: self.s_requested,
            s: self.s,
            levels: self.levels,
            k: self.n_copies.max(self.s_copies),
            k_exact: self.k_exact,
            s_side: self.s_side(),
            n_side: self.n_side(),
            s_degree: (2 * self.s - 1) * self.n_copies,
            max_n_degree: self.s * self.s_copies,
            avg_n_degree_bound: 2.0 * (self.s * self.s_copies) as f64 / lg,
            expansion_factor: lg * self.n_copies as f64 / self.s_copies as f64,
            wireless_cap: 2 * self.s * self.n_copies,
        }
    }
}

pub(crate) fn core_variant(
    s_requested: usize,
    n_copies: usize,
    s_copies: usize,
    k_exact: Option<f64>,
) -> CoreGraph {
    let s = next_pow2(s_requested);
    let levels = s.trailing_zeros() as usize + 1;
    let mut tree_map = Vec::with_capacity(s * levels * n_copies);
    for level in 0..levels {
        let width = s >> level;
        for index in 0..1 << level {
            for _ in 0..width * n_copies {
                tree_map.push(TreeNode { level, index });
            }
        }
    }
    let spec = CoreGraphSpec { s_requested, s, levels, n_copies, s_copies, k_exact, tree_map };
    let left = spec.s_side();
    let mut edges = Vec::new();
    for u in 0..left {
        let leaf = spec.leaf_of(u);
        for level in 0..levels {
            let width = s >> level;
            let index = leaf >> (levels - 1 - level);
            let start = (level * s + index * width) * n_copies;
            edges.extend((start..start + width * n_copies).map(|p| (u, left + p)));
        }
    }
    let graph = Graph::bipartite(left, left + spec.n_side(), edges).expect("core edges are valid");
    CoreGraph { graph, spec }
}

/// Core graph on a perfect binary tree with `s` leaves (rounded up to a
/// power of two).
pub fn build_core(s: usize) -> Result<CoreGraph> {
    if s < 1 {
        return domain("s must be at least 1");
    }
    Ok(core_variant(s, 1, 1, None))
}

/// Every right vertex replaced by `k ≈ β / log 2s` copies.
pub fn build_core_ncopy(s: usize, beta: f64) -> Result<CoreGraph> {
    if s < 1 {
        return domain("s must be at least 1");
    }
    let lg = log2(2 * next_pow2(s));
    if !(beta > lg) {
        return domain(format!("β = {beta} must exceed log 2s = {lg}"));
    }
    let k_exact = beta / lg;
    Ok(core_variant(s, (k_exact.round() as usize).max(1), 1, Some(k_exact)))
}

/// Every left vertex replaced by `k ≈ log 2s / β` copies.
pub fn build_core_scopy(s: usize, beta: f64) -> Result<CoreGraph> {
    if s < 1 {
        return domain("s must be at least 1");
    }
    let lg = log2(2 * next_pow2(s));
    if !(beta > 0.0 && beta <= lg) {
        return domain(format!("β = {beta} must lie in (0, log 2s = {lg}]"));
    }
    let k_exact = lg / beta;
    Ok(core_variant(s, 1, (k_exact.round() as usize).max(1), Some(k_exact)))
}
