use serde::Serialize;

use super::view::View;
use super::{Algorithm, SpokesmanResult};
use crate::bipartite::BipartiteInstance;
use crate::error::{domain, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

pub const DEFAULT_C: f64 = 3.59112;
pub const DEFAULT_T: f64 = 2.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Place {
    Tmp,
    Uni,
    Many,
}

/// Snapshot of the partition procedure, in global vertex ids.
#[derive(Clone, Debug, Serialize)]
pub struct PartitionState {
    pub s_uni: VertexSet,
    pub s_tmp: VertexSet,
    pub n_uni: VertexSet,
    pub n_many: VertexSet,
    pub n_tmp: VertexSet,
    /// edges from s_tmp into n_uni
    pub e_uni: usize,
    /// edges from s_tmp into n_tmp
    pub e_tmp: usize,
}

impl PartitionState {
    /// Recounts P1–P3 (and P4 when `terminal`) plus disjointness directly on
    /// `g`; returns a description of every violated condition.
    pub fn violations(&self, g: &Graph, terminal: bool) -> Vec<String> {
        let mut out = Vec::new();
        let count_in = |v: usize, set: &VertexSet| g.neighbors(v).iter().filter(|&&w| set.contains(w)).count();
        if !self.s_uni.intersection(&self.s_tmp).is_empty()
            || !self.n_uni.intersection(&self.n_many).is_empty()
            || !self.n_uni.intersection(&self.n_tmp).is_empty()
            || !self.n_many.intersection(&self.n_tmp).is_empty()
        {
            out.push("sets overlap".to_string());
        }
        if let Some(v) = self.n_uni.iter().find(|&v| count_in(v, &self.s_uni) != 1) {
            out.push(format!("P1: {v} lacks a unique neighbor in s_uni"));
        }
        if let Some(v) =
            self.n_tmp.iter().find(|&v| count_in(v, &self.s_tmp) == 0 || count_in(v, &self.s_uni) > 0)
        {
            out.push(format!("P2: {v} in n_tmp has the wrong neighbors"));
        }
        if self.n_uni.len() < self.n_many.len() {
            out.push(format!("P3: |n_uni| = {} < |n_many| = {}", self.n_uni.len(), self.n_many.len()));
        }
        let e_uni: usize = self.s_tmp.iter().map(|u| count_in(u, &self.n_uni)).sum();
        let e_tmp: usize = self.s_tmp.iter().map(|u| count_in(u, &self.n_tmp)).sum();
        if (e_uni, e_tmp) != (self.e_uni, self.e_tmp) {
            out.push(format!("edge counts stored ({}, {}) but recounted ({e_uni}, {e_tmp})", self.e_uni, self.e_tmp));
        }
        if terminal && !self.n_tmp.is_empty() && e_tmp > 2 * e_uni {
            out.push(format!("P4: e_tmp = {e_tmp} > 2·e_uni = {}", 2 * e_uni));
        }
        out
    }
}

struct Run {
    s_place: Vec<Place>,
    n_place: Vec<Place>,
}

/// Greedy partition on a view: repeatedly move the left vertex with the
/// largest gain |N_tmp(v)| − 2|N_uni(v)| (lowest index on ties) into S_uni
/// while the gain is positive.
fn run_partition(view: &View, mut observe: impl FnMut(&Run)) -> Run {
    let mut run = Run {
        s_place: vec![Place::Tmp; view.s_ids.len()],
        n_place: vec![Place::Tmp; view.gamma()],
    };
    observe(&run);
    loop {
        let mut best: Option<(i64, usize)> = None;
        for (i, adj) in view.s_adj.iter().enumerate() {
            if run.s_place[i] != Place::Tmp {
                continue;
            }
            let gain = adj.iter().fold(0i64, |g, &v| match run.n_place[v] {
                Place::Tmp => g + 1,
                Place::Uni => g - 2,
                Place::Many => g,
            });
            if best.is_none_or(|(b, _)| gain > b) {
                best = Some((gain, i));
            }
        }
        let Some((gain, v)) = best else { break };
        if gain <= 0 {
            break;
        }
        run.s_place[v] = Place::Uni;
        for &w in &view.s_adj[v] {
            run.n_place[w] = match run.n_place[w] {
                Place::Uni => Place::Many,
                Place::Tmp => Place::Uni,
                Place::Many => Place::Many,
            };
        }
        observe(&run);
    }
    run
}

fn snapshot(view: &View, run: &Run, universe: usize) -> PartitionState {
    let pick = |ids: &[usize], places: &[Place], want: Place| {
        VertexSet::new(universe, ids.iter().zip(places).filter(|(_, &p)| p == want).map(|(&v, _)| v))
            .expect("ids in range")
    };
    let mut e_uni = 0;
    let mut e_tmp = 0;
    for (i, adj) in view.s_adj.iter().enumerate() {
        if run.s_place[i] == Place::Tmp {
            for &w in adj {
                match run.n_place[w] {
                    Place::Uni => e_uni += 1,
                    Place::Tmp => e_tmp += 1,
                    Place::Many => {}
                }
            }
        }
    }
    PartitionState {
        s_uni: pick(&view.s_ids, &run.s_place, Place::Uni),
        s_tmp: pick(&view.s_ids, &run.s_place, Place::Tmp),
        n_uni: pick(&view.n_ids, &run.n_place, Place::Uni),
        n_many: pick(&view.n_ids, &run.n_place, Place::Many),
        n_tmp: pick(&view.n_ids, &run.n_place, Place::Tmp),
        e_uni,
        e_tmp,
    }
}

pub fn partition(inst: &BipartiteInstance) -> PartitionState {
    let view = View::full(inst);
    let run = run_partition(&view, |_| {});
    snapshot(&view, &run, inst.graph().n())
}

/// Every intermediate state, starting with the initial one.
pub fn partition_trace(inst: &BipartiteInstance) -> Vec<PartitionState> {
    let view = View::full(inst);
    let n = inst.graph().n();
    let mut states = Vec::new();
    run_partition(&view, |run| states.push(snapshot(&view, run, n)));
    states
}

fn partition_s_uni(inst: &BipartiteInstance, view: &View) -> (PartitionState, VertexSet) {
    let run = run_partition(view, |_| {});
    let state = snapshot(view, &run, inst.graph().n());
    let chosen = state.s_uni.clone();
    (state, chosen)
}

/// Repeatedly takes the right vertex with the fewest remaining left
/// neighbors and keeps its lowest-id neighbor as a spokesman.
pub fn select_naive(inst: &BipartiteInstance) -> SpokesmanResult {
    let view = View::full(inst);
    let mut s_tmp = vec![true; view.s_ids.len()];
    let mut n_tmp = vec![true; view.gamma()];
    let mut chosen = Vec::new();
    let live = |v: usize, s_tmp: &[bool]| -> Vec<usize> {
        view.n_adj[v].iter().copied().filter(|&u| s_tmp[u]).collect()
    };
    loop {
        let pick = (0..view.gamma())
            .filter(|&v| n_tmp[v])
            .min_by_key(|&v| (live(v, &s_tmp).len(), v));
        let Some(v) = pick else { break };
        let group = live(v, &s_tmp);
        let w = group[0];
        // everything still pending that sees w leaves: right vertices whose
        // live neighborhood equals v's are now uniquely covered by w, the
        // rest would collide at w
        for x in 0..view.gamma() {
            if n_tmp[x] && view.n_adj[x].contains(&w) {
                n_tmp[x] = false;
            }
        }
        for &u in &group {
            s_tmp[u] = false;
        }
        chosen.push(view.s_ids[w]);
    }
    let chosen = VertexSet::new(inst.graph().n(), chosen).expect("ids in range");
    let bound = inst.gamma() as f64 / inst.max_deg_s() as f64;
    SpokesmanResult::new(inst, Algorithm::Naive, chosen, bound)
}

/// Partition on the right vertices of degree at most 2δ_N.
pub fn select_avgdeg(inst: &BipartiteInstance) -> SpokesmanResult {
    let full = View::full(inst);
    let low = full.low_degree_n(2.0);
    let view = View::induced(inst, &full.s_ids, &low);
    let (_, chosen) = partition_s_uni(inst, &view);
    let bound = inst.gamma() as f64 / (8.0 * inst.delta_n());
    SpokesmanResult::new(inst, Algorithm::Avgdeg, chosen, bound)
}

/// Degree buckets `[c^{i−1}, c^i)`, optionally only over right vertices of
/// degree ≤ t·δ_N; partition runs on each bucket and the best cover wins.
/// The bound is the per-bucket guarantee of the largest bucket,
/// `|N^(j)|/(2(1+c))`.
pub fn select_bucket(inst: &BipartiteInstance, c: f64, t: Option<f64>) -> Result<SpokesmanResult> {
    if !(c > 1.0) || !c.is_finite() {
        return domain(format!("bucket base c = {c} must exceed 1"));
    }
    if let Some(t) = t {
        if !(t > 1.0) {
            return domain(format!("t = {t} must exceed 1"));
        }
    }
    let full = View::full(inst);
    let pool = match t {
        Some(t) => full.low_degree_n(t),
        None => full.n_ids.clone(),
    };
    let g = inst.graph();
    let mut buckets: Vec<Vec<usize>> = Vec::new();
    for &v in &pool {
        let i = bucket_index(g.degree(v), c);
        if buckets.len() < i {
            buckets.resize(i, Vec::new());
        }
        buckets[i - 1].push(v);
    }
    let mut best: Option<SpokesmanResult> = None;
    for bucket in buckets.iter().filter(|b| !b.is_empty()) {
        let view = View::induced(inst, &full.s_ids, bucket);
        let (_, chosen) = partition_s_uni(inst, &view);
        let res = SpokesmanResult::new(inst, Algorithm::Bucket, chosen, 0.0);
        if best.as_ref().is_none_or(|b| res.covered > b.covered) {
            best = Some(res);
        }
    }
    let largest = buckets.iter().map(Vec::len).max().unwrap_or(0);
    let mut res = best.expect("every instance has a right vertex");
    res.certified_bound = largest as f64 / (2.0 * (1.0 + c));
    Ok(res)
}

/// Index `i ≥ 1` with `c^{i−1} ≤ deg < c^i`.
pub(crate) fn bucket_index(deg: usize, c: f64) -> usize {
    let (mut i, mut upper) = (1usize, c);
    while deg as f64 >= upper {
        upper *= c;
        i += 1;
    }
    i
}

/// Partition, then recurse into `(S_tmp, N_tmp)`; every `S_uni` along the
/// way, plus a best single vertex once the right side has at most 9
/// vertices, is a candidate and the best full-instance cover wins.
pub fn select_tight(inst: &BipartiteInstance) -> SpokesmanResult {
    let mut candidates = Vec::new();
    let mut view = View::full(inst);
    let guard = inst.gamma();
    for _depth in 0..=guard {
        if view.gamma() <= 9 {
            let top = (0..view.s_ids.len()).max_by_key(|&i| (view.s_adj[i].len(), std::cmp::Reverse(i)));
            if let Some(i) = top.filter(|&i| !view.s_adj[i].is_empty()) {
                candidates.push(vec![view.s_ids[i]]);
            }
        }
        let (state, chosen) = partition_s_uni(inst, &view);
        candidates.push(chosen.as_slice().to_vec());
        if state.n_tmp.is_empty() {
            break;
        }
        debug_assert!(state.n_tmp.len() < view.gamma());
        view = View::induced(inst, state.s_tmp.as_slice(), state.n_tmp.as_slice());
    }
    let n = inst.graph().n();
    let mut best: Option<SpokesmanResult> = None;
    for ids in candidates {
        let res = SpokesmanResult::new(inst, Algorithm::Tight, VertexSet::new(n, ids).expect("in range"), 0.0);
        if best.as_ref().is_none_or(|b| res.covered > b.covered) {
            best = Some(res);
        }
    }
    let mut res = best.expect("at least one candidate");
    res.certified_bound = tight_bound(inst.gamma() as f64, inst.delta_n());
    res
}

/// max(γ/(9 log₂ 2δ), min(γ/(9 log₂ δ), γ/20) when δ ≥ 2).
pub fn tight_bound(gamma: f64, delta: f64) -> f64 {
    let base = gamma / (9.0 * (2.0 * delta).log2());
    if delta >= 2.0 {
        base.max((gamma / (9.0 * delta.log2())).min(gamma / 20.0))
    } else {
        base
    }
}
