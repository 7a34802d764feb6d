use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::view::View;
use super::{Algorithm, SpokesmanResult};
use crate::bipartite::BipartiteInstance;
use crate::error::{check_cap, Result};
use crate::vertex_set::VertexSet;

/// The degree class the sampler targets.
#[derive(Clone, Debug, Serialize)]
pub struct BucketChoice {
    /// class index: degrees in [2^j, 2^{j+1})
    pub j: u32,
    /// global ids of the class members
    pub members: Vec<usize>,
    /// sampling probability 2^{-j}
    pub prob: f64,
}

/// Restricts to right vertices of degree ≤ 2δ (δ of the view), groups them by
/// ⌊log₂ deg⌋ and returns the largest group, smallest j on ties.
fn choose_bucket(view: &View) -> BucketChoice {
    let (e, gamma) = (view.edges() as f64, view.gamma() as f64);
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (i, adj) in view.n_adj.iter().enumerate() {
        let deg = adj.len();
        if deg == 0 || deg as f64 * gamma > 2.0 * e + 1e-9 {
            continue;
        }
        let j = (usize::BITS - 1 - deg.leading_zeros()) as usize;
        if groups.len() <= j {
            groups.resize(j + 1, Vec::new());
        }
        groups[j].push(view.n_ids[i]);
    }
    let (j, members) = groups
        .into_iter()
        .enumerate()
        .fold((0, Vec::new()), |(bj, bm), (j, m)| if m.len() > bm.len() { (j, m) } else { (bj, bm) });
    BucketChoice { j: j as u32, members, prob: 0.5f64.powi(j as i32) }
}

pub fn bucket_choice(inst: &BipartiteInstance) -> BucketChoice {
    choose_bucket(&View::full(inst))
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

fn sample_view(inst: &BipartiteInstance, view: &View, trials: usize, seed: u64) -> SpokesmanResult {
    let choice = choose_bucket(view);
    let n = inst.graph().n();
    let mut best: Option<SpokesmanResult> = None;
    for trial in 0..trials.max(1) {
        let mut rng = trial_rng(seed, trial);
        let picked = view.s_ids.iter().copied().filter(|_| rng.gen_bool(choice.prob));
        let chosen = VertexSet::new(n, picked).expect("ids in range");
        let res = SpokesmanResult::new(inst, Algorithm::Randomized, chosen, 0.0);
        if best.as_ref().is_none_or(|b| res.covered > b.covered) {
            best = Some(res);
        }
    }
    let mut res = best.expect("at least one trial");
    res.certified_bound = (-3.0f64).exp() * choice.members.len() as f64;
    res.trials_used = Some(trials.max(1));
    res
}

/// Samples every left vertex with probability 2^{-j} for the largest
/// low-degree class j; best of `trials` independent samples, each drawn from
/// its own stream of `seed`.
pub fn select_randomized(inst: &BipartiteInstance, trials: usize, seed: u64) -> SpokesmanResult {
    sample_view(inst, &View::full(inst), trials, seed)
}

/// Keeps left vertices of degree ≤ 2δ_S, thins them greedily to ones that
/// each reach a new right vertex, then samples on that induced piece.
pub fn select_smallbeta(inst: &BipartiteInstance, trials: usize, seed: u64) -> SpokesmanResult {
    let g = inst.graph();
    let (e, s) = (inst.edges() as f64, inst.s() as f64);
    let light: Vec<usize> = (0..inst.s()).filter(|&u| g.degree(u) as f64 * s <= 2.0 * e + 1e-9).collect();
    let mut reach = vec![false; g.n()];
    for &u in &light {
        g.neighbors(u).iter().for_each(|&v| reach[v] = true);
    }
    let reach_ids: Vec<usize> = (inst.s()..g.n()).filter(|&v| reach[v]).collect();
    let mut seen = vec![false; g.n()];
    let mut thin = Vec::new();
    for &u in &light {
        if g.neighbors(u).iter().any(|&v| !seen[v]) {
            g.neighbors(u).iter().for_each(|&v| seen[v] = true);
            thin.push(u);
        }
    }
    let view = View::induced(inst, &thin, &reach_ids);
    let mut res = sample_view(inst, &view, trials, seed);
    res.algorithm = Algorithm::Smallbeta;
    res
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactExpectation {
    pub j: u32,
    pub bucket_size: usize,
    pub prob: f64,
    /// E|Γ¹_S(S′) ∩ N_j| over the whole sample space
    pub expected: f64,
}

/// Sums over all 2^|S| samples, weighting each by its probability.
pub fn exact_bucket_expectation(inst: &BipartiteInstance) -> Result<ExactExpectation> {
    check_cap("S side for exact expectation", inst.s(), 20)?;
    let choice = bucket_choice(inst);
    let g = inst.graph();
    let masks: Vec<u32> = choice
        .members
        .iter()
        .map(|&v| g.neighbors(v).iter().fold(0u32, |m, &u| m | 1 << u))
        .collect();
    let s = inst.s() as i32;
    let p = choice.prob;
    let mut expected = 0.0;
    for sample in 0u32..(1u32 << s) {
        let k = sample.count_ones() as i32;
        let weight = p.powi(k) * (1.0 - p).powi(s - k);
        if weight == 0.0 {
            continue;
        }
        let hits = masks.iter().filter(|&&m| (m & sample).count_ones() == 1).count();
        expected += weight * hits as f64;
    }
    Ok(ExactExpectation { j: choice.j, bucket_size: choice.members.len(), prob: p, expected })
}
