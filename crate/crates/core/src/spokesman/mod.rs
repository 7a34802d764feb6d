//! Choosing S′ ⊆ S to maximize |Γ¹_S(S′)| in a bipartite instance.
//!
//! Every selector returns the chosen set, its recounted unique cover on the
//! full instance, and the lower bound its analysis guarantees.

mod partition;
mod randomized;
mod view;

use serde::Serialize;

use crate::bipartite::BipartiteInstance;
use crate::error::{check_cap, Result};
use crate::metrics::lex_less;
use crate::vertex_set::VertexSet;

pub use self::partition::{
    partition, partition_trace, select_avgdeg, select_bucket, select_naive, select_tight,
    PartitionState, DEFAULT_C, DEFAULT_T,
};
pub use self::randomized::{
    bucket_choice, exact_bucket_expectation, select_randomized, select_smallbeta, BucketChoice,
    ExactExpectation,
};

pub const ORACLE_CAP: usize = 20;
pub const DEFAULT_TRIALS: usize = 100;
/// Absorbs float error when comparing an integer count to a real bound.
pub const BOUND_SLACK: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Oracle,
    Randomized,
    Smallbeta,
    Naive,
    Avgdeg,
    Bucket,
    Tight,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Oracle => "oracle",
            Algorithm::Randomized => "rand",
            Algorithm::Smallbeta => "smallbeta",
            Algorithm::Naive => "naive",
            Algorithm::Avgdeg => "avgdeg",
            Algorithm::Bucket => "bucket",
            Algorithm::Tight => "tight",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpokesmanResult {
    pub algorithm: Algorithm,
    pub chosen: VertexSet,
    pub covered: usize,
    pub certified_bound: f64,
    pub trials_used: Option<usize>,
}

impl SpokesmanResult {
    pub(crate) fn new(
        inst: &BipartiteInstance,
        algorithm: Algorithm,
        chosen: VertexSet,
        certified_bound: f64,
    ) -> Self {
        let covered = inst.covered(&chosen);
        SpokesmanResult { algorithm, chosen, covered, certified_bound, trials_used: None }
    }

    pub fn meets_bound(&self) -> bool {
        meets(self.covered, self.certified_bound)
    }
}

/// `covered ≥ ceil(bound − 1e-9)`.
pub fn meets(covered: usize, bound: f64) -> bool {
    covered as f64 >= (bound - BOUND_SLACK).ceil()
}

/// Exhaustive maximum over all 2^|S| subsets; lexicographically smallest
/// maximizer.
pub fn oracle_exact(inst: &BipartiteInstance) -> Result<SpokesmanResult> {
    check_cap("S side for the exact oracle", inst.s(), ORACLE_CAP)?;
    let g = inst.graph();
    let s = inst.s();
    let mut counts = vec![0u32; g.n()];
    let (mut unique, mut best, mut best_mask, mut mask) = (0usize, 0usize, 0u32, 0u32);
    for step in 1u32..(1u32 << s) {
        let bit = step.trailing_zeros();
        let adding = mask & (1 << bit) == 0;
        mask ^= 1 << bit;
        for &v in g.neighbors(bit as usize) {
            let c = &mut counts[v];
            if adding {
                match *c {
                    0 => unique += 1,
                    1 => unique -= 1,
                    _ => {}
                }
                *c += 1;
            } else {
                match *c {
                    1 => unique -= 1,
                    2 => unique += 1,
                    _ => {}
                }
                *c -= 1;
            }
        }
        if unique > best || (unique == best && lex_less(mask, best_mask)) {
            (best, best_mask) = (unique, mask);
        }
    }
    let chosen = VertexSet::new(g.n(), (0..s).filter(|&i| best_mask >> i & 1 == 1))?;
    let res = SpokesmanResult::new(inst, Algorithm::Oracle, chosen, best as f64);
    debug_assert_eq!(res.covered, best);
    Ok(res)
}

/// Portfolio: the deterministic selectors plus both randomized ones; the
/// largest cover wins (earlier entries win ties) and the bound is the largest
/// individual bound.
pub fn select_best(inst: &BipartiteInstance, seed: u64) -> SpokesmanResult {
    let runs = portfolio(inst, seed);
    let bound = runs.iter().map(|r| r.certified_bound).fold(0.0, f64::max);
    let mut best = runs[0].clone();
    for r in &runs[1..] {
        if r.covered > best.covered {
            best = r.clone();
        }
    }
    best.certified_bound = bound;
    best
}

pub fn portfolio(inst: &BipartiteInstance, seed: u64) -> Vec<SpokesmanResult> {
    vec![
        select_naive(inst),
        select_avgdeg(inst),
        select_bucket(inst, DEFAULT_C, Some(DEFAULT_T)).expect("default c is valid"),
        select_tight(inst),
        select_randomized(inst, DEFAULT_TRIALS, seed),
        select_smallbeta(inst, DEFAULT_TRIALS, seed),
    ]
}

/// Large-δ bound: when `ε ln δ − ln ln δ − ln(1+ε) − 1 ≥ 0`, some S′
/// covers at least `0.20087/((1+ε) log₂ δ)·γ`. Advisory only.
pub fn large_delta_advisory(inst: &BipartiteInstance, epsilon: f64) -> Option<f64> {
    let delta = inst.delta_n();
    if delta <= 1.0 || epsilon <= 0.0 {
        return None;
    }
    let lnd = delta.ln();
    let condition = epsilon * lnd - lnd.ln() - (1.0 + epsilon).ln() - 1.0;
    (lnd > 0.0 && condition >= 0.0)
        .then(|| 0.20087 / ((1.0 + epsilon) * delta.log2()) * inst.gamma() as f64)
}

/// `γ/(2(1+c))·(1 − 1/t)`, valid when every large enough subset of N has
/// average degree at least `tδ/c`. That hypothesis is not checked.
pub fn ct_advisory(inst: &BipartiteInstance, c: f64, t: f64) -> Option<f64> {
    (c > 1.0 && t > 1.0).then(|| inst.gamma() as f64 / (2.0 * (1.0 + c)) * (1.0 - 1.0 / t))
}
