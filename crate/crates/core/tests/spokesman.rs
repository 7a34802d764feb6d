use std::time::Instant;

use proptest::prelude::*;
use wexp_core::graph::unique_neighborhood;
use wexp_core::random::bipartite_instance_upto;
use wexp_core::spokesman::{
    bucket_choice, exact_bucket_expectation, meets, oracle_exact, partition, partition_trace, portfolio,
    select_avgdeg, select_best, select_bucket, select_naive, select_randomized, select_smallbeta, select_tight,
    SpokesmanResult, DEFAULT_C, DEFAULT_T,
};
use wexp_core::{BipartiteInstance, Graph};

fn instances(count: u64) -> impl Iterator<Item = BipartiteInstance> {
    (0..count).map(|seed| bipartite_instance_upto(12, 24, seed))
}

fn recount(inst: &BipartiteInstance, res: &SpokesmanResult) -> usize {
    unique_neighborhood(inst.graph(), &inst.s_side(), &res.chosen).unwrap().len()
}

#[test]
fn partition_properties_every_step() {
    for (seed, inst) in instances(1000).enumerate() {
        let g = inst.graph();
        let trace = partition_trace(&inst);
        let (last, steps) = trace.split_last().unwrap();
        for st in steps {
            assert!(st.violations(g, false).is_empty(), "seed {seed}: {:?}", st.violations(g, false));
        }
        assert!(last.violations(g, true).is_empty(), "seed {seed}: {:?}", last.violations(g, true));
        let fin = partition(&inst);
        assert_eq!(fin.s_uni, last.s_uni);
        assert_eq!(fin.n_uni.len() + fin.n_many.len() + fin.n_tmp.len(), inst.gamma());
    }
}

#[test]
fn selector_guarantees() {
    let mut violations = 0;
    for (seed, inst) in instances(1000).enumerate() {
        let gamma = inst.gamma() as f64;
        let oracle = oracle_exact(&inst).unwrap();
        let naive = select_naive(&inst);
        let avg = select_avgdeg(&inst);
        let tight = select_tight(&inst);
        let bucket = select_bucket(&inst, DEFAULT_C, Some(DEFAULT_T)).unwrap();
        let rand = select_randomized(&inst, 10, seed as u64);
        let small = select_smallbeta(&inst, 10, seed as u64);
        violations += !meets(naive.covered, gamma / inst.max_deg_s() as f64) as usize;
        violations += !meets(avg.covered, gamma / (8.0 * inst.delta_n())) as usize;
        violations += !meets(tight.covered, gamma / (9.0 * (2.0 * inst.delta_n()).log2())) as usize;
        for res in [&naive, &avg, &tight, &bucket, &rand, &small] {
            assert_eq!(res.covered, recount(&inst, res), "seed {seed} {:?}", res.algorithm);
            assert!(res.covered <= oracle.covered, "seed {seed} {:?}", res.algorithm);
        }
        for res in [&naive, &avg, &tight, &bucket] {
            assert!(res.meets_bound(), "seed {seed} {:?}: {} < {}", res.algorithm, res.covered, res.certified_bound);
        }
    }
    assert_eq!(violations, 0);
}

/// Unique cover by brute force over every subset of S.
fn brute_max(inst: &BipartiteInstance) -> usize {
    let g = inst.graph();
    let s = inst.s();
    let masks: Vec<u32> = (s..g.n()).map(|v| g.neighbors(v).iter().fold(0, |m, &u| m | 1 << u)).collect();
    (0u32..(1 << s)).map(|t| masks.iter().filter(|m| (*m & t).count_ones() == 1).count()).max().unwrap()
}

#[test]
fn oracle_matches_brute_force() {
    for inst in instances(300) {
        let o = oracle_exact(&inst).unwrap();
        assert_eq!(o.covered, brute_max(&inst));
        assert_eq!(recount(&inst, &o), o.covered);
    }
}

#[test]
fn frozen_oracle_values() {
    // K_{2,3}: one spokesman covers all three; a 3-matching covers 3;
    // values from brute_max
    let k23 = BipartiteInstance::new(Graph::complete_bipartite(2, 3)).unwrap();
    assert_eq!(oracle_exact(&k23).unwrap().covered, 3);
    let m = BipartiteInstance::new(Graph::bipartite(3, 6, [(0, 3), (1, 4), (2, 5)]).unwrap()).unwrap();
    assert_eq!(oracle_exact(&m).unwrap().covered, 3);
    let p = BipartiteInstance::new(Graph::bipartite(2, 5, [(0, 2), (0, 3), (1, 3), (1, 4)]).unwrap()).unwrap();
    assert_eq!(brute_max(&p), 2);
    assert_eq!(oracle_exact(&p).unwrap().covered, 2);
}

/// Σ over bucket members of P[exactly one neighbor sampled].
fn closed_form(inst: &BipartiteInstance, members: &[usize], p: f64) -> f64 {
    members
        .iter()
        .map(|&v| {
            let d = inst.graph().degree(v) as i32;
            d as f64 * p * (1.0 - p).powi(d - 1)
        })
        .sum()
}

#[test]
fn randomized_expectation_exact() {
    let start = Instant::now();
    let mut checked = 0;
    for seed in 0..20u64 {
        let inst = bipartite_instance_upto(12, 24, 5000 + seed);
        let choice = bucket_choice(&inst);
        let delta = inst.delta_n();
        for &v in &choice.members {
            let d = inst.graph().degree(v);
            assert!(d >> choice.j == 1 && d as f64 <= 2.0 * delta + 1e-9);
        }
        let ex = exact_bucket_expectation(&inst).unwrap();
        assert!((ex.expected - closed_form(&inst, &choice.members, ex.prob)).abs() < 1e-9);
        assert!(ex.expected >= (-3.0f64).exp() * ex.bucket_size as f64, "seed {seed}");
        checked += 1;
    }
    assert_eq!(checked, 20);
    assert!(start.elapsed().as_secs() < 120);
}

#[test]
fn best_and_portfolio() {
    for (seed, inst) in instances(50).enumerate() {
        let all = portfolio(&inst, seed as u64);
        let best = select_best(&inst, seed as u64);
        assert_eq!(best.covered, all.iter().map(|r| r.covered).max().unwrap());
        assert!(best.meets_bound());
    }
}

#[test]
fn bucket_rejects_bad_parameters() {
    let inst = bipartite_instance_upto(6, 6, 1);
    assert!(select_bucket(&inst, 1.0, None).is_err());
    assert!(select_bucket(&inst, 3.0, Some(0.5)).is_err());
    assert!(select_bucket(&inst, 3.0, None).unwrap().meets_bound());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn deterministic_selectors_are_pure(seed in any::<u64>()) {
        let inst = bipartite_instance_upto(10, 20, seed);
        prop_assert_eq!(select_naive(&inst).chosen, select_naive(&inst).chosen);
        prop_assert_eq!(select_tight(&inst).chosen, select_tight(&inst).chosen);
        prop_assert_eq!(select_avgdeg(&inst).chosen, select_avgdeg(&inst).chosen);
        prop_assert_eq!(select_randomized(&inst, 5, seed).chosen, select_randomized(&inst, 5, seed).chosen);
    }

    #[test]
    fn covered_is_recounted(seed in any::<u64>()) {
        let inst = bipartite_instance_upto(12, 24, seed);
        let oracle = oracle_exact(&inst).unwrap();
        for res in portfolio(&inst, seed) {
            prop_assert_eq!(res.covered, recount(&inst, &res));
            prop_assert!(res.covered <= oracle.covered);
            prop_assert!(res.chosen.is_subset(&inst.s_side()));
        }
    }
}
