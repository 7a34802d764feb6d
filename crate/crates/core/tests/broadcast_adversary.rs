use std::collections::{HashSet, VecDeque};

use wexp_core::constructions::{build_core, CoreGraph};
use wexp_core::radiosim::min_rounds_fraction;

/// Breadth-first search over every (informed S, informed N) state with no
/// pruning; transmitters are any subset of informed S plus the root.
fn bfs_rounds(core: &CoreGraph, target: usize) -> usize {
    let g = &core.graph;
    let s = core.spec.s_side();
    let n_of: Vec<u64> = (0..s)
        .map(|u| g.neighbors(u).iter().fold(0u64, |m, &v| m | 1 << (v - s)))
        .collect();
    let full_s = (1u32 << s) - 1;
    let start = (0u32, 0u64);
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([(start, 0usize)]);
    while let Some(((si, ni), d)) = queue.pop_front() {
        if (ni.count_ones() as usize) >= target {
            return d;
        }
        for root in [false, true] {
            let mut t = si;
            loop {
                // S side: informed iff exactly one transmitting neighbor, and
                // the root is its only possible transmitting neighbor
                let s_next = if root { si | (full_s & !t) | t } else { si };
                let mut once = 0u64;
                let mut twice = 0u64;
                for u in 0..s {
                    if t >> u & 1 == 1 {
                        twice |= once & n_of[u];
                        once |= n_of[u];
                    }
                }
                let next = (s_next, ni | (once & !twice));
                if seen.insert(next) {
                    queue.push_back((next, d + 1));
                }
                if t == 0 {
                    break;
                }
                t = (t - 1) & si;
            }
        }
    }
    unreachable!("target always reachable")
}

#[test]
fn exhaustive_search_matches_bfs() {
    for s in [2usize, 4, 8] {
        let core = build_core(s).unwrap();
        let levels = core.spec.levels;
        let n = core.spec.n_side();
        for i in 0..=levels / 2 {
            let target = (2 * i * n).div_ceil(levels);
            let oracle = bfs_rounds(&core, target).max(1);
            assert_eq!(min_rounds_fraction(&core, i).unwrap(), oracle, "s={s} i={i}");
        }
    }
}

#[test]
fn frozen_values() {
    // from bfs_rounds above
    let expect = [(2, 0, 1), (2, 1, 3), (4, 0, 1), (4, 1, 3), (8, 0, 1), (8, 1, 3), (8, 2, 5)];
    for (s, i, r) in expect {
        let core = build_core(s).unwrap();
        assert_eq!(min_rounds_fraction(&core, i).unwrap(), r, "s={s} i={i}");
    }
}

#[test]
fn at_least_one_plus_i() {
    for s in [4usize, 8] {
        let core = build_core(s).unwrap();
        for i in 0..=core.spec.levels / 2 {
            assert!(min_rounds_fraction(&core, i).unwrap() > i);
        }
    }
}

#[test]
fn inadmissible_fraction_rejected() {
    let core = build_core(4).unwrap();
    assert!(min_rounds_fraction(&core, core.spec.levels / 2 + 1).is_err());
}
