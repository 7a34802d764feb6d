use std::collections::HashMap;

use crate::constructions::CoreGraph;
use crate::error::{check_cap, domain, Result};

/// Largest left side the exhaustive schedule search accepts.
pub const ADVERSARY_CAP: usize = 8;

/// Fewest rounds any schedule needs, starting from a root rt joined to every
/// left vertex, until at least `(2i / log 2s)·|N|` right vertices hold the
/// message. The count starts at one: the broadcast cannot begin before rt's
/// first transmission.
///
/// Transmitters range over informed left vertices plus rt. Right vertices
/// only neighbor left vertices, so letting them transmit can only cause
/// collisions on the left and never informs another right vertex.
pub fn min_rounds_fraction(core: &CoreGraph, i: usize) -> Result<usize> {
    let spec = &core.spec;
    let left = spec.s_side();
    let right = spec.n_side();
    check_cap("left side for the schedule search", left, ADVERSARY_CAP)?;
    check_cap("right side for the schedule search", right, 64)?;
    let lg = spec.levels; // log₂ 2s
    if 2 * i > lg {
        return domain(format!("fraction index {i} exceeds log(2s)/2 = {}", lg as f64 / 2.0));
    }
    let target = (2 * i * right).div_ceil(lg) as u32;

    // unique cover of each left subset, as a mask over the right side
    let g = &core.graph;
    let adj: Vec<u64> =
        (0..left).map(|u| g.neighbors(u).iter().fold(0u64, |m, &v| m | 1 << (v - left))).collect();
    let cover: Vec<u64> = (0u32..1 << left)
        .map(|t| {
            let (mut once, mut twice) = (0u64, 0u64);
            for (u, &a) in adj.iter().enumerate() {
                if t >> u & 1 == 1 {
                    twice |= once & a;
                    once |= a;
                }
            }
            once & !twice
        })
        .collect();

    let search = Search { cover: &cover, full: (1u32 << left) - 1, target };
    let start = State { s: 0, n: 0 };
    let mut memo = HashMap::new();
    for depth in 0.. {
        if search.reaches(start, depth, &mut memo) {
            return Ok(depth.max(1));
        }
    }
    unreachable!()
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct State {
    s: u32,
    n: u64,
}

struct Search<'a> {
    cover: &'a [u64],
    full: u32,
    target: u32,
}

impl Search<'_> {
    /// Successor states of one round, dominated ones removed. A transmitting
    /// rt informs every silent left vertex; otherwise the left side is
    /// unchanged.
    fn moves(&self, st: State) -> Vec<State> {
        let mut out: Vec<State> = Vec::new();
        let mut t = st.s;
        loop {
            let n = st.n | self.cover[t as usize];
            for s in [st.s, self.full] {
                out.push(State { s, n });
            }
            if t == 0 {
                break;
            }
            t = (t - 1) & st.s;
        }
        out.sort_by_key(|x| std::cmp::Reverse((x.n.count_ones(), x.s.count_ones())));
        out.dedup();
        let mut kept: Vec<State> = Vec::new();
        for x in out {
            if !kept.iter().any(|k| x.s & !k.s == 0 && x.n & !k.n == 0) {
                kept.push(x);
            }
        }
        kept
    }

    /// Whether `target` is reachable from `st` in at most `depth` rounds.
    /// The memo stores the largest budget already known to fail.
    fn reaches(&self, st: State, depth: usize, memo: &mut HashMap<State, usize>) -> bool {
        if st.n.count_ones() >= self.target {
            return true;
        }
        if depth == 0 || memo.get(&st).is_some_and(|&d| d >= depth) {
            return false;
        }
        let moves = self.moves(st);
        // no round ever adds more than the best cover of any left subset
        let best_gain = self.cover.iter().map(|c| (c & !st.n).count_ones()).max().unwrap_or(0);
        if st.n.count_ones() as usize + depth * best_gain as usize >= self.target as usize {
            for m in moves {
                if self.reaches(m, depth - 1, memo) {
                    return true;
                }
            }
        }
        memo.insert(st, depth);
        false
    }
}
