//! Exact ordinary, unique-neighbor and wireless expansion by subset
//! enumeration.
//!
//! Subsets are enumerated as bitmasks over a *domain* (the whole vertex set
//! by default, or e.g. one side of a bipartite graph). The size bound is
//! `|S| ≤ ⌊α·|domain|⌋`. Ties between equal ratios go to the
//! lexicographically smallest witness.

use serde::Serialize;

use crate::error::{check_cap, domain, Result};
use crate::graph::Graph;
use crate::ratio::Ratio;
use crate::vertex_set::VertexSet;

pub const DEFAULT_CAP: usize = 20;
pub const WIRELESS_CAP: usize = 16;
pub const RESTRICTED_CAP: usize = 24;
/// Neighborhood masks are `u128`.
const MASK_BITS: usize = 128;

/// Which subsets an expansion minimum ranges over.
#[derive(Clone, Debug)]
pub struct Scope {
    pub alpha: Ratio,
    /// `None` means all vertices.
    pub domain: Option<VertexSet>,
    pub cap: usize,
}

impl Scope {
    pub fn new(alpha: Ratio) -> Self {
        Scope { alpha, domain: None, cap: DEFAULT_CAP }
    }

    pub fn over(alpha: Ratio, domain: VertexSet) -> Self {
        Scope { alpha, domain: Some(domain), cap: DEFAULT_CAP }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WirelessWitness {
    pub s: VertexSet,
    pub sprime: VertexSet,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpansionReport {
    pub alpha: Ratio,
    pub beta: Ratio,
    pub beta_u: Ratio,
    pub beta_w: Ratio,
    pub witness_beta: VertexSet,
    pub witness_beta_u: VertexSet,
    pub witness_beta_w: WirelessWitness,
}

struct Enumerator<'a> {
    g: &'a Graph,
    ids: Vec<usize>,
    adj: Vec<u128>,
    max_size: u32,
}

impl<'a> Enumerator<'a> {
    fn new(g: &'a Graph, scope: &Scope, cap: usize) -> Result<Self> {
        let ids: Vec<usize> = match &scope.domain {
            Some(d) => {
                g.check_ids(d)?;
                d.as_slice().to_vec()
            }
            None => (0..g.n()).collect(),
        };
        check_cap("enumeration domain", ids.len(), cap)?;
        check_cap("graph for mask enumeration", g.n(), MASK_BITS)?;
        if scope.alpha.num == 0 || scope.alpha > Ratio::integer(1) {
            return domain(format!("alpha = {} must lie in (0, 1]", scope.alpha));
        }
        let max_size = scope.alpha.floor_mul(ids.len());
        if max_size == 0 {
            return domain(format!("alpha = {} admits no nonempty set", scope.alpha));
        }
        let adj = (0..g.n())
            .map(|u| g.neighbors(u).iter().fold(0u128, |m, &v| m | 1 << v))
            .collect();
        Ok(Enumerator { g, ids, adj, max_size: max_size as u32 })
    }

    fn subsets(&self) -> impl Iterator<Item = u32> + '_ {
        (1u32..(1u32 << self.ids.len())).filter(|m| m.count_ones() <= self.max_size)
    }

    fn global(&self, mask: u32) -> u128 {
        bits(mask).fold(0, |acc, i| acc | 1 << self.ids[i])
    }

    fn union(&self, mask: u32) -> u128 {
        bits(mask).fold(0, |acc, i| acc | self.adj[self.ids[i]])
    }

    /// Vertices with exactly one neighbor among `mask`.
    fn once(&self, mask: u32) -> u128 {
        let (mut once, mut twice) = (0u128, 0u128);
        for i in bits(mask) {
            let a = self.adj[self.ids[i]];
            twice |= once & a;
            once |= a;
        }
        once & !twice
    }

    fn to_set(&self, mask: u32) -> VertexSet {
        VertexSet::from_sorted(self.g.n(), bits(mask).map(|i| self.ids[i]).collect())
    }

    /// Minimum of `score(S)/|S|` with lexicographic tie-break.
    fn minimize(&self, score: impl Fn(u32) -> u32) -> (Ratio, u32) {
        let mut best: Option<(Ratio, u32)> = None;
        for mask in self.subsets() {
            let r = Ratio::new(score(mask) as u64, mask.count_ones() as u64);
            if better_min(r, mask, best) {
                best = Some((r, mask));
            }
        }
        best.expect("at least one admissible set")
    }
}

fn better_min(r: Ratio, mask: u32, best: Option<(Ratio, u32)>) -> bool {
    match best {
        None => true,
        Some((b, bm)) => r < b || (r == b && lex_less(mask, bm)),
    }
}

fn bits(mut mask: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (mask != 0).then(|| {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            i
        })
    })
}

/// Lexicographic order of the sorted index lists encoded by two masks.
pub(crate) fn lex_less(mut a: u32, mut b: u32) -> bool {
    loop {
        if a == b {
            return false;
        }
        if a == 0 {
            return true;
        }
        if b == 0 {
            return false;
        }
        let (la, lb) = (a.trailing_zeros(), b.trailing_zeros());
        if la != lb {
            return la < lb;
        }
        a &= a - 1;
        b &= b - 1;
    }
}

/// β = min |Γ⁻(S)|/|S| over all vertices, with the default cap.
pub fn ordinary_expansion(g: &Graph, alpha: Ratio) -> Result<(Ratio, VertexSet)> {
    ordinary_expansion_in(g, &Scope::new(alpha))
}

pub fn ordinary_expansion_in(g: &Graph, scope: &Scope) -> Result<(Ratio, VertexSet)> {
    let e = Enumerator::new(g, scope, scope.cap)?;
    let (r, m) = e.minimize(|m| (e.union(m) & !e.global(m)).count_ones());
    Ok((r, e.to_set(m)))
}

/// β_u = min |Γ¹(S)|/|S|.
pub fn unique_expansion(g: &Graph, alpha: Ratio) -> Result<(Ratio, VertexSet)> {
    unique_expansion_in(g, &Scope::new(alpha))
}

pub fn unique_expansion_in(g: &Graph, scope: &Scope) -> Result<(Ratio, VertexSet)> {
    let e = Enumerator::new(g, scope, scope.cap)?;
    let (r, m) = e.minimize(|m| (e.once(m) & !e.global(m)).count_ones());
    Ok((r, e.to_set(m)))
}

/// β_w = min over S of max over S′ ⊆ S of |Γ¹_S(S′)|/|S|.
pub fn wireless_expansion(g: &Graph, alpha: Ratio) -> Result<(Ratio, WirelessWitness)> {
    wireless_expansion_in(g, &Scope::new(alpha))
}

pub fn wireless_expansion_in(g: &Graph, scope: &Scope) -> Result<(Ratio, WirelessWitness)> {
    let e = Enumerator::new(g, scope, scope.cap.min(WIRELESS_CAP))?;
    let mut best: Option<(Ratio, u32, u32)> = None;
    for mask in e.subsets() {
        let outside = !e.global(mask);
        let size = mask.count_ones() as u64;
        let ceiling = (e.union(mask) & outside).count_ones();
        // inner maximum, lexicographically smallest S′ on ties; the empty S′ scores 0
        let (mut top, mut top_sub) = (0u32, 0u32);
        let mut sub = mask;
        let mut beaten = false;
        while sub != 0 {
            let c = (e.once(sub) & outside).count_ones();
            if c > top || (c == top && lex_less(sub, top_sub)) {
                (top, top_sub) = (c, sub);
                if let Some((b, _, bm)) = best {
                    let r = Ratio::new(top as u64, size);
                    if r > b || (r == b && !lex_less(mask, bm)) {
                        beaten = true;
                        break;
                    }
                }
            }
            sub = (sub - 1) & mask;
        }
        if beaten {
            continue;
        }
        debug_assert!(top <= ceiling);
        let r = Ratio::new(top as u64, size);
        if best.is_none_or(|(b, _, bm)| r < b || (r == b && lex_less(mask, bm))) {
            best = Some((r, top_sub, mask));
        }
    }
    let (r, sub, mask) = best.expect("at least one admissible set");
    Ok((r, WirelessWitness { s: e.to_set(mask), sprime: e.to_set(sub) }))
}

/// All three measures at one α over the whole vertex set.
pub fn expansion_report(g: &Graph, alpha: Ratio) -> Result<ExpansionReport> {
    expansion_report_in(g, &Scope::new(alpha))
}

pub fn expansion_report_in(g: &Graph, scope: &Scope) -> Result<ExpansionReport> {
    let (beta, witness_beta) = ordinary_expansion_in(g, scope)?;
    let (beta_u, witness_beta_u) = unique_expansion_in(g, scope)?;
    let (beta_w, witness_beta_w) = wireless_expansion_in(g, scope)?;
    Ok(ExpansionReport {
        alpha: scope.alpha,
        beta,
        beta_u,
        beta_w,
        witness_beta,
        witness_beta_u,
        witness_beta_w,
    })
}

/// Best unique cover achievable from one fixed `S` (restricted wireless mode).
#[derive(Clone, Debug, Serialize)]
pub struct SetWireless {
    pub ratio: Ratio,
    pub covered: usize,
    pub sprime: VertexSet,
}

/// `max over S′ ⊆ s of |Γ¹_S(S′)|`, walking the subsets of `s` in Gray-code
/// order with incremental counts; works on graphs of any size.
pub fn wireless_at(g: &Graph, s: &VertexSet) -> Result<SetWireless> {
    g.check_ids(s)?;
    check_cap("restricted set", s.len(), RESTRICTED_CAP)?;
    if s.is_empty() {
        return domain("S must be nonempty");
    }
    let members = s.as_slice();
    let inside = s.flags();
    let mut counts = vec![0u32; g.n()];
    let mut unique = 0usize;
    let (mut best, mut best_mask) = (0usize, 0u32);
    let mut mask = 0u32;
    for step in 1u32..(1u32 << members.len()) {
        let bit = step.trailing_zeros();
        let u = members[bit as usize];
        let adding = mask & (1 << bit) == 0;
        mask ^= 1 << bit;
        for &v in g.neighbors(u) {
            if inside[v] {
                continue;
            }
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
    let sprime = VertexSet::from_sorted(
        g.n(),
        bits(best_mask).map(|i| members[i]).collect(),
    );
    Ok(SetWireless { ratio: Ratio::new(best as u64, s.len() as u64), covered: best, sprime })
}

/// `β_u ≥ 2β − Δ`, checked in exact arithmetic.
pub fn check_unique_lower_bound(g: &Graph, alpha: Ratio) -> Result<bool> {
    let (beta, _) = ordinary_expansion(g, alpha)?;
    let (beta_u, _) = unique_expansion(g, alpha)?;
    Ok(unique_bound_holds(beta, beta_u, g.max_degree()))
}

pub fn unique_bound_holds(beta: Ratio, beta_u: Ratio, max_degree: usize) -> bool {
    let lhs = beta_u.num as i128 * beta.den as i128;
    let rhs = (2 * beta.num as i128 - max_degree as i128 * beta.den as i128) * beta_u.den as i128;
    lhs >= rhs
}
