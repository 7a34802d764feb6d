use proptest::prelude::*;
use wexp_core::graph::{external_neighborhood, unique_neighborhood};
use wexp_core::metrics::{
    check_unique_lower_bound, expansion_report, ordinary_expansion, unique_expansion, unique_bound_holds,
    wireless_at, wireless_expansion,
};
use wexp_core::random::gnp;
use wexp_core::{Graph, Ratio, VertexSet};

/// Straight from the definitions, as (numerator, denominator) minima over
/// all nonempty S with |S| ≤ ⌊αn⌋.
fn naive(g: &Graph, alpha: Ratio) -> [(u64, u64); 3] {
    let n = g.n();
    let k = (alpha.num as usize * n) / alpha.den as usize;
    let nb: Vec<u32> = (0..n).map(|v| g.neighbors(v).iter().fold(0, |m, &u| m | 1 << u)).collect();
    let count_in = |v: usize, set: u32| (nb[v] & set).count_ones();
    let mut best = [(u64::MAX, 1u64); 3];
    let mut better = |slot: usize, num: u64, den: u64| {
        let (bn, bd) = best[slot];
        if bn == u64::MAX || (num as u128) * (bd as u128) < (bn as u128) * (den as u128) {
            best[slot] = (num, den);
        }
    };
    for s in 1u32..(1 << n) {
        let size = s.count_ones() as usize;
        if size > k {
            continue;
        }
        let outside: Vec<usize> = (0..n).filter(|&v| s >> v & 1 == 0).collect();
        let ext = outside.iter().filter(|&&v| count_in(v, s) >= 1).count() as u64;
        let uni = outside.iter().filter(|&&v| count_in(v, s) == 1).count() as u64;
        let mut wl = 0u64;
        let mut sp = s;
        loop {
            wl = wl.max(outside.iter().filter(|&&v| count_in(v, sp) == 1).count() as u64);
            if sp == 0 {
                break;
            }
            sp = (sp - 1) & s;
        }
        better(0, ext, size as u64);
        better(1, uni, size as u64);
        better(2, wl, size as u64);
    }
    best
}

fn same(r: Ratio, (n, d): (u64, u64)) -> bool {
    r == Ratio::new(n, d)
}

#[test]
fn matches_naive_definitions() {
    let alphas = [Ratio::new(1, 2), Ratio::new(1, 3), Ratio::new(1, 1)];
    for seed in 0..60u64 {
        let n = 3 + (seed % 7) as usize;
        let g = gnp(n, 0.45, seed);
        let alpha = alphas[(seed % 3) as usize];
        let rep = expansion_report(&g, alpha).unwrap();
        let [b, bu, bw] = naive(&g, alpha);
        assert!(same(rep.beta, b), "seed {seed}");
        assert!(same(rep.beta_u, bu), "seed {seed}");
        assert!(same(rep.beta_w, bw), "seed {seed}");
    }
}

#[test]
fn frozen_small_graphs() {
    // values from `naive`
    let cases: [(Graph, Ratio, [(u64, u64); 3]); 4] = [
        (Graph::cycle(6), Ratio::new(1, 3), [(1, 1), (1, 1), (1, 1)]),
        (Graph::complete(4), Ratio::new(1, 4), [(3, 1), (3, 1), (3, 1)]),
        (Graph::petersen(), Ratio::new(3, 10), [(5, 3), (1, 1), (4, 3)]),
        (Graph::path(5), Ratio::new(2, 5), [(1, 2), (1, 2), (1, 2)]),
    ];
    for (g, alpha, want) in cases {
        let got = naive(&g, alpha);
        let rep = expansion_report(&g, alpha).unwrap();
        let want = want.map(|(n, d)| Ratio::new(n, d));
        assert_eq!(got.map(|(n, d)| Ratio::new(n, d)), want);
        assert_eq!([rep.beta, rep.beta_u, rep.beta_w], want);
    }
}

#[test]
fn relations_on_200_graphs() {
    let half = Ratio::new(1, 2);
    for seed in 0..200u64 {
        let n = 4 + (seed % 11) as usize;
        let p = 0.2 + 0.6 * ((seed * 7919) % 100) as f64 / 100.0;
        let g = gnp(n, p, seed);
        let rep = expansion_report(&g, half).unwrap();
        assert!(rep.beta >= rep.beta_w && rep.beta_w >= rep.beta_u, "seed {seed}");
        assert!(unique_bound_holds(rep.beta, rep.beta_u, g.max_degree()), "seed {seed}");
        assert!(check_unique_lower_bound(&g, half).unwrap());
    }
}

#[test]
fn alpha_validation() {
    let g = Graph::cycle(5);
    assert!(ordinary_expansion(&g, Ratio::new(0, 1)).is_err());
    assert!(ordinary_expansion(&g, Ratio::new(3, 2)).is_err());
    // ⌊n/10⌋ = 0 admits no set
    assert!(ordinary_expansion(&g, Ratio::new(1, 10)).is_err());
}

fn graph_strategy() -> impl Strategy<Value = Graph> {
    (2usize..10, any::<u64>(), 0.1f64..0.9).prop_map(|(n, seed, p)| gnp(n, p, seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn chain_of_measures(g in graph_strategy()) {
        let rep = expansion_report(&g, Ratio::new(1, 2)).unwrap();
        prop_assert!(rep.beta >= rep.beta_w);
        prop_assert!(rep.beta_w >= rep.beta_u);
        prop_assert!(unique_bound_holds(rep.beta, rep.beta_u, g.max_degree()));
    }

    #[test]
    fn larger_alpha_never_increases(g in graph_strategy(), a in 1u64..5) {
        let lo = Ratio::new(a, 10);
        let hi = Ratio::new(a + 5, 10);
        if let (Ok((b_lo, _)), Ok((b_hi, _))) = (ordinary_expansion(&g, lo), ordinary_expansion(&g, hi)) {
            prop_assert!(b_hi <= b_lo);
            prop_assert!(unique_expansion(&g, hi).unwrap().0 <= unique_expansion(&g, lo).unwrap().0);
            prop_assert!(wireless_expansion(&g, hi).unwrap().0 <= wireless_expansion(&g, lo).unwrap().0);
        }
    }

    #[test]
    fn witnesses_reproduce_values(g in graph_strategy()) {
        let rep = expansion_report(&g, Ratio::new(1, 2)).unwrap();
        let k = rep.witness_beta.len() as u64;
        prop_assert_eq!(rep.beta, Ratio::new(external_neighborhood(&g, &rep.witness_beta).unwrap().len() as u64, k));
        let s = &rep.witness_beta_u;
        prop_assert_eq!(rep.beta_u, Ratio::new(unique_neighborhood(&g, s, s).unwrap().len() as u64, s.len() as u64));
        let w = &rep.witness_beta_w;
        prop_assert!(w.sprime.is_subset(&w.s));
        let cov = unique_neighborhood(&g, &w.s, &w.sprime).unwrap().len() as u64;
        prop_assert_eq!(rep.beta_w, Ratio::new(cov, w.s.len() as u64));
        prop_assert_eq!(wireless_at(&g, &w.s).unwrap().ratio, rep.beta_w);
    }

    #[test]
    fn set_identities(n in 1usize..40, a in proptest::collection::vec(0usize..40, 0..20), b in proptest::collection::vec(0usize..40, 0..20)) {
        let x = VertexSet::new(n, a.into_iter().filter(|&v| v < n)).unwrap();
        let y = VertexSet::new(n, b.into_iter().filter(|&v| v < n)).unwrap();
        let u = x.union(&y);
        let i = x.intersection(&y);
        prop_assert_eq!(u.len() + i.len(), x.len() + y.len());
        prop_assert!(i.is_subset(&x) && x.is_subset(&u));
        prop_assert_eq!(x.difference(&y).union(&i), x.clone());
        prop_assert!(x.difference(&y).intersection(&y).is_empty());
    }
}
