use wexp_core::constructions::{
    build_bad_unique, build_broadcast_chain, build_core, build_core_ncopy, build_core_scopy,
    build_generalized_core, build_generalized_core_relaxed, plug_worst_case, Branch, PlugParams,
};
use wexp_core::graph::unique_neighborhood;
use wexp_core::metrics::{ordinary_expansion, unique_expansion_in, wireless_at, Scope};
use wexp_core::{Graph, Ratio, VertexSet};

fn subset(n: usize, ids: &[usize], mask: u32) -> VertexSet {
    VertexSet::new(n, ids.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v)).unwrap()
}

/// min over nonempty S ⊆ left side of |Γ¹(S)| / |S|, from the adjacency
/// lists directly.
fn naive_left_unique(g: &Graph, s: usize) -> Ratio {
    let mut best: Option<Ratio> = None;
    for mask in 1u32..(1 << s) {
        let mut hits = vec![0u32; g.n()];
        for u in (0..s).filter(|&u| mask >> u & 1 == 1) {
            g.neighbors(u).iter().for_each(|&v| hits[v] += 1);
        }
        let r = Ratio::new(hits.iter().filter(|&&h| h == 1).count() as u64, mask.count_ones() as u64);
        best = Some(best.map_or(r, |b| b.min(r)));
    }
    best.unwrap()
}

#[test]
fn bad_unique_is_tight() {
    for (delta, beta, s) in [(4, 2, 4), (4, 3, 5), (6, 4, 4), (4, 3, 3), (2, 2, 3)] {
        let (g, cert) = build_bad_unique(delta, beta, s).unwrap();
        assert_eq!(cert.n_side, s * beta);
        assert!((0..s).all(|u| g.degree(u) == delta));
        for i in 0..s {
            let j = (i + 1) % s;
            let shared = g.neighbors(i).iter().filter(|v| g.neighbors(j).contains(v)).count();
            assert_eq!(shared, delta - beta);
        }
        let left = g.left_side().unwrap();
        let (bu, _) = unique_expansion_in(&g, &Scope::over(Ratio::integer(1), left.clone())).unwrap();
        assert_eq!(bu, Ratio::integer((2 * beta - delta) as u64));
        assert_eq!(bu, naive_left_unique(&g, s));
        let w = wireless_at(&g, &left).unwrap();
        assert!(w.ratio >= Ratio::integer(cert.wireless_lower as u64), "({delta},{beta},{s})");
    }
}

#[test]
fn ncopy_scales_unique_cover_by_k() {
    let base = build_core(4).unwrap();
    let nc = build_core_ncopy(4, 6.0).unwrap();
    let k = nc.spec.n_copies;
    assert_eq!(k, 2);
    assert_eq!(nc.spec.n_side(), 24);
    assert!((0..4).all(|u| nc.graph.degree(u) == 14));
    let ids: Vec<usize> = (0..4).collect();
    let (fb, fc) = (VertexSet::range(base.graph.n(), 0..4), VertexSet::range(nc.graph.n(), 0..4));
    let mut best = 0;
    for mask in 0u32..16 {
        let a = unique_neighborhood(&base.graph, &fb, &subset(base.graph.n(), &ids, mask)).unwrap().len();
        let b = unique_neighborhood(&nc.graph, &fc, &subset(nc.graph.n(), &ids, mask)).unwrap().len();
        assert_eq!(b, k * a);
        best = best.max(b);
    }
    assert!(best <= 16);
    assert!(build_core_ncopy(4, 3.0).is_err());
}

#[test]
fn scopy_keeps_unique_cover() {
    let base = build_core(4).unwrap();
    let sc = build_core_scopy(4, 1.5).unwrap();
    let k = sc.spec.s_copies;
    assert_eq!((k, sc.spec.s_side(), sc.spec.n_side()), (2, 8, 12));
    let s_side = sc.spec.s_side();
    let n = sc.graph.n();
    let full = VertexSet::range(n, 0..s_side);
    let ids: Vec<usize> = (0..s_side).collect();
    let fb = VertexSet::range(base.graph.n(), 0..4);
    let mut best = 0;
    for mask in 0u32..(1 << s_side) {
        let sp = subset(n, &ids, mask);
        let cover = unique_neighborhood(&sc.graph, &full, &sp).unwrap().len();
        best = best.max(cover);
        // a left set with one copy per leaf covers what the leaf set covers
        let leaves: Vec<usize> = sp.iter().map(|u| u / k).collect();
        if leaves.windows(2).all(|w| w[0] != w[1]) {
            let bs = VertexSet::new(base.graph.n(), leaves).unwrap();
            assert_eq!(cover, unique_neighborhood(&base.graph, &fb, &bs).unwrap().len());
        }
    }
    assert!(best <= 8);
    assert!(build_core_scopy(4, 4.0).is_err());
}

#[test]
fn identity_copies() {
    let a = build_core(2).unwrap();
    assert_eq!(build_core_ncopy(2, 2.5).unwrap().graph, a.graph);
    assert_eq!(build_core_scopy(4, 3.0).unwrap().graph, build_core(4).unwrap().graph);
}

#[test]
fn generalized_branches_and_degree() {
    let hi = build_generalized_core_relaxed(16, 4.0).unwrap();
    assert_eq!(hi.cert.branch, Branch::Ncopy);
    assert!(!hi.cert.range_ok);
    assert!(build_generalized_core(16, 4.0).is_err());
    let lo = build_generalized_core(16, 1.0).unwrap();
    assert_eq!(lo.cert.branch, Branch::Scopy);
    for (d, b) in [(16usize, 4.0f64), (16, 1.0), (40, 2.0), (64, 3.0), (64, 0.5), (30, 10.0)] {
        let gen = build_generalized_core_relaxed(d, b).unwrap();
        assert!(gen.core.graph.max_degree() <= d, "Δ*={d} β*={b}");
        assert_eq!(gen.cert.max_degree, gen.core.graph.max_degree());
        if gen.cert.branch == Branch::Scopy {
            assert!(gen.cert.s_star <= (d / 2).max(1));
        }
    }
}

#[test]
fn generalized_wireless_within_cap() {
    for (d, b) in [(16usize, 1.0f64), (16, 4.0), (24, 2.0)] {
        let gen = build_generalized_core_relaxed(d, b).unwrap();
        let g = &gen.core.graph;
        let s = VertexSet::range(g.n(), 0..gen.cert.s_star);
        let w = wireless_at(g, &s).unwrap();
        assert!(w.covered <= gen.cert.structural_cap);
        if let Some(cap) = gen.cert.log_cap {
            assert!(w.covered as f64 <= cap + 1e-9);
        }
    }
}

fn plug_check(n: usize, eps: Ratio) {
    let base = Graph::complete(n);
    let alpha = Ratio::new(1, 2);
    let (beta, _) = ordinary_expansion(&base, alpha).unwrap();
    let params = PlugParams::derive(eps, base.max_degree(), beta).unwrap();
    let p = plug_worst_case(&base, alpha, beta, &params).unwrap();
    let c = &p.cert;
    let e = eps.to_f64();
    assert!(c.n_tilde as f64 <= (1.0 + e) * n as f64);
    assert!(c.max_degree_tilde as f64 <= (1.0 + e) * (n - 1) as f64);
    assert!(c.max_degree_tilde >= n - 1);
    let w = wireless_at(&p.graph, &c.s_star).unwrap();
    assert!(w.covered <= c.core.structural_cap);
    let (beta_tilde, _) = ordinary_expansion(&p.graph, c.alpha_tilde).unwrap();
    assert!(beta_tilde >= c.beta_tilde, "K_{n}: {beta_tilde} < {}", c.beta_tilde);
}

#[test]
fn plug_on_complete_graphs() {
    plug_check(9, Ratio::new(1, 4));
    plug_check(12, Ratio::new(1, 4));
    plug_check(12, Ratio::new(1, 3));
}

#[test]
fn chain_layout_and_diameter() {
    let c = build_broadcast_chain(4, 1, 9).unwrap();
    assert_eq!(c.graph.n(), 17);
    for s in [4usize, 8] {
        for d in [1usize, 2, 4] {
            for seed in 0..6u64 {
                let c = build_broadcast_chain(s, d, seed).unwrap();
                assert_eq!(c.rt.len(), d + 1);
                for hop in 1..=d {
                    assert!(c.hop_n(hop).contains(&c.rt[hop]));
                    let prev = c.rt[hop - 1];
                    assert!(c.hop_s(hop).all(|z| c.graph.has_edge(prev, z)));
                }
                // rt¹ on the root level sees all of N¹ within two steps
                let root_level = c.rt[1] < c.hop_n(1).start + s;
                let want = if root_level && d >= 2 { 2 * d } else { 2 * d + 2 };
                assert_eq!(c.graph.diameter(), Some(want), "s={s} d={d} seed={seed}");
            }
        }
    }
}

#[test]
fn chain_s8_d4_diameter_ten() {
    let hits = (0..20u64)
        .map(|seed| build_broadcast_chain(8, 4, seed).unwrap())
        .filter(|c| c.rt[1] >= c.hop_n(1).start + 8)
        .map(|c| c.graph.diameter().unwrap())
        .collect::<Vec<_>>();
    assert!(!hits.is_empty());
    assert!(hits.iter().all(|&d| d == 10));
}

#[test]
fn certificates_serialize_with_family_tag() {
    use wexp_core::constructions::Certificate;
    let cert = Certificate::Core(build_core(4).unwrap().spec.certificate());
    let v = serde_json::to_value(&cert).unwrap();
    assert_eq!(v["family"], "core");
    assert_eq!(v["n_side"], 12);
    let (_, bad) = build_bad_unique(4, 3, 5).unwrap();
    let v = serde_json::to_value(Certificate::BadUnique(bad)).unwrap();
    assert_eq!(v["expected_beta_u"], 2);
}
