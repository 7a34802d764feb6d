use proptest::prelude::*;
use wexp_core::graph::{arboricity_bruteforce, external_neighborhood, neighborhood, unique_neighborhood};
use wexp_core::io::{format_graph, parse_graph, read_graph, write_graph};
use wexp_core::random::{bipartite_instance_upto, gnp};
use wexp_core::{Graph, VertexSet};

/// max over U of ⌈|E(U)| / (|U| − 1)⌉, straight enumeration.
fn naive_arboricity(g: &Graph) -> u64 {
    let n = g.n();
    let mut best = 0;
    for u in 0u32..(1 << n) {
        let k = u.count_ones() as u64;
        if k < 2 {
            continue;
        }
        let e = g.edges().filter(|&(a, b)| u >> a & 1 == 1 && u >> b & 1 == 1).count() as u64;
        best = best.max(e.div_ceil(k - 1));
    }
    best
}

#[test]
fn arboricity_examples() {
    assert_eq!(arboricity_bruteforce(&Graph::path(5), 20).unwrap(), 1);
    assert_eq!(arboricity_bruteforce(&Graph::complete(4), 20).unwrap(), 2);
    assert_eq!(arboricity_bruteforce(&Graph::cycle(5), 20).unwrap(), 2);
    assert_eq!(arboricity_bruteforce(&Graph::petersen(), 20).unwrap(), naive_arboricity(&Graph::petersen()));
    assert!(arboricity_bruteforce(&Graph::cycle(30), 20).is_err());
    for seed in 0..30 {
        let g = gnp(9, 0.5, seed);
        assert_eq!(arboricity_bruteforce(&g, 20).unwrap(), naive_arboricity(&g));
    }
}

#[test]
fn parse_rejects_malformed() {
    for bad in ["", "3", "3 1\n1 0", "3 2\n0 1", "3 1\n0 3", "4 1 bipartite 2\n0 1", "3 1\n0 1 2", "x 1\n0 1"] {
        assert!(parse_graph(bad).is_err(), "{bad:?}");
    }
    let g = parse_graph("# c\n4 2 bipartite 2\n# mid\n0 2\n1 3\n").unwrap();
    assert_eq!(g.bipartition(), Some(2));
}

#[test]
fn file_roundtrip() {
    let dir = std::env::temp_dir().join(format!("wexp-io-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("p.g");
    write_graph(&Graph::petersen(), &path).unwrap();
    assert_eq!(read_graph(&path).unwrap(), Graph::petersen());
    std::fs::remove_dir_all(&dir).unwrap();
}

proptest! {
    #[test]
    fn text_roundtrip(n in 1usize..30, p in 0.0f64..1.0, seed in any::<u64>()) {
        let g = gnp(n, p, seed);
        let text = format_graph(&g, &["seed".to_string()]);
        prop_assert_eq!(parse_graph(&text).unwrap(), g);
    }

    #[test]
    fn bipartite_roundtrip(seed in any::<u64>()) {
        let inst = bipartite_instance_upto(8, 12, seed);
        let g = inst.graph();
        prop_assert_eq!(&parse_graph(&format_graph(g, &[])).unwrap(), g);
    }

    #[test]
    fn neighborhood_identities(n in 2usize..20, seed in any::<u64>(), pick in any::<u32>()) {
        let g = gnp(n, 0.3, seed);
        let s = VertexSet::new(n, (0..n).filter(|&v| pick >> v & 1 == 1)).unwrap();
        let full = neighborhood(&g, &s).unwrap();
        let ext = external_neighborhood(&g, &s).unwrap();
        prop_assert_eq!(&ext, &full.difference(&s));
        let uni = unique_neighborhood(&g, &s, &s).unwrap();
        prop_assert!(uni.is_subset(&ext));
        let deg_sum: usize = s.iter().map(|v| g.degree(v)).sum();
        prop_assert!(ext.len() <= deg_sum);
        for sub in [VertexSet::empty(n), s.clone()] {
            prop_assert!(unique_neighborhood(&g, &s, &sub).unwrap().is_subset(&ext));
        }
    }
}
