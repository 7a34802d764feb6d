use proptest::prelude::*;
use wexp_core::radiosim::{
    experiment_lower_bound, flood, receivers, run_decay, simulate, step, Decay, Outcome, ProtocolKind,
    RadioRoundState, SimConfig,
};
use wexp_core::random::gnp;
use wexp_core::{Graph, VertexSet};

fn connected(n: usize, p: f64, seed: u64) -> Option<Graph> {
    let g = gnp(n, p, seed);
    g.is_connected().then_some(g)
}

#[test]
fn flood_equals_eccentricity() {
    for seed in 0..40u64 {
        let Some(g) = connected(12, 0.3, seed) else { continue };
        for src in [0, 5, 11] {
            let tr = flood(&g, src).unwrap();
            assert_eq!(Some(tr.rounds), g.eccentricity(src));
            let dist = g.distances(src);
            assert!((0..g.n()).all(|v| tr.first_informed[v] == Some(dist[v])));
        }
    }
}

#[test]
fn collision_rule_by_hand() {
    // star centre 0 with leaves 1..4, plus edge 1–2
    let g = Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2)]).unwrap();
    let t = VertexSet::new(5, [1, 2]).unwrap();
    // 0 hears both and gets nothing; 1 and 2 transmit
    assert!(receivers(&g, &t).is_empty());
    let t = VertexSet::new(5, [1, 3]).unwrap();
    assert_eq!(receivers(&g, &t).as_slice(), &[2]);
    let st = RadioRoundState::initial(5, 0).unwrap();
    assert!(step(&g, &st, &VertexSet::new(5, [3]).unwrap()).is_err());
}

#[test]
fn decay_on_chain_experiment() {
    let t = experiment_lower_bound(8, 2, ProtocolKind::Decay, &[0, 1, 2, 3]).unwrap();
    for row in &t.rows {
        assert!(!row.timeout);
        assert!(row.rounds >= 2);
        assert_eq!(row.per_hop.len(), 2);
    }
    let all = experiment_lower_bound(4, 2, ProtocolKind::AllTransmit, &[0, 1, 2]).unwrap();
    assert_eq!(all.rows.len(), 3);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn replay_monotone_causal(n in 4usize..16, seed in any::<u64>(), src in 0usize..4) {
        let g = gnp(n, 0.35, seed);
        prop_assume!(g.is_connected());
        let mut cfg = SimConfig::new(src, seed);
        cfg.record_states = true;
        let phase = (n as f64).log2().ceil() as usize;
        let tr = simulate(&g, &mut Decay { phase_len: phase }, &cfg).unwrap();
        prop_assert_eq!(tr.outcome, Outcome::Completed);
        prop_assert_eq!(tr.states.len(), tr.rounds + 1);
        for w in tr.states.windows(2) {
            let replay = step(&g, &w[0], &w[1].transmitting).unwrap();
            prop_assert_eq!(&replay, &w[1]);
            prop_assert!(w[0].informed.is_subset(&w[1].informed));
        }
        prop_assert!(tr.informed_history.windows(2).all(|w| w[0] <= w[1]));
        let dist = g.distances(src);
        for v in 0..n {
            prop_assert!(tr.first_informed[v].unwrap() >= dist[v]);
        }
        let again = run_decay(&g, src, seed, Some(phase)).unwrap();
        prop_assert_eq!(again.first_informed, tr.first_informed);
    }
}

#[test]
fn chain_rounds_grow_with_hops() {
    let seeds: Vec<u64> = (0..30).collect();
    let mut means = Vec::new();
    for d in [1usize, 2, 4] {
        let t = experiment_lower_bound(4, d, ProtocolKind::Decay, &seeds).unwrap();
        assert!(t.rows.iter().all(|r| !r.timeout && r.rounds >= d));
        assert!(t.min_rounds >= d);
        means.push(t.mean_rounds);
    }
    assert!(means.windows(2).all(|w| w[0] <= w[1]), "{means:?}");
}
