use proptest::prelude::*;
use tripack::formats::{hypergraph_to_json, parse_hypergraph, parse_system, system_to_json};
use tripack_core::{Hypergraph3, Triple, TripleSystem};

fn hypergraph() -> impl Strategy<Value = Hypergraph3> {
    (3usize..12).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n, 0..n, 1usize..4), 0..30).prop_map(move |raw| {
            let mut h = Hypergraph3::new(n);
            for (a, b, c, m) in raw {
                if let Ok(t) = Triple::new(a, b, c) {
                    h.add_copies(t, m).unwrap();
                }
            }
            h
        })
    })
}

proptest! {
    #[test]
    fn h3_round_trip(h in hypergraph()) {
        let text = hypergraph_to_json(&h);
        let back = parse_hypergraph(&text).unwrap();
        prop_assert_eq!(&back, &h);
        prop_assert_eq!(hypergraph_to_json(&back), text);
    }

    #[test]
    fn pts_round_trip(h in hypergraph()) {
        let lambda = h.pair_counts().values().copied().max().unwrap_or(1);
        let ts = TripleSystem::from_hypergraph(h, lambda).unwrap();
        let text = system_to_json(&ts);
        prop_assert_eq!(system_to_json(&parse_system(&text).unwrap()), text);
    }
}
