use std::path::Path;

use proptest::prelude::*;
use shiftlab::io::{graph_from_json, graph_to_json, read_spec, spec_from_json, spec_to_json};
use shiftlab::CliError;
use shiftlab_core::bfree::BSet;
use shiftlab_core::sgap::SGapSet;
use shiftlab_core::{Alphabet, LabeledGraph, PeriodicPoint, SftSpec, ShiftSpec, Word};

fn arb_graph() -> impl Strategy<Value = LabeledGraph> {
    (1usize..6, 2usize..5).prop_flat_map(|(n, a)| {
        prop::collection::vec((0..n, 0..n, 0..a as u8), 0..12).prop_map(move |t| {
            let alphabet = Alphabet::new("abcd".chars().take(a)).unwrap();
            LabeledGraph::from_triples(alphabet, n, &t).unwrap()
        })
    })
}

fn arb_spec() -> impl Strategy<Value = ShiftSpec> {
    prop_oneof![
        prop::collection::vec(prop::collection::vec(0u8..2, 1..4), 0..4).prop_map(|ws| {
            ShiftSpec::Sft(SftSpec::new(Alphabet::binary(), ws.into_iter().map(Word)).unwrap())
        }),
        arb_graph().prop_map(ShiftSpec::Graph),
        prop::collection::btree_set(2u64..60, 1..5)
            .prop_map(|g| ShiftSpec::BFree(BSet::new(g.into_iter().collect()).unwrap())),
        prop::collection::btree_set(1u64..20, 1..5)
            .prop_map(|g| ShiftSpec::SGap(SGapSet::new(g.into_iter().collect()).unwrap())),
        prop::collection::vec(0u8..2, 1..8)
            .prop_map(|w| ShiftSpec::HereditaryOrbit(PeriodicPoint::periodic(Word(w)).unwrap())),
    ]
}

proptest! {
    #[test]
    fn graph_round_trip(g in arb_graph()) {
        prop_assert_eq!(graph_from_json(&graph_to_json(&g)).unwrap(), g);
    }

    #[test]
    fn spec_round_trip(s in arb_spec()) {
        let text = spec_to_json(&s);
        prop_assert_eq!(spec_from_json(&text, Path::new(".")).unwrap(), s);
    }
}

#[test]
fn graph_file_reference() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("even.json"),
        r#"{"alphabet": "01", "vertices": 2, "edges": [[0, 0, "0"], [0, 1, "1"], [1, 0, "1"]]}"#,
    )
    .unwrap();
    std::fs::write(
        dir.path().join("spec.json"),
        r#"{"kind": "graph", "file": "even.json"}"#,
    )
    .unwrap();
    let ShiftSpec::Graph(g) = read_spec(&dir.path().join("spec.json")).unwrap() else {
        panic!("graph kind")
    };
    assert_eq!(g.edges().len(), 3);
}

#[test]
fn bfree_stream_spec() {
    let s = spec_from_json(
        r#"{"kind": "bfree", "stream": "squares-of-primes", "up_to": 50}"#,
        Path::new("."),
    )
    .unwrap();
    assert_eq!(s, ShiftSpec::BFree(BSet::new(vec![4, 9, 25, 49]).unwrap()));
}

#[test]
fn invalid_specs() {
    let bad = [
        r#"{"kind": "sft", "alphabet": "01", "forbidden": ["2"]}"#,
        r#"{"kind": "sft", "alphabet": "01", "forbidden": [], "extra": 1}"#,
        r#"{"kind": "graph"}"#,
        r#"{"kind": "bfree", "stream": "squares-of-primes"}"#,
        r#"{"kind": "hereditary-orbit", "point": "11(01)^inf"}"#,
        r#"{"kind": "cellular"}"#,
        r#"{"kind": "graph", "graph": {"alphabet": "01", "vertices": 1, "edges": [[0, 1, "0"]]}}"#,
        r#"{"kind": "graph", "graph": {"alphabet": "01", "vertices": 1, "edges": [[0, 0, "01"]]}}"#,
    ];
    for text in bad {
        assert!(
            matches!(
                spec_from_json(text, Path::new(".")),
                Err(CliError::Validation(_))
            ),
            "{text}"
        );
    }
    assert!(matches!(
        read_spec(Path::new("/nonexistent/spec.json")),
        Err(CliError::Io(_))
    ));
}
