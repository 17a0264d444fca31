use sigraph::graph::{complete_plus, ktilde_minus};
use sigraph::hoffman::HoffmanSignedGraph;
use sigraph::lattice::{integrability_search, lattice_minimal_norm, verify_certificate, DEFAULT_BUDGET};
use sigraph::{Error, IntMatrix, IntegrabilityCertificate, IntegrabilityOutcome, LatticeDescription, Sign, SignedGraph};

#[test]
fn graph_json_round_trips() {
    let g = ktilde_minus(2);
    let text = serde_json::to_string(&g).unwrap();
    let back: SignedGraph = serde_json::from_str(&text).unwrap();
    assert_eq!(back, g);

    let parsed: SignedGraph = serde_json::from_str(r#"{"vertices": 3, "edges": [[0, 1, "+"], [1, 2, "-"]]}"#).unwrap();
    assert_eq!(parsed.sign(1, 2), Some(Sign::Minus));
}

#[test]
fn malformed_graphs_are_rejected() {
    for bad in [
        r#"{"vertices": 2, "edges": [[0, 1, "±"]]}"#,
        r#"{"vertices": 2, "edges": [[0, 2, "+"]]}"#,
        r#"{"vertices": 2, "edges": [[1, 1, "+"]]}"#,
        r#"{"vertices": 2, "edges": [[0, 1, "+"], [1, 0, "-"]]}"#,
    ] {
        assert!(serde_json::from_str::<SignedGraph>(bad).is_err(), "{bad}");
    }
}

#[test]
fn hoffman_json_round_trips() {
    let slim = SignedGraph::new(2, &[(0, 1, Sign::Minus)]).unwrap();
    let h = HoffmanSignedGraph::attach(&slim, &[vec![(0, Sign::Plus), (1, Sign::Minus)]]).unwrap();
    let text = serde_json::to_string(&h).unwrap();
    assert!(text.contains(r#""labels":["s","s","f"]"#), "{text}");
    let back: HoffmanSignedGraph = serde_json::from_str(&text).unwrap();
    assert_eq!(back, h);

    // two adjacent fat vertices
    let bad = r#"{"vertices": 3, "edges": [[0, 1, "+"], [1, 2, "+"]], "labels": ["s", "f", "f"]}"#;
    assert!(serde_json::from_str::<HoffmanSignedGraph>(bad).is_err());
}

#[test]
fn certificates_round_trip_and_detect_tampering() {
    let g = complete_plus(4);
    let IntegrabilityOutcome::Found { certificate } = integrability_search(&g, 2, 8, DEFAULT_BUDGET).unwrap() else {
        panic!("K4 is 2-integrable");
    };
    let text = serde_json::to_string(&certificate).unwrap();
    let back: IntegrabilityCertificate = serde_json::from_str(&text).unwrap();
    assert_eq!(back, certificate);
    assert_eq!(verify_certificate(&back, &g), Ok(true));

    let mut value: serde_json::Value = serde_json::from_str(&text).unwrap();
    let entry = &mut value["n"][0][0];
    *entry = serde_json::json!(entry.as_i64().unwrap() + 1);
    let tampered: IntegrabilityCertificate = serde_json::from_value(value).unwrap();
    assert_eq!(verify_certificate(&tampered, &g), Ok(false));

    // wrong graph size
    assert!(verify_certificate(&certificate, &complete_plus(5)).is_err());
}

fn cartan_a(n: usize) -> IntMatrix {
    IntMatrix::from_fn(n, n, |i, j| match i.abs_diff(j) {
        0 => 2,
        1 => -1,
        _ => 0,
    })
}

#[test]
fn root_lattices_have_minimal_norm_two() {
    for n in 1..=5 {
        let l = LatticeDescription::from_gram(cartan_a(n)).unwrap();
        let min = lattice_minimal_norm(&l, 1).unwrap();
        assert_eq!(min.value, 2, "A_{n}");
        assert!(min.certified, "A_{n}");
    }
    // D4: central node 3
    let d4 = IntMatrix::from_rows(
        &[vec![2, 0, 0, -1], vec![0, 2, 0, -1], vec![0, 0, 2, -1], vec![-1, -1, -1, 2]],
        4,
    )
    .unwrap();
    let min = lattice_minimal_norm(&LatticeDescription::from_gram(d4).unwrap(), 2).unwrap();
    assert_eq!((min.value, min.certified), (2, true));
}

#[test]
fn minimal_norm_edge_cases() {
    let z3 = LatticeDescription::from_gram(IntMatrix::identity(3)).unwrap();
    assert_eq!(lattice_minimal_norm(&z3, 1).unwrap().value, 1);

    let indefinite = IntMatrix::from_rows(&[vec![1, 2], vec![2, 1]], 2).unwrap();
    let l = LatticeDescription::from_gram(indefinite).unwrap();
    assert!(matches!(lattice_minimal_norm(&l, 1), Err(Error::IndefiniteGram(_))));

    let zero = LatticeDescription::from_gram(IntMatrix::zeros(2, 2)).unwrap();
    assert_eq!(lattice_minimal_norm(&zero, 1), Err(Error::ZeroLattice));

    let big = LatticeDescription::from_gram(IntMatrix::identity(12)).unwrap();
    assert!(matches!(lattice_minimal_norm(&big, 3), Err(Error::SearchTooLarge(_))));

    // a semidefinite Gram is searched but never certified
    let semi = IntMatrix::from_rows(&[vec![1, 1], vec![1, 1]], 2).unwrap();
    let min = lattice_minimal_norm(&LatticeDescription::from_gram(semi).unwrap(), 2).unwrap();
    assert_eq!((min.value, min.certified), (1, false));
}
