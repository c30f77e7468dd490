use proptest::prelude::*;
use qls_core::extensions::{catalog, catalog_descriptor, CatalogName};
use qls_core::json::{
    descriptor_from_json, descriptor_to_json, is_descriptor, matrix_input_from_json, qls_from_json, qls_to_json,
    space_from_json, space_to_json,
};
use qls_core::orbits::FormKind;
use qls_core::sample::random_valid_algebra;
use qls_core::{QlsError, Scalar};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

#[test]
fn catalog_algebras_and_descriptors_round_trip() {
    for n in ["g4,1s", "g4,2s", "g6s", "j(4,1/2)", "g[2,1,1]"] {
        let name: CatalogName = n.parse().unwrap();
        let g = catalog(&name).unwrap();
        let text = serde_json::to_string(&qls_to_json(&g)).unwrap();
        let back = qls_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, g, "{n}");
        assert_eq!(space_from_json(&space_to_json(g.space())).unwrap(), **g.space());
        if let Some(d) = catalog_descriptor(&name).unwrap() {
            let v = descriptor_to_json(&d);
            assert!(is_descriptor(&v));
            assert_eq!(descriptor_from_json(&v).unwrap(), d);
        }
    }
}

#[test]
fn scalars_accept_integers_fractions_and_gaussian_pairs() {
    let v = json!([[1, "-1/2"], [{"re": "0", "im": 1}, "3"]]);
    let input = matrix_input_from_json(&v).unwrap();
    assert_eq!(input.matrix.get(0, 1), &Scalar::ratio(-1, 2).unwrap());
    assert_eq!(input.matrix.get(1, 0), &Scalar::i());
    assert!(input.gram.is_none());
    let full = json!({"matrix": [[0, 1], [0, 0]], "gram": [[0, 1], [-1, 0]], "eps": -1});
    let input = matrix_input_from_json(&full).unwrap();
    assert_eq!(input.kind, Some(FormKind::Symplectic));
    assert!(input.gram.is_some());
}

#[test]
fn malformed_documents_are_parse_errors() {
    let bad = [
        json!({"matrix": [[1, 2, 3]]}),
        json!([[1, 2], [3]]),
        json!({"matrix": [[0]], "eps": 2}),
        json!([["one"]]),
    ];
    for v in bad {
        let err = matrix_input_from_json(&v).err().unwrap_or_else(|| panic!("accepted {v}"));
        assert!(matches!(err, QlsError::Parse(_) | QlsError::Shape(_)), "{v}: {err:?}");
    }
    let broken_algebra = json!({"space": {"dim0": 1, "dim1": 0, "gram0": [[1]], "gram1": []}, "brackets": [{"i": 0, "j": 0, "value": [1, 2]}]});
    assert!(matches!(qls_from_json(&broken_algebra), Err(QlsError::Parse(_))));
    let generalized_without_x0 = json!({"variant": "generalized", "base": {"dim0": 0, "dim1": 2, "gram0": [], "gram1": [[0, 1], [-1, 0]]}, "map": [[0, 0], [0, 0]]});
    assert!(matches!(descriptor_from_json(&generalized_without_x0), Err(QlsError::Parse(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn random_algebras_round_trip(seed in any::<u64>(), dim0 in 2usize..=4, half1 in 0usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_valid_algebra(&mut rng, dim0, 2 * half1).unwrap();
        let v = qls_to_json(&g);
        prop_assert_eq!(serde_json::to_string(&v).unwrap(), serde_json::to_string(&qls_to_json(&qls_from_json(&v).unwrap())).unwrap());
        prop_assert_eq!(qls_from_json(&v).unwrap(), g);
    }
}
