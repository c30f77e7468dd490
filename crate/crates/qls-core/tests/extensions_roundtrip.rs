use std::sync::Arc;

use proptest::prelude::*;
use qls_core::extensions::{
    amalgamate, amalgamated_product, catalog, catalog_descriptor, double_extension_s1, extract_descriptor, CatalogName,
    DoubleExtDescriptor, Variant,
};
use qls_core::orbits::{decide_i_isomorphic, FormKind};
use qls_core::sample::{random_even_basis_change, random_split_skew_map};
use qls_core::space::darboux_gram;
use qls_core::{Field, Matrix, Qls, QlsError, QuadraticZ2Space, Scalar};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn descriptor(s: &str) -> DoubleExtDescriptor {
    catalog_descriptor(&s.parse::<CatalogName>().unwrap()).unwrap().unwrap()
}

fn assert_extracts(g: &Qls, original: &DoubleExtDescriptor) {
    let (found, basis) = extract_descriptor(g).unwrap();
    assert_eq!(found.variant(), original.variant());
    assert_eq!(g.change_basis(&basis).unwrap(), found.build().unwrap());
    assert!(decide_i_isomorphic(original, &found, Field::Rational).unwrap().i_isomorphic);
}

#[test]
fn catalog_descriptors_are_recovered() {
    for n in ["g4,1s", "g4,2s", "j(4)", "j(2+2)", "j(4,3)", "g[2,2]", "g[4,2]"] {
        let d = descriptor(n);
        assert_extracts(&d.build().unwrap(), &d);
    }
    assert!(catalog_descriptor(&CatalogName::G6s).unwrap().is_none());
}

#[test]
fn catalog_names_round_trip() {
    for n in ["g4,1s", "g4,2s", "g6s", "j(4)", "j(2+2)", "j(4,1/2)", "g[2,1,1]"] {
        let parsed: CatalogName = n.parse().unwrap();
        assert_eq!(parsed.to_string(), n);
    }
    for bad in ["g5s", "j(3)", "j(2)", "j(0+0)", "g[3]", "g[]", "j(4,x)"] {
        assert!(bad.parse::<CatalogName>().and_then(|c| catalog(&c)).is_err(), "{bad}");
    }
}

#[test]
fn descriptor_invariants_are_enforced() {
    let odd = Arc::new(QuadraticZ2Space::new(Matrix::zeros(0, 0), darboux_gram(2)).unwrap());
    let not_skew = Matrix::from_ints(&[[1, 0], [0, 1]]);
    assert!(matches!(DoubleExtDescriptor::symplectic(Arc::clone(&odd), not_skew), Err(QlsError::DescriptorInvariant(_))));

    let mixed = Arc::new(QuadraticZ2Space::new(Matrix::identity(1), darboux_gram(2)).unwrap());
    assert!(DoubleExtDescriptor::symplectic(Arc::clone(&mixed), Matrix::zeros(3, 3)).is_err());
    assert!(matches!(
        double_extension_s1(Arc::clone(&mixed), &Matrix::zeros(2, 2), &Matrix::zeros(2, 2)),
        Err(QlsError::Shape(_))
    ));

    let plane = Arc::new(QuadraticZ2Space::new(Matrix::from_ints(&[[0, 1], [1, 0]]), darboux_gram(2)).unwrap());
    let square_nonzero = Matrix::from_ints(&[[0, 0, 0, -1], [0, 0, 1, 0], [0, -1, 0, 0], [1, 0, 0, 0]]);
    assert!(DoubleExtDescriptor::generalized(Arc::clone(&plane), square_nonzero, vec![Scalar::zero(); 4]).is_err());
    let good = Matrix::from_ints(&[[0, 0, 0, -1], [0, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 0]]);
    let anisotropic = vec![Scalar::one(), Scalar::one(), Scalar::zero(), Scalar::zero()];
    assert!(DoubleExtDescriptor::generalized(Arc::clone(&plane), good.clone(), anisotropic).is_err());
    let d = DoubleExtDescriptor::generalized(plane, good, vec![Scalar::zero(); 4]).unwrap();
    assert!(matches!(d.scaled(&Scalar::from_int(2)), Err(QlsError::UnsupportedVariant(_))));
}

#[test]
fn amalgamated_products_glue_along_the_plane() {
    let parts = [descriptor("j(4)"), descriptor("g4,1s")];
    let glued = amalgamate(&parts).unwrap();
    assert_eq!(glued.variant(), Variant::Symplectic);
    assert_eq!(glued.base().dim1(), 6);
    let g = amalgamated_product(&parts).unwrap();
    assert!(g.check_quadratic().unwrap().all_pass());
    assert_eq!(g.dim(), 8);
    assert_eq!(g.dup_number().unwrap(), 1);
    assert!(matches!(amalgamate(&[]), Err(QlsError::Empty(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_extensions_are_recovered_after_basis_changes(seed in any::<u64>(), base0 in 1usize..=3, half1 in 1usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (c0, g0) = random_split_skew_map(&mut rng, base0, FormKind::Orthogonal);
        let (c1, g1) = random_split_skew_map(&mut rng, 2 * half1, FormKind::Symplectic);
        let base = Arc::new(QuadraticZ2Space::new(g0, g1).unwrap());
        let d = DoubleExtDescriptor::type_s1(base, Matrix::block_diag(&[c0, c1])).unwrap();
        let g = d.build().unwrap();
        prop_assume!(g.dup_number().ok() == Some(1));
        let p = random_even_basis_change(&mut rng, base0 + 2, 2 * half1);
        let moved = g.change_basis(&p).unwrap();
        let (found, basis) = extract_descriptor(&moved).unwrap();
        prop_assert_eq!(moved.change_basis(&basis).unwrap(), found.build().unwrap());
        prop_assert!(decide_i_isomorphic(&d, &found, Field::Rational).unwrap().i_isomorphic);
    }
}
