use std::sync::Arc;

use proptest::prelude::*;
use qls_core::extensions::{catalog, CatalogName};
use qls_core::linalg::{self, rank_of};
use qls_core::sample::{orthonormal_space, random_even_basis_change, random_valid_algebra};
use qls_core::space::hyperbolic_gram;
use qls_core::{AlgebraType, Exec, Matrix, Qls, QlsError, QuadraticZ2Space, Scalar, SuperForm};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn named(s: &str) -> Qls {
    catalog(&s.parse::<CatalogName>().unwrap()).unwrap()
}

/// Common kernel of all right multiplications `x ↦ [x, e_j]`.
fn center_dimension_oracle(g: &Qls) -> usize {
    let n = g.dim();
    let mut stacked = Matrix::zeros(n * n, n);
    for j in 0..n {
        for i in 0..n {
            for k in 0..n {
                stacked.set(j * n + k, i, g.bracket_basis(i, j)[k].clone());
            }
        }
    }
    stacked.nullspace().len()
}

fn so3() -> Qls {
    let space = Arc::new(QuadraticZ2Space::new(Matrix::identity(3), Matrix::zeros(0, 0)).unwrap());
    let e = |i: usize| linalg::unit_vector(3, i);
    Qls::from_upper_entries(space, [(0, 1, e(2)), (1, 2, e(0)), (0, 2, linalg::scale_vector(&e(1), &Scalar::from_int(-1)))]).unwrap()
}

#[test]
fn catalog_centers_match_the_adjoint_kernel() {
    for n in ["g4,1s", "g4,2s", "g6s", "j(4)", "j(2+2)", "j(4,2)", "g[2,1,1]"] {
        let g = named(n);
        assert_eq!(g.center().len(), center_dimension_oracle(&g), "{n}");
    }
}

#[test]
fn three_kinds_of_algebra() {
    let g = so3();
    assert!(g.check_quadratic().unwrap().all_pass());
    assert_eq!(g.dup_number().unwrap(), 3);
    assert_eq!(g.classify().unwrap().kind, AlgebraType::SingularS3);
    assert!(!g.is_solvable());
    let double = g.orthogonal_sum(&so3());
    assert!(double.check_quadratic().unwrap().all_pass());
    assert_eq!(double.dup_number().unwrap(), 0);
    assert_eq!(double.classify().unwrap().kind, AlgebraType::Ordinary);

    let space = Arc::new(QuadraticZ2Space::new(hyperbolic_gram(6), Matrix::zeros(0, 0)).unwrap());
    let form = [3, 4, 5]
        .into_iter()
        .map(|i| SuperForm::generator(&space, i))
        .reduce(|a, b| a.wedge(&b).unwrap())
        .unwrap();
    let h = Qls::from_invariant_form(Arc::clone(&space), &form).unwrap();
    assert!(h.check_quadratic().unwrap().all_pass());
    assert_eq!(h.dup_number().unwrap(), 3);
    let class = h.classify().unwrap();
    assert_eq!(class.kind, AlgebraType::SingularS3);
    assert!(class.elementary);
    assert!(h.is_two_step_nilpotent());

    let s1 = named("g4,1s");
    assert_eq!(s1.classify().unwrap().kind, AlgebraType::SingularS1);
    assert!(s1.is_nilpotent());
    let s2 = named("g4,2s");
    assert!(s2.is_solvable());
    assert!(!s2.is_nilpotent());
}

#[test]
fn abelian_algebras_have_no_dup() {
    let g = Qls::abelian(orthonormal_space(2, 2));
    assert!(matches!(g.dup_number(), Err(QlsError::UndefinedDup)));
    assert!(matches!(g.invariant_form(), Ok(f) if f.is_zero()));
}

#[test]
fn broken_brackets_are_caught_with_reproducible_witnesses() {
    let mut g = named("g4,2s");
    let n = g.dim();
    g.set_bracket_basis(0, 1, linalg::unit_vector(n, 1));
    for exec in [Exec::Sequential, Exec::Parallel] {
        let report = g.check_quadratic_with(exec).unwrap();
        assert!(!report.all_pass());
        let witness = report.witness.clone().expect("failing report carries a witness");
        assert!(g.reproduces(&witness), "{witness:?}");
    }
    assert_eq!(g.check_quadratic_with(Exec::Sequential).unwrap(), g.check_quadratic_with(Exec::Parallel).unwrap());
}

#[test]
fn non_integrable_forms_are_rejected() {
    let space = orthonormal_space(1, 2);
    let alpha = SuperForm::generator(&space, 0);
    let s = SuperForm::generator(&space, 1);
    let form = alpha.wedge(&s.wedge(&s).unwrap()).unwrap();
    assert!(!form.poisson(&form).unwrap().is_zero());
    assert!(matches!(Qls::from_invariant_form(space, &form), Err(QlsError::NonIntegrable { .. })));
}

#[test]
fn reduced_decomposition_splits_off_a_nondegenerate_center() {
    let g = named("g4,1s").orthogonal_sum(&Qls::abelian(orthonormal_space(1, 2)));
    assert!(g.check_quadratic().unwrap().all_pass());
    assert!(!g.is_reduced());
    let split = g.reduce_decompose().unwrap();
    assert_eq!(split.central.len(), 3);
    assert_eq!(split.central.len() + split.complement.len(), g.dim());
    let rest = g.restrict_to_ideal(&split.complement).unwrap();
    assert!(rest.check_quadratic().unwrap().all_pass());
    assert!(rest.is_reduced());
    assert_eq!(rest.dim(), 4);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn basis_changes_preserve_structure(seed in any::<u64>(), dim0 in 2usize..=4, half1 in 0usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_valid_algebra(&mut rng, dim0, 2 * half1).unwrap();
        let p = random_even_basis_change(&mut rng, dim0, 2 * half1);
        let moved = g.change_basis(&p).unwrap();
        prop_assert!(moved.check_quadratic().unwrap().all_pass());
        prop_assert_eq!(moved.center().len(), g.center().len());
        prop_assert_eq!(moved.derived_ideal().len(), g.derived_ideal().len());
        prop_assert_eq!(moved.is_nilpotent(), g.is_nilpotent());
        if !g.is_abelian() {
            prop_assert_eq!(moved.classify().unwrap(), g.classify().unwrap());
        }
        let back = moved.change_basis(&p.inverse().unwrap()).unwrap();
        prop_assert_eq!(back.table(), g.table());
    }

    #[test]
    fn center_is_orthogonal_to_the_derived_ideal(seed in any::<u64>(), dim0 in 2usize..=4, half1 in 0usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_valid_algebra(&mut rng, dim0, 2 * half1).unwrap();
        let z = g.center();
        prop_assert_eq!(z.len(), center_dimension_oracle(&g));
        prop_assert_eq!(z.len() + g.derived_ideal().len(), g.dim());
        prop_assert_eq!(rank_of(g.dim(), &z), z.len());
    }
}
