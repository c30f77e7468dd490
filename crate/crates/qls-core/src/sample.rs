//! Seeded random generators of exact test data.
//!
//! Every generator draws small integers, so results stay exact and cheap.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::Qls;
use crate::error::Result;
use crate::extensions::DoubleExtDescriptor;
use crate::forms::{MonomialKey, SuperForm};
use crate::linalg::{self, Matrix, Vector};
use crate::orbits::{canonical_skew_map, enumerate_partitions, jordan_pair_map, FormKind};
use crate::scalar::Scalar;
use crate::space::{darboux_gram, hyperbolic_gram, EvenStyle, QuadraticZ2Space};

pub fn small_int<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Scalar {
    Scalar::from_int(rng.gen_range(-bound..=bound))
}

pub fn nonzero_int<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Scalar {
    let v = rng.gen_range(1..=bound);
    Scalar::from_int(if rng.gen_bool(0.5) { v } else { -v })
}

pub fn random_vector<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> Vector {
    (0..n).map(|_| small_int(rng, bound)).collect()
}

fn form_value(gram: &Matrix, x: &[Scalar], y: &[Scalar]) -> Scalar {
    x.iter().zip(gram.apply(y)).map(|(a, b)| a * &b).sum()
}

/// The canonical Gram matrix for `m` coordinates of the given kind.
pub fn canonical_form(m: usize, kind: FormKind) -> Matrix {
    match kind {
        FormKind::Orthogonal => hyperbolic_gram(m),
        FormKind::Symplectic => darboux_gram(m),
    }
}

/// One elementary isometry: a transvection (antisymmetric form) or a reflection (symmetric form).
fn elementary_isometry<R: Rng + ?Sized>(rng: &mut R, gram: &Matrix) -> Matrix {
    let n = gram.rows();
    let symmetric = gram.is_symmetric();
    loop {
        let v = random_vector(rng, n, 2);
        if linalg::is_zero_vector(&v) {
            continue;
        }
        let row = gram.transpose().apply(&v);
        let outer = Matrix::from_fn(n, n, |r, c| &v[r] * &row[c]);
        if symmetric {
            let norm = form_value(gram, &v, &v);
            let Some(inv) = norm.inv() else { continue };
            return Matrix::identity(n).sub(&outer.scale(&(&Scalar::from_int(2) * &inv)));
        }
        return Matrix::identity(n).add(&outer.scale(&nonzero_int(rng, 2)));
    }
}

/// A product of `factors` elementary isometries of `gram`.
pub fn random_isometry<R: Rng + ?Sized>(rng: &mut R, gram: &Matrix, factors: usize) -> Matrix {
    let mut u = Matrix::identity(gram.rows());
    for _ in 0..factors {
        u = u.mul(&elementary_isometry(rng, gram));
    }
    u
}

/// `U C U⁻¹`.
pub fn conjugate(c: &Matrix, u: &Matrix) -> Matrix {
    u.mul(c).mul(&u.inverse().expect("isometries are invertible"))
}

/// A random map skew for `gram`: `G⁻¹A` with `A` antisymmetric (symmetric `G`) or symmetric (antisymmetric `G`).
pub fn random_skew_map<R: Rng + ?Sized>(rng: &mut R, gram: &Matrix, bound: i64) -> Matrix {
    let n = gram.rows();
    let symmetric = gram.is_symmetric();
    let mut a = Matrix::zeros(n, n);
    for r in 0..n {
        for c in r..n {
            let v = small_int(rng, bound);
            if r == c {
                if !symmetric {
                    a.set(r, c, v);
                }
            } else {
                a.set(c, r, if symmetric { -v.clone() } else { v.clone() });
                a.set(r, c, v);
            }
        }
    }
    gram.inverse().expect("nondegenerate Gram").mul(&a)
}

/// A random nilpotent map skew for the canonical form of `(m, kind)`.
///
/// Draws a sparse element of the nilradical of the Borel subalgebra fixed by
/// the flag `E₁, …, E_n, G, F_n, …, F₁`, then conjugates by a random isometry.
pub fn random_nilpotent_skew_map<R: Rng + ?Sized>(rng: &mut R, m: usize, kind: FormKind) -> Matrix {
    let gram = canonical_form(m, kind);
    let n = m / 2;
    let mut flag: Vec<usize> = (0..n).collect();
    if m % 2 == 1 {
        flag.push(n);
    }
    flag.extend((0..n).rev().map(|i| m - n + i));
    let mut position = vec![0; m];
    for (p, &i) in flag.iter().enumerate() {
        position[i] = p;
    }
    let mut vars = Vec::new();
    for r in 0..m {
        for c in 0..m {
            if position[r] < position[c] {
                vars.push((r, c));
            }
        }
    }
    let mut system = Matrix::zeros(m * m, vars.len());
    for (v, &(r, c)) in vars.iter().enumerate() {
        let mut unit = Matrix::zeros(m, m);
        unit.set(r, c, Scalar::one());
        let skew = unit.transpose().mul(&gram).add(&gram.mul(&unit));
        for i in 0..m {
            for j in 0..m {
                system.set(i * m + j, v, skew.get(i, j).clone());
            }
        }
    }
    let basis = system.nullspace();
    let mut c = Matrix::zeros(m, m);
    let density = rng.gen_range(0.1..0.9);
    for b in &basis {
        if rng.gen_bool(density) {
            let coeff = nonzero_int(rng, 2);
            for (v, &(r, col)) in vars.iter().enumerate() {
                if !b[v].is_zero() {
                    let value = c.get(r, col) + &(&coeff * &b[v]);
                    c.set(r, col, value);
                }
            }
        }
    }
    let u = random_isometry(rng, &gram, 3);
    conjugate(&c, &u)
}

/// A skew map with rational spectrum: canonical nilpotent part plus Jordan pairs `J_p(λ) ⊕ −J_p(λ)ᵀ`,
/// conjugated by a random isometry of the block Gram matrix it returns.
pub fn random_split_skew_map<R: Rng + ?Sized>(rng: &mut R, m: usize, kind: FormKind) -> (Matrix, Matrix) {
    let pair_budget = rng.gen_range(0..=m / 2);
    let mut maps = Vec::new();
    let mut grams = Vec::new();
    let mut used = 0;
    while used < pair_budget {
        let p = rng.gen_range(1..=pair_budget - used);
        let lambda = nonzero_int(rng, 3);
        maps.push(jordan_pair_map(p, &lambda));
        grams.push(canonical_form(2 * p, kind));
        used += p;
    }
    let rest = m - 2 * used;
    let partitions = enumerate_partitions(rest, kind).expect("admissible size");
    let d = partitions.choose(rng).expect("at least one partition");
    let (c, g) = canonical_skew_map(d, kind).expect("admissible partition");
    maps.push(c);
    grams.push(g);
    let c = Matrix::block_diag(&maps);
    let gram = Matrix::block_diag(&grams);
    let u = random_isometry(rng, &gram, 3);
    (conjugate(&c, &u), gram)
}

/// A random invertible block-diagonal (even) basis change.
pub fn random_even_basis_change<R: Rng + ?Sized>(rng: &mut R, d0: usize, d1: usize) -> Matrix {
    let block = |rng: &mut R, k: usize| loop {
        let m = Matrix::from_fn(k, k, |r, c| if r == c { nonzero_int(rng, 2) } else { small_int(rng, 1) });
        if k == 0 || !m.determinant().is_zero() {
            return m;
        }
    };
    let a = block(rng, d0);
    let b = block(rng, d1);
    Matrix::block_diag(&[a, b])
}

/// A homogeneous form with `terms` random monomials of alternating degree `omega` and symmetric degree `f`.
pub fn random_form<R: Rng + ?Sized>(
    rng: &mut R,
    space: &Arc<QuadraticZ2Space>,
    omega: usize,
    f: u32,
    terms: usize,
) -> SuperForm {
    let (d0, d1) = (space.dim0(), space.dim1());
    let mut out = Vec::new();
    if omega > d0 || (d1 == 0 && f > 0) {
        return SuperForm::zero(space);
    }
    for _ in 0..terms {
        let mut alt: Vec<usize> = (0..d0).collect();
        alt.shuffle(rng);
        alt.truncate(omega);
        alt.sort_unstable();
        let mut sym = vec![0u32; d1];
        for _ in 0..f {
            sym[rng.gen_range(0..d1)] += 1;
        }
        out.push((MonomialKey { alt, sym }, nonzero_int(rng, 3)));
    }
    SuperForm::from_terms(space, out).expect("keys are normalized")
}

/// A valid quadratic Lie superalgebra of the given dimensions (`dim0 ≥ 2`):
/// a random type-S₁ double extension seen through a random even basis change.
pub fn random_valid_algebra<R: Rng + ?Sized>(rng: &mut R, dim0: usize, dim1: usize) -> Result<Qls> {
    let base0 = dim0 - 2;
    let g0 = if base0 == 0 { Matrix::zeros(0, 0) } else { Matrix::identity(base0) };
    let base = Arc::new(QuadraticZ2Space::new(g0.clone(), darboux_gram(dim1))?);
    let c0 = if base0 == 0 { Matrix::zeros(0, 0) } else { random_skew_map(rng, &g0, 2) };
    let c1 = if dim1 == 0 { Matrix::zeros(0, 0) } else { random_skew_map(rng, &darboux_gram(dim1), 2) };
    let descriptor = DoubleExtDescriptor::type_s1(base, Matrix::block_diag(&[c0, c1]))?;
    let g = descriptor.build()?;
    g.change_basis(&random_even_basis_change(rng, dim0, dim1))
}

/// The invariant form of a valid algebra with one extra random monomial of bidegree `(3, 0̄)`.
pub fn perturbed_invariant<R: Rng + ?Sized>(rng: &mut R, g: &Qls) -> Result<SuperForm> {
    let space = g.space();
    let form = g.invariant_form()?;
    let use_even = space.dim0() >= 3 && (space.dim1() == 0 || rng.gen_bool(0.5));
    let extra = if use_even {
        random_form(rng, space, 3, 0, 1)
    } else {
        random_form(rng, space, 1, 2, 1)
    };
    form.add(&extra)
}

/// Inputs `(q, C̄, x₀)` for a generalized double extension.
///
/// `q₀` is hyperbolic of dimension `2k`, `q₁` Darboux of dimension `2l`, and
/// `C̄` maps `q₀` into the Lagrangian spanned by the first half of `q₁`
/// through the isotropic first half of `q₀`, which forces `C̄² = 0`; then
/// everything is conjugated by random isometries.
pub fn random_generalized_input<R: Rng + ?Sized>(rng: &mut R) -> (Arc<QuadraticZ2Space>, Matrix, Vector) {
    let k = rng.gen_range(1..=2);
    let l = rng.gen_range(1..=2);
    let g0 = hyperbolic_gram(2 * k);
    let g1 = darboux_gram(2 * l);
    let mut d = Matrix::zeros(2 * l, 2 * k);
    for r in 0..l {
        for c in 0..k {
            d.set(r, c, small_int(rng, 2));
        }
    }
    let e = g0.inverse().expect("invertible").mul(&d.transpose()).mul(&g1).neg();
    let n = 2 * k + 2 * l;
    let mut map = Matrix::zeros(n, n);
    for r in 0..2 * l {
        for c in 0..2 * k {
            map.set(2 * k + r, c, d.get(r, c).clone());
        }
    }
    for r in 0..2 * k {
        for c in 0..2 * l {
            map.set(r, 2 * k + c, e.get(r, c).clone());
        }
    }
    let mut x0 = linalg::zero_vector(n);
    for x in &mut x0[k..2 * k] {
        *x = small_int(rng, 2);
    }
    let u = Matrix::block_diag(&[random_isometry(rng, &g0, 2), random_isometry(rng, &g1, 2)]);
    let map = conjugate(&map, &u);
    let x0 = u.apply(&x0);
    let base = Arc::new(QuadraticZ2Space::new(g0, g1).expect("canonical Gram data"));
    (base, map, x0)
}

/// A canonical space with orthonormal even part, for form tests.
pub fn orthonormal_space(dim0: usize, dim1: usize) -> Arc<QuadraticZ2Space> {
    Arc::new(QuadraticZ2Space::canonical(dim0, dim1, EvenStyle::Orthonormal).expect("even odd dimension"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbits::is_skew;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn isometries_preserve_forms() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for g in [hyperbolic_gram(5), darboux_gram(4), Matrix::identity(3)] {
            let u = random_isometry(&mut rng, &g, 4);
            assert_eq!(u.transpose().mul(&g).mul(&u), g);
        }
    }

    #[test]
    fn generated_maps_are_skew() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for kind in [FormKind::Orthogonal, FormKind::Symplectic] {
            let g = canonical_form(4, kind);
            assert!(is_skew(&random_skew_map(&mut rng, &g, 3), &g));
            let n = random_nilpotent_skew_map(&mut rng, 4, kind);
            assert!(is_skew(&n, &g));
            assert!(n.pow(4).is_zero());
            let (c, gram) = random_split_skew_map(&mut rng, 6, kind);
            assert!(is_skew(&c, &gram));
        }
    }

    #[test]
    fn generalized_inputs_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let (base, map, x0) = random_generalized_input(&mut rng);
            DoubleExtDescriptor::generalized(base, map, x0).unwrap();
        }
    }

    #[test]
    fn valid_algebras_pass_checks() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for (d0, d1) in [(2, 2), (3, 2), (3, 4)] {
            let g = random_valid_algebra(&mut rng, d0, d1).unwrap();
            assert!(g.check_quadratic().unwrap().all_pass());
        }
    }
}
