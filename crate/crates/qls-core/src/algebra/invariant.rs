use std::collections::BTreeMap;
use std::sync::Arc;

use super::Qls;
use crate::error::{QlsError, Result};
use crate::forms::{MonomialKey, SuperForm};
use crate::linalg::{self, Matrix, Vector};
use crate::scalar::Scalar;
use crate::space::QuadraticZ2Space;

/// Coefficient of `α_i ⊗ s_a s_b` per ordered odd pair `(a, b)` in the invariant form.
fn odd_pair_weight() -> Scalar {
    Scalar::ratio(1, 2).expect("nonzero denominator")
}

impl Qls {
    /// The invariant 3-form `I(X, Y, Z) = B([X, Y], Z)`.
    ///
    /// Its even part is `Σ_{i<j<k} B([e_i,e_j],e_k) α_i∧α_j∧α_k`; its mixed part
    /// is `½ Σ_i Σ_{a,b} B([b_a,b_b],e_i) α_i ⊗ s_a s_b` summed over ordered odd pairs.
    pub fn invariant_form(&self) -> Result<SuperForm> {
        if !self.is_invariant_bracket() {
            return Err(QlsError::NotQuadratic("bracket fails parity, antisymmetry or invariance".into()));
        }
        let space = &self.space;
        let (d0, d1) = (space.dim0(), space.dim1());
        let n = space.dim();
        let pairing = |i: usize, j: usize, k: usize| space.bilinear(&self.table[i][j], &linalg::unit_vector(n, k));
        let mut terms = Vec::new();
        for i in 0..d0 {
            for j in i + 1..d0 {
                for k in j + 1..d0 {
                    terms.push((MonomialKey { alt: vec![i, j, k], sym: vec![0; d1] }, pairing(i, j, k)));
                }
            }
        }
        let weight = odd_pair_weight();
        for i in 0..d0 {
            for a in 0..d1 {
                for b in a..d1 {
                    let mut sym = vec![0; d1];
                    sym[a] += 1;
                    sym[b] += 1;
                    let multiplicity = Scalar::from_int(if a == b { 1 } else { 2 });
                    let c = &(&pairing(d0 + a, d0 + b, i) * &weight) * &multiplicity;
                    terms.push((MonomialKey { alt: vec![i], sym }, c));
                }
            }
        }
        SuperForm::from_terms(space, terms)
    }

    /// The algebra whose invariant form is `form`, after checking `{I, I} = 0`.
    pub fn from_invariant_form(space: Arc<QuadraticZ2Space>, form: &SuperForm) -> Result<Qls> {
        let bracket = form.poisson(form)?;
        if !bracket.is_zero() {
            return Err(QlsError::NonIntegrable { bracket: Box::new(bracket) });
        }
        Self::from_invariant_form_unchecked(space, form)
    }

    /// The bracket read off `form` without the integrability check.
    ///
    /// The result is graded, super-antisymmetric and invariant by construction;
    /// it satisfies Jacobi exactly when `{I, I} = 0`.
    pub fn from_invariant_form_unchecked(space: Arc<QuadraticZ2Space>, form: &SuperForm) -> Result<Qls> {
        if form.space().as_ref() != space.as_ref() {
            return Err(QlsError::Shape("form lives over a different space".into()));
        }
        let (Some(inv0), Some(inv1)) = (space.gram0_inverse(), space.gram1_inverse()) else {
            return Err(QlsError::NotInvertible("Gram data is degenerate".into()));
        };
        let (inv0t, inv1t) = (inv0.transpose(), inv1.transpose());
        let (d0, d1) = (space.dim0(), space.dim1());
        let weight_inv = odd_pair_weight().inv().expect("nonzero weight");
        let mut even_t: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
        let mut mixed_t: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
        for (key, c) in form.terms() {
            match (key.omega(), key.sym_degree()) {
                (3, 0) => {
                    let (i, j, k) = (key.alt[0], key.alt[1], key.alt[2]);
                    for ((x, y, z), odd) in [
                        ((i, j, k), false),
                        ((j, k, i), false),
                        ((k, i, j), false),
                        ((j, i, k), true),
                        ((i, k, j), true),
                        ((k, j, i), true),
                    ] {
                        even_t.insert((x, y, z), if odd { -c.clone() } else { c.clone() });
                    }
                }
                (1, 2) => {
                    let odd: Vec<usize> = key
                        .sym
                        .iter()
                        .enumerate()
                        .flat_map(|(a, &e)| std::iter::repeat_n(a, e as usize))
                        .collect();
                    let (a, b) = (odd[0], odd[1]);
                    let mut t = c * &weight_inv;
                    if a != b {
                        t = &t * &Scalar::ratio(1, 2).expect("nonzero denominator");
                    }
                    mixed_t.insert((key.alt[0], a, b), t.clone());
                    mixed_t.insert((key.alt[0], b, a), t);
                }
                (omega, f) => {
                    return Err(QlsError::Shape(format!(
                        "invariant form has a term of alternating degree {omega} and symmetric degree {f}"
                    )))
                }
            }
        }
        let mut g = Qls::abelian(Arc::clone(&space));
        let n = space.dim();
        let lift_even = |t: Vector| -> Vector {
            let mut v = inv0t.apply(&t);
            v.extend(std::iter::repeat_n(Scalar::zero(), d1));
            v
        };
        let lift_odd = |t: Vector| -> Vector {
            let mut v = linalg::zero_vector(d0);
            v.extend(inv1t.apply(&t));
            v
        };
        let get = |m: &BTreeMap<(usize, usize, usize), Scalar>, k: (usize, usize, usize)| m.get(&k).cloned().unwrap_or_default();
        for i in 0..d0 {
            for j in 0..d0 {
                let t: Vector = (0..d0).map(|k| get(&even_t, (i, j, k))).collect();
                g.table[i][j] = lift_even(t);
            }
            for a in 0..d1 {
                let t: Vector = (0..d1).map(|c| get(&mixed_t, (i, a, c))).collect();
                let v = lift_odd(t);
                g.table[d0 + a][i] = linalg::scale_vector(&v, &Scalar::from_int(-1));
                g.table[i][d0 + a] = v;
            }
        }
        for a in 0..d1 {
            for b in 0..d1 {
                let t: Vector = (0..d0).map(|i| get(&mixed_t, (i, a, b))).collect();
                g.table[d0 + a][d0 + b] = lift_even(t);
            }
        }
        debug_assert_eq!(g.table.len(), n);
        Ok(g)
    }

    /// Basis of `V_I = {α ∈ g* : α ∧ I = 0}` as covector coordinates.
    pub fn singular_covectors(&self) -> Result<Vec<Vector>> {
        let form = self.invariant_form()?;
        let space = &self.space;
        let n = space.dim();
        let columns: Vec<SuperForm> = (0..n)
            .map(|k| SuperForm::generator(space, k).wedge(&form))
            .collect::<Result<_>>()?;
        let mut rows: BTreeMap<&MonomialKey, usize> = BTreeMap::new();
        for col in &columns {
            for key in col.terms().keys() {
                let next = rows.len();
                rows.entry(key).or_insert(next);
            }
        }
        let mut m = Matrix::zeros(rows.len(), n);
        for (k, col) in columns.iter().enumerate() {
            for (key, c) in col.terms() {
                m.set(rows[key], k, c.clone());
            }
        }
        Ok(m.nullspace())
    }

    /// `dim V_I`, defined for non-abelian algebras.
    pub fn dup_number(&self) -> Result<usize> {
        if self.is_abelian() {
            return Err(QlsError::UndefinedDup);
        }
        let dup = self.singular_covectors()?.len();
        if ![0, 1, 3].contains(&dup) {
            return Err(QlsError::Internal(format!("dup-number {dup} outside {{0, 1, 3}}")));
        }
        Ok(dup)
    }
}
