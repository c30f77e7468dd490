//! The super-exterior algebra `Alt(g₀) ⊗ Sym(g₁)` of a graded quadratic space.
//!
//! A monomial `α_{i₁}∧…∧α_{iω} ⊗ s₁^{e₁}…s_n^{e_n}` is stored under a
//! [`MonomialKey`] with strictly increasing alternating indices, where `α_i`
//! is the dual coordinate of even basis vector `i` and `s_a` that of odd
//! basis vector `dim0 + a`. Its bidegree is `(ω + f, f mod 2)` with
//! `f = Σ e_a`.
//!
//! Contractions follow the derivation rules
//! `ι_{e_i}(Ω⊗F) = ι_{e_i}(Ω)⊗F` and `ι_{b_a}(Ω⊗F) = (−1)^ω Ω⊗(−∂F/∂s_a)`,
//! and the Poisson bracket is the basis-free double sum
//!
//! ```text
//! {A, A'} = (−1)^{ω+f+1} Σ_{i,j} (G₀⁻¹)_{ij} ι_{e_i}A ∧ ι_{e_j}A'
//!         + (−1)^ω      Σ_{a,b} (G₁⁻¹)_{ba} ι_{b_a}A ∧ ι_{b_b}A'
//! ```
//!
//! evaluated on each bidegree-homogeneous piece `A ∈ Alt^ω ⊗ Sym^f`.
//! On a Darboux odd basis the second sum is
//! `Σ_k ι_{X_k}A∧ι_{Y_k}A' − ι_{Y_k}A∧ι_{X_k}A'`, and on an orthonormal even
//! basis the first sum is `Σ_j ι_{Z_j}A∧ι_{Z_j}A'`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{QlsError, Result};
use crate::exec::Exec;
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::space::{Parity, QuadraticZ2Space};

/// Key of a monomial: increasing even-dual indices and odd-dual exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialKey {
    pub alt: Vec<usize>,
    pub sym: Vec<u32>,
}

impl MonomialKey {
    pub fn unit(dim1: usize) -> Self {
        Self { alt: Vec::new(), sym: vec![0; dim1] }
    }

    /// Alternating degree `ω`.
    pub fn omega(&self) -> usize {
        self.alt.len()
    }

    /// Symmetric degree `f`.
    pub fn sym_degree(&self) -> u32 {
        self.sym.iter().sum()
    }

    /// `(ω + f, f mod 2)`.
    pub fn bidegree(&self) -> (usize, Parity) {
        let f = self.sym_degree() as usize;
        (self.omega() + f, Parity::from_bit(f))
    }

    fn is_normalized(&self, dim0: usize, dim1: usize) -> bool {
        self.sym.len() == dim1
            && self.alt.windows(2).all(|w| w[0] < w[1])
            && self.alt.last().is_none_or(|&i| i < dim0)
    }
}

/// Product of two monomials with its sign, or `None` when an alternating index repeats.
fn monomial_product(a: &MonomialKey, b: &MonomialKey) -> Option<(MonomialKey, bool)> {
    let mut alt = Vec::with_capacity(a.alt.len() + b.alt.len());
    let mut inversions = 0usize;
    let (mut i, mut j) = (0, 0);
    while i < a.alt.len() || j < b.alt.len() {
        if j == b.alt.len() || (i < a.alt.len() && a.alt[i] < b.alt[j]) {
            alt.push(a.alt[i]);
            i += 1;
        } else if i == a.alt.len() || b.alt[j] < a.alt[i] {
            inversions += a.alt.len() - i;
            alt.push(b.alt[j]);
            j += 1;
        } else {
            return None;
        }
    }
    let sym = a.sym.iter().zip(&b.sym).map(|(x, y)| x + y).collect();
    let twist = a.sym_degree() as usize * b.omega();
    Some((MonomialKey { alt, sym }, (inversions + twist) % 2 == 1))
}

#[derive(Clone, PartialEq, Eq)]
pub struct SuperForm {
    space: Arc<QuadraticZ2Space>,
    terms: BTreeMap<MonomialKey, Scalar>,
}

impl SuperForm {
    pub fn zero(space: &Arc<QuadraticZ2Space>) -> Self {
        Self { space: Arc::clone(space), terms: BTreeMap::new() }
    }

    pub fn constant(space: &Arc<QuadraticZ2Space>, c: Scalar) -> Self {
        let mut f = Self::zero(space);
        f.add_term(MonomialKey::unit(space.dim1()), c);
        f
    }

    /// The dual coordinate of global basis vector `index`.
    pub fn generator(space: &Arc<QuadraticZ2Space>, index: usize) -> Self {
        let mut key = MonomialKey::unit(space.dim1());
        if index < space.dim0() {
            key.alt.push(index);
        } else {
            key.sym[index - space.dim0()] = 1;
        }
        let mut f = Self::zero(space);
        f.add_term(key, Scalar::one());
        f
    }

    /// The 1-form with the given coefficients on the full dual basis.
    pub fn covector(space: &Arc<QuadraticZ2Space>, coeffs: &[Scalar]) -> Result<Self> {
        if coeffs.len() != space.dim() {
            return Err(QlsError::Shape("covector length differs from dimension".into()));
        }
        let mut f = Self::zero(space);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                f.add_assign(&Self::generator(space, i).scale(c));
            }
        }
        Ok(f)
    }

    /// Builds a form from explicit terms, validating every key.
    pub fn from_terms(
        space: &Arc<QuadraticZ2Space>,
        terms: impl IntoIterator<Item = (MonomialKey, Scalar)>,
    ) -> Result<Self> {
        let mut f = Self::zero(space);
        for (key, c) in terms {
            if !key.is_normalized(space.dim0(), space.dim1()) {
                return Err(QlsError::Shape(format!("monomial key {key:?} is not normalized for this space")));
            }
            f.add_term(key, c);
        }
        Ok(f)
    }

    pub fn space(&self) -> &Arc<QuadraticZ2Space> {
        &self.space
    }

    pub fn terms(&self) -> &BTreeMap<MonomialKey, Scalar> {
        &self.terms
    }

    pub fn coefficient(&self, key: &MonomialKey) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_space(&self, other: &SuperForm) -> Result<()> {
        if Arc::ptr_eq(&self.space, &other.space) || self.space == other.space {
            Ok(())
        } else {
            Err(QlsError::Shape("forms live over different spaces".into()))
        }
    }

    fn add_term(&mut self, key: MonomialKey, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn add_assign(&mut self, other: &SuperForm) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.clone());
        }
    }

    /// Sum of two forms over the same space.
    pub fn add(&self, other: &SuperForm) -> Result<SuperForm> {
        self.same_space(other)?;
        let mut out = self.clone();
        out.add_assign(other);
        Ok(out)
    }

    pub fn sub(&self, other: &SuperForm) -> Result<SuperForm> {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Scalar) -> SuperForm {
        if s.is_zero() {
            return Self::zero(&self.space);
        }
        let terms = self.terms.iter().map(|(k, c)| (k.clone(), c * s)).collect();
        SuperForm { space: Arc::clone(&self.space), terms }
    }

    pub fn neg(&self) -> SuperForm {
        self.scale(&Scalar::from_int(-1))
    }

    /// The common bidegree of all terms, or `None` for zero or mixed forms.
    pub fn bidegree(&self) -> Option<(usize, Parity)> {
        let mut it = self.terms.keys().map(MonomialKey::bidegree);
        let first = it.next()?;
        it.all(|b| b == first).then_some(first)
    }

    /// Splits into pieces of fixed `(ω, f)`.
    pub fn homogeneous_parts(&self) -> BTreeMap<(usize, u32), SuperForm> {
        let mut parts: BTreeMap<(usize, u32), SuperForm> = BTreeMap::new();
        for (k, c) in &self.terms {
            parts
                .entry((k.omega(), k.sym_degree()))
                .or_insert_with(|| Self::zero(&self.space))
                .terms
                .insert(k.clone(), c.clone());
        }
        parts
    }

    /// Terms with alternating degree `omega` and symmetric degree `f`.
    pub fn component(&self, omega: usize, f: u32) -> SuperForm {
        let terms = self
            .terms
            .iter()
            .filter(|(k, _)| k.omega() == omega && k.sym_degree() == f)
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect();
        SuperForm { space: Arc::clone(&self.space), terms }
    }

    /// Exterior product.
    pub fn wedge(&self, other: &SuperForm) -> Result<SuperForm> {
        self.same_space(other)?;
        Ok(self.wedge_unchecked(other))
    }

    fn wedge_unchecked(&self, other: &SuperForm) -> SuperForm {
        let mut out = Self::zero(&self.space);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                if let Some((key, negative)) = monomial_product(ka, kb) {
                    let c = ca * cb;
                    out.add_term(key, if negative { -c } else { c });
                }
            }
        }
        out
    }

    /// Contraction by the global basis vector `index`.
    pub fn iota_basis(&self, index: usize) -> SuperForm {
        let mut out = Self::zero(&self.space);
        let dim0 = self.space.dim0();
        for (k, c) in &self.terms {
            if index < dim0 {
                if let Some(pos) = k.alt.iter().position(|&i| i == index) {
                    let mut key = k.clone();
                    key.alt.remove(pos);
                    out.add_term(key, if pos % 2 == 1 { -c } else { c.clone() });
                }
            } else {
                let a = index - dim0;
                let e = k.sym[a];
                if e == 0 {
                    continue;
                }
                let mut key = k.clone();
                key.sym[a] -= 1;
                let mut coeff = c * &Scalar::from_int(-(e as i64));
                if k.omega() % 2 == 1 {
                    coeff = -coeff;
                }
                out.add_term(key, coeff);
            }
        }
        out
    }

    /// Contraction `ι_X` by a homogeneous vector.
    pub fn iota(&self, x: &[Scalar]) -> Result<SuperForm> {
        self.space.parity(x)?;
        let mut out = Self::zero(&self.space);
        for (i, xi) in x.iter().enumerate() {
            if !xi.is_zero() {
                out.add_assign(&self.iota_basis(i).scale(xi));
            }
        }
        Ok(out)
    }

    /// Super Poisson bracket `{self, other}`.
    pub fn poisson(&self, other: &SuperForm) -> Result<SuperForm> {
        self.poisson_with(other, Exec::default())
    }

    /// [`poisson`](Self::poisson) with an explicit execution strategy.
    pub fn poisson_with(&self, other: &SuperForm, exec: Exec) -> Result<SuperForm> {
        self.same_space(other)?;
        let space = &self.space;
        let (Some(inv0), Some(inv1)) = (space.gram0_inverse(), space.gram1_inverse()) else {
            return Err(QlsError::NotInvertible("Poisson bracket needs nondegenerate Gram data".into()));
        };
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(space));
        }
        let dim0 = space.dim0();
        let n = space.dim();
        let contracted: Vec<SuperForm> = (0..n).map(|j| other.iota_basis(j)).collect();
        // Right factors: even `W_i = Σ_j (G₀⁻¹)_{ij} ι_j A'`, odd `V_a = Σ_b (G₁⁻¹)_{ba} ι_b A'`.
        let partners: Vec<SuperForm> = exec.map_range(n, |i| {
            let mut w = Self::zero(space);
            if i < dim0 {
                for (j, iota_j) in contracted[..dim0].iter().enumerate() {
                    let g = inv0.get(i, j);
                    if !g.is_zero() {
                        w.add_assign(&iota_j.scale(g));
                    }
                }
            } else {
                let a = i - dim0;
                for b in 0..space.dim1() {
                    let g = inv1.get(b, a);
                    if !g.is_zero() {
                        w.add_assign(&contracted[dim0 + b].scale(g));
                    }
                }
            }
            w
        });
        let parts: Vec<((usize, u32), SuperForm)> = self.homogeneous_parts().into_iter().collect();
        let jobs: Vec<(usize, usize)> = (0..parts.len()).flat_map(|p| (0..n).map(move |i| (p, i))).collect();
        let pieces = exec.map(&jobs, |&(p, i)| {
            let ((omega, f), part) = &parts[p];
            if partners[i].is_zero() {
                return None;
            }
            let left = part.iota_basis(i);
            if left.is_zero() {
                return None;
            }
            let sign_exp = if i < dim0 { omega + *f as usize + 1 } else { *omega };
            let prod = left.wedge_unchecked(&partners[i]);
            Some(if sign_exp % 2 == 1 { prod.neg() } else { prod })
        });
        let mut out = Self::zero(space);
        for piece in pieces.into_iter().flatten() {
            out.add_assign(&piece);
        }
        Ok(out)
    }

    /// Rewrites the form in a new basis `f_j = Σ_i P_{ij} e_i` of the same graded space.
    ///
    /// `basis_change` is the full block-diagonal matrix; `target` carries the
    /// transformed Gram data.
    pub fn transport(&self, basis_change: &Matrix, target: &Arc<QuadraticZ2Space>) -> Result<SuperForm> {
        let n = self.space.dim();
        if basis_change.rows() != n || basis_change.cols() != n || target.dim0() != self.space.dim0() || target.dim1() != self.space.dim1() {
            return Err(QlsError::Shape("basis change does not match the space".into()));
        }
        let images: Vec<SuperForm> = (0..n)
            .map(|i| SuperForm::covector(target, &basis_change.row(i)))
            .collect::<Result<_>>()?;
        let mut out = Self::zero(target);
        let dim0 = self.space.dim0();
        for (k, c) in &self.terms {
            let mut prod = SuperForm::constant(target, c.clone());
            for &i in &k.alt {
                prod = prod.wedge_unchecked(&images[i]);
            }
            for (a, &e) in k.sym.iter().enumerate() {
                for _ in 0..e {
                    prod = prod.wedge_unchecked(&images[dim0 + a]);
                }
            }
            out.add_assign(&prod);
        }
        Ok(out)
    }
}

impl fmt::Debug for SuperForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let dim0 = self.space.dim0();
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for i in &k.alt {
                write!(f, "·a{i}")?;
            }
            for (a, e) in k.sym.iter().enumerate() {
                if *e > 0 {
                    write!(f, "·s{}^{e}", dim0 + a)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::EvenStyle;

    fn space(d0: usize, d1: usize) -> Arc<QuadraticZ2Space> {
        Arc::new(QuadraticZ2Space::canonical(d0, d1, EvenStyle::Orthonormal).unwrap())
    }

    #[test]
    fn unit_is_neutral() {
        let s = space(2, 2);
        let a = SuperForm::generator(&s, 0).wedge(&SuperForm::generator(&s, 3)).unwrap();
        assert_eq!(SuperForm::constant(&s, Scalar::one()).wedge(&a).unwrap(), a);
    }

    #[test]
    fn odd_times_odd_sign() {
        let s = space(2, 2);
        let alpha = SuperForm::generator(&s, 0);
        let beta = SuperForm::generator(&s, 1);
        let p = SuperForm::generator(&s, 2);
        let lhs = alpha.wedge(&p).unwrap().wedge(&beta.wedge(&p).unwrap()).unwrap();
        let p2 = p.wedge(&p).unwrap();
        let rhs = alpha.wedge(&beta).unwrap().wedge(&p2).unwrap().neg();
        assert_eq!(lhs, rhs);
        assert!(!p2.is_zero());
        assert_eq!(p2.terms().keys().next().unwrap().sym, vec![2, 0]);
    }

    #[test]
    fn contraction_examples() {
        let s = space(2, 2);
        let e1 = vec![Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::zero()];
        let a12 = SuperForm::generator(&s, 0).wedge(&SuperForm::generator(&s, 1)).unwrap();
        assert_eq!(a12.iota(&e1).unwrap(), SuperForm::generator(&s, 1));

        let p = SuperForm::generator(&s, 2);
        let x = crate::linalg::unit_vector(4, 2);
        assert_eq!(p.wedge(&p).unwrap().iota(&x).unwrap(), p.scale(&Scalar::from_int(-2)));

        let alpha_p = SuperForm::generator(&s, 0).wedge(&p).unwrap();
        assert_eq!(alpha_p.iota(&x).unwrap(), SuperForm::generator(&s, 0));

        let mixed = vec![Scalar::one(), Scalar::zero(), Scalar::one(), Scalar::zero()];
        assert!(matches!(alpha_p.iota(&mixed), Err(QlsError::Parity(_))));
    }

    #[test]
    fn basic_brackets() {
        let s = space(1, 2);
        let e = SuperForm::generator(&s, 0);
        assert_eq!(e.poisson(&e).unwrap(), SuperForm::constant(&s, Scalar::one()));
        let p = SuperForm::generator(&s, 1);
        let q = SuperForm::generator(&s, 2);
        assert_eq!(p.poisson(&q).unwrap(), SuperForm::constant(&s, Scalar::one()));
        let one = SuperForm::constant(&s, Scalar::one());
        assert!(one.poisson(&p.wedge(&e).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn mismatched_spaces_are_rejected() {
        let a = SuperForm::generator(&space(1, 0), 0);
        let b = SuperForm::generator(&space(2, 0), 0);
        assert!(matches!(a.wedge(&b), Err(QlsError::Shape(_))));
        assert!(matches!(a.poisson(&b), Err(QlsError::Shape(_))));
    }
}
