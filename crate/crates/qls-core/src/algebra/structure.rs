use serde::Serialize;

use super::Qls;
use crate::error::{QlsError, Result};
use crate::forms::SuperForm;
use crate::linalg::{self, Matrix, Vector};
use crate::space::Parity;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgebraType {
    Ordinary,
    SingularS1,
    SingularS3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub kind: AlgebraType,
    pub elementary: bool,
}

/// `g = z ⊥⊕ l` with `z` central and nondegenerate, `Z(l)` totally isotropic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedDecomposition {
    pub central: Vec<Vector>,
    pub complement: Vec<Vector>,
}

impl Qls {
    /// Splits homogeneous-by-construction spanning vectors into a graded basis.
    pub(crate) fn graded_span(&self, vectors: &[Vector]) -> Vec<Vector> {
        let n = self.dim();
        let mut even = Vec::new();
        let mut odd = Vec::new();
        for v in vectors {
            let (e, o) = self.space.split(v);
            even.push(e);
            odd.push(o);
        }
        let mut out = linalg::span_basis(n, &even);
        out.extend(linalg::span_basis(n, &odd));
        out
    }

    /// Graded basis of `[A, B]` for subspaces given by spanning sets.
    fn bracket_span(&self, a: &[Vector], b: &[Vector]) -> Vec<Vector> {
        let values: Vec<Vector> = a.iter().flat_map(|x| b.iter().map(move |y| self.bracket(x, y))).collect();
        self.graded_span(&values)
    }

    fn whole(&self) -> Vec<Vector> {
        (0..self.dim()).map(|i| linalg::unit_vector(self.dim(), i)).collect()
    }

    /// Graded basis of `[g, g]`.
    pub fn derived_ideal(&self) -> Vec<Vector> {
        let values: Vec<Vector> = self.table.iter().flatten().cloned().collect();
        self.graded_span(&values)
    }

    /// Graded basis of `W^⊥`.
    pub fn orthogonal(&self, w: &[Vector]) -> Vec<Vector> {
        let n = self.dim();
        if w.is_empty() {
            return self.whole();
        }
        let gram = self.space.gram();
        let rows: Vec<Vector> = w.iter().map(|v| gram.apply(v)).collect();
        let m = Matrix::from_fn(rows.len(), n, |r, c| rows[r][c].clone());
        self.graded_span(&m.nullspace())
    }

    /// Graded basis of the center `Z(g) = [g, g]^⊥`.
    pub fn center(&self) -> Vec<Vector> {
        self.orthogonal(&self.derived_ideal())
    }

    /// Dimensions of the even and odd parts of a graded basis.
    pub fn graded_dims(&self, basis: &[Vector]) -> (usize, usize) {
        let even = basis.iter().filter(|v| self.space.parity(v).ok() == Some(Parity::Even)).count();
        (even, basis.len() - even)
    }

    /// Whether the center is totally isotropic.
    pub fn is_reduced(&self) -> bool {
        let z = self.center();
        z.iter().all(|x| z.iter().all(|y| self.space.bilinear(x, y).is_zero()))
    }

    pub fn reduce_decompose(&self) -> Result<ReducedDecomposition> {
        if self.is_abelian() {
            return Err(QlsError::UndefinedDup);
        }
        let n = self.dim();
        let z = self.center();
        let mut central = Vec::new();
        for parity in [Parity::Even, Parity::Odd] {
            let block: Vec<Vector> = z.iter().filter(|v| self.space.parity(v).ok() == Some(parity)).cloned().collect();
            let gram = Matrix::from_fn(block.len(), block.len(), |r, c| self.space.bilinear(&block[r], &block[c]));
            let radical: Vec<Vector> = gram
                .nullspace()
                .iter()
                .map(|coef| {
                    let mut v = linalg::zero_vector(n);
                    for (c, b) in coef.iter().zip(&block) {
                        linalg::axpy(&mut v, c, b);
                    }
                    v
                })
                .collect();
            central.extend(linalg::complement_in(n, &radical, &block));
        }
        let complement = self.orthogonal(&central);
        Ok(ReducedDecomposition { central, complement })
    }

    /// Derived series `g ⊇ [g,g] ⊇ …` until it stabilises.
    pub fn derived_series(&self) -> Vec<Vec<Vector>> {
        let mut series = vec![self.whole()];
        loop {
            let last = series.last().expect("nonempty");
            let next = self.bracket_span(last, last);
            if next.len() == last.len() {
                return series;
            }
            series.push(next);
        }
    }

    /// Lower central series `g ⊇ [g,g] ⊇ [g,[g,g]] ⊇ …` until it stabilises.
    pub fn lower_central_series(&self) -> Vec<Vec<Vector>> {
        let whole = self.whole();
        let mut series = vec![whole.clone()];
        loop {
            let last = series.last().expect("nonempty");
            let next = self.bracket_span(&whole, last);
            if next.len() == last.len() {
                return series;
            }
            series.push(next);
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().is_none_or(Vec::is_empty)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().is_none_or(Vec::is_empty)
    }

    /// `[[g, g], g] = 0`.
    pub fn is_two_step_nilpotent(&self) -> bool {
        let d = self.derived_ideal();
        self.bracket_span(&d, &self.whole()).is_empty()
    }

    pub fn classify(&self) -> Result<Classification> {
        let kind = match self.dup_number()? {
            0 => AlgebraType::Ordinary,
            1 => AlgebraType::SingularS1,
            _ => AlgebraType::SingularS3,
        };
        Ok(Classification { kind, elementary: self.has_decomposable_invariant()? })
    }

    /// Whether `I` is decomposable: either a decomposable 3-form on `g₀`, or `α ⊗ Ω` with `rank Ω ≤ 2`.
    pub fn has_decomposable_invariant(&self) -> Result<bool> {
        let form = self.invariant_form()?;
        let (d0, d1) = (self.space.dim0(), self.space.dim1());
        let even_part = form.component(3, 0);
        let mixed_part = form.component(1, 2);
        match (even_part.is_zero(), mixed_part.is_zero()) {
            (true, true) => Err(QlsError::UndefinedDup),
            (false, false) => Ok(false),
            (false, true) => {
                let annihilators = (0..d0)
                    .map(|i| SuperForm::generator(&self.space, i).wedge(&even_part))
                    .collect::<Result<Vec<_>>>()?;
                Ok(dependent_dimension(&annihilators) == 3)
            }
            (true, false) => {
                let half = crate::scalar::Scalar::ratio(1, 2)?;
                let quadric = |i: usize| -> Matrix {
                    Matrix::from_fn(d1, d1, |a, b| {
                        let mut sym = vec![0; d1];
                        sym[a] += 1;
                        sym[b] += 1;
                        let c = mixed_part.coefficient(&crate::forms::MonomialKey { alt: vec![i], sym });
                        if a == b {
                            c
                        } else {
                            &c * &half
                        }
                    })
                };
                let quadrics: Vec<Matrix> = (0..d0).map(quadric).collect();
                let flat: Vec<Vector> = quadrics.iter().map(|q| q.to_rows().concat()).collect();
                if linalg::rank_of(d1 * d1, &flat) != 1 {
                    return Ok(false);
                }
                let omega = quadrics.iter().find(|q| !q.is_zero()).expect("rank one family");
                Ok(omega.rank() <= 2)
            }
        }
    }
}

/// Dimension of the kernel of `k ↦ forms[k]` as a linear map from coefficient space.
fn dependent_dimension(forms: &[SuperForm]) -> usize {
    let mut keys = std::collections::BTreeMap::new();
    for f in forms {
        for k in f.terms().keys() {
            let next = keys.len();
            keys.entry(k.clone()).or_insert(next);
        }
    }
    let mut m = Matrix::zeros(keys.len(), forms.len());
    for (c, f) in forms.iter().enumerate() {
        for (k, v) in f.terms() {
            m.set(keys[k], c, v.clone());
        }
    }
    forms.len() - m.rank()
}
