use serde::Serialize;

use super::Qls;
use crate::error::{QlsError, Result};
use crate::exec::Exec;
use crate::linalg;
use crate::scalar::Scalar;
use crate::space::Parity;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    Parity,
    Antisymmetry,
    Invariance,
    Jacobi,
    Nondegeneracy,
}

/// Basis indices on which a property fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub property: Property,
    pub indices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub parity: bool,
    pub antisymmetry: bool,
    pub invariance: bool,
    pub jacobi: bool,
    pub nondegeneracy: bool,
    pub witness: Option<Witness>,
}

impl StructureReport {
    pub fn all_pass(&self) -> bool {
        self.parity && self.antisymmetry && self.invariance && self.jacobi && self.nondegeneracy
    }
}

impl Qls {
    fn parity_bit(&self, i: usize) -> usize {
        self.space.parity_of_index(i).bit()
    }

    fn parity_fails(&self, i: usize, j: usize) -> bool {
        let target = Parity::from_bit(self.parity_bit(i) + self.parity_bit(j));
        self.table[i][j]
            .iter()
            .enumerate()
            .any(|(k, c)| !c.is_zero() && self.space.parity_of_index(k) != target)
    }

    fn antisymmetry_fails(&self, i: usize, j: usize) -> bool {
        linalg::scale_vector(&self.table[i][j], &self.swap_sign(i, j)) != self.table[j][i]
    }

    fn invariance_fails(&self, i: usize, j: usize, k: usize) -> bool {
        let n = self.dim();
        let left = self.space.bilinear(&self.table[i][j], &linalg::unit_vector(n, k));
        let right = self.space.bilinear(&linalg::unit_vector(n, i), &self.table[j][k]);
        left != right
    }

    /// The graded cyclic sum `(−1)^{xz}[X,[Y,Z]] + (−1)^{yx}[Y,[Z,X]] + (−1)^{zy}[Z,[X,Y]]` on basis vectors.
    pub fn jacobiator(&self, i: usize, j: usize, k: usize) -> Vec<Scalar> {
        let n = self.dim();
        let (x, y, z) = (self.parity_bit(i), self.parity_bit(j), self.parity_bit(k));
        let sign = |e: usize| Scalar::from_int(if e % 2 == 1 { -1 } else { 1 });
        let unit = |a: usize| linalg::unit_vector(n, a);
        let mut out = linalg::zero_vector(n);
        linalg::axpy(&mut out, &sign(x * z), &self.bracket(&unit(i), &self.table[j][k]));
        linalg::axpy(&mut out, &sign(y * x), &self.bracket(&unit(j), &self.table[k][i]));
        linalg::axpy(&mut out, &sign(z * y), &self.bracket(&unit(k), &self.table[i][j]));
        out
    }

    fn first_pair(&self, exec: Exec, fails: impl Fn(usize, usize) -> bool + Sync + Send) -> Option<Vec<usize>> {
        let n = self.dim();
        exec.find_first(n * n, |t| {
            let (i, j) = (t / n, t % n);
            fails(i, j).then(|| vec![i, j])
        })
    }

    fn first_triple(&self, exec: Exec, fails: impl Fn(usize, usize, usize) -> bool + Sync + Send) -> Option<Vec<usize>> {
        let n = self.dim();
        exec.find_first(n * n * n, |t| {
            let (i, j, k) = (t / (n * n), (t / n) % n, t % n);
            fails(i, j, k).then(|| vec![i, j, k])
        })
    }

    /// First basis triple violating the super Jacobi identity, if any.
    pub fn jacobi_witness(&self, exec: Exec) -> Option<Vec<usize>> {
        self.first_triple(exec, |i, j, k| !linalg::is_zero_vector(&self.jacobiator(i, j, k)))
    }

    /// Whether the three structural conditions needed for the invariant form hold.
    pub fn is_invariant_bracket(&self) -> bool {
        let exec = Exec::default();
        self.first_pair(exec, |i, j| self.parity_fails(i, j)).is_none()
            && self.first_pair(exec, |i, j| self.antisymmetry_fails(i, j)).is_none()
            && self.first_triple(exec, |i, j, k| self.invariance_fails(i, j, k)).is_none()
    }

    pub fn check_quadratic(&self) -> Result<StructureReport> {
        self.check_quadratic_with(Exec::default())
    }

    /// Evaluates every structural flag. When the bracket is invariant and `B`
    /// nondegenerate, Jacobi is decided both directly and through `{I, I} = 0`;
    /// disagreement is reported as an internal error.
    pub fn check_quadratic_with(&self, exec: Exec) -> Result<StructureReport> {
        let mut witness = None;
        let mut record = |property: Property, found: Option<Vec<usize>>| {
            let ok = found.is_none();
            if let (None, Some(indices)) = (&witness, found) {
                witness = Some(Witness { property, indices });
            }
            ok
        };
        let nondegeneracy = self.space.is_nondegenerate() && self.space.validate().is_ok();
        let nondegeneracy = record(Property::Nondegeneracy, (!nondegeneracy).then(Vec::new));
        let parity = record(Property::Parity, self.first_pair(exec, |i, j| self.parity_fails(i, j)));
        let antisymmetry = record(Property::Antisymmetry, self.first_pair(exec, |i, j| self.antisymmetry_fails(i, j)));
        let invariance = record(
            Property::Invariance,
            self.first_triple(exec, |i, j, k| self.invariance_fails(i, j, k)),
        );
        let jacobi_found = self.jacobi_witness(exec);
        let jacobi = record(Property::Jacobi, jacobi_found);
        if nondegeneracy && parity && antisymmetry && invariance {
            let form = self.invariant_form()?;
            let integrable = form.poisson_with(&form, exec)?.is_zero();
            if integrable != jacobi {
                return Err(QlsError::Internal(format!(
                    "direct Jacobi check ({jacobi}) disagrees with {{I,I}} = 0 ({integrable})"
                )));
            }
        }
        Ok(StructureReport { parity, antisymmetry, invariance, jacobi, nondegeneracy, witness })
    }

    /// Re-evaluates the property named by a witness; true when it still fails.
    pub fn reproduces(&self, witness: &Witness) -> bool {
        let ix = &witness.indices;
        match (witness.property, ix.as_slice()) {
            (Property::Nondegeneracy, []) => !self.space.is_nondegenerate() || self.space.validate().is_err(),
            (Property::Parity, &[i, j]) => self.parity_fails(i, j),
            (Property::Antisymmetry, &[i, j]) => self.antisymmetry_fails(i, j),
            (Property::Invariance, &[i, j, k]) => self.invariance_fails(i, j, k),
            (Property::Jacobi, &[i, j, k]) => !linalg::is_zero_vector(&self.jacobiator(i, j, k)),
            _ => false,
        }
    }
}
