//! Quadratic Lie superalgebras given by structure constants.

mod centroid;
mod check;
mod invariant;
mod structure;

use std::sync::Arc;

use crate::error::{QlsError, Result};
use crate::linalg::{self, Matrix, Vector};
use crate::scalar::Scalar;
use crate::space::{Parity, QuadraticZ2Space};

pub use check::{Property, StructureReport, Witness};
pub use structure::{AlgebraType, Classification, ReducedDecomposition};

/// A graded space with Gram data and a bilinear bracket on its basis.
///
/// `table[i][j]` holds the coordinates of `[b_i, b_j]`. Construction never
/// validates the bracket; use [`Qls::check_quadratic`] for that.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Qls {
    space: Arc<QuadraticZ2Space>,
    table: Vec<Vec<Vector>>,
}

impl Qls {
    pub fn abelian(space: Arc<QuadraticZ2Space>) -> Self {
        let n = space.dim();
        Self { table: vec![vec![linalg::zero_vector(n); n]; n], space }
    }

    /// Builds the bracket from entries `[b_i, b_j]` with `i ≤ j`; the remaining
    /// entries follow from `[b_j, b_i] = −(−1)^{|i||j|} [b_i, b_j]`.
    pub fn from_upper_entries(
        space: Arc<QuadraticZ2Space>,
        entries: impl IntoIterator<Item = (usize, usize, Vector)>,
    ) -> Result<Self> {
        let mut g = Self::abelian(space);
        let n = g.dim();
        for (i, j, value) in entries {
            if i >= n || j >= n || value.len() != n {
                return Err(QlsError::Shape(format!("bracket entry ({i}, {j}) does not fit dimension {n}")));
            }
            if i > j {
                return Err(QlsError::Shape(format!("bracket entry ({i}, {j}) must have i ≤ j")));
            }
            let swapped = g.swap_sign(i, j);
            g.table[j][i] = linalg::scale_vector(&value, &swapped);
            g.table[i][j] = value;
        }
        Ok(g)
    }

    /// Builds the bracket from a full `n × n` table of coordinate vectors.
    pub fn from_table(space: Arc<QuadraticZ2Space>, table: Vec<Vec<Vector>>) -> Result<Self> {
        let n = space.dim();
        if table.len() != n || table.iter().any(|row| row.len() != n || row.iter().any(|v| v.len() != n)) {
            return Err(QlsError::Shape(format!("bracket table must be {n}×{n}×{n}")));
        }
        Ok(Self { space, table })
    }

    /// The sign `−(−1)^{|i||j|}` relating `[b_j, b_i]` to `[b_i, b_j]`.
    fn swap_sign(&self, i: usize, j: usize) -> Scalar {
        let odd = self.space.parity_of_index(i) == Parity::Odd && self.space.parity_of_index(j) == Parity::Odd;
        Scalar::from_int(if odd { 1 } else { -1 })
    }

    pub fn space(&self) -> &Arc<QuadraticZ2Space> {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn table(&self) -> &[Vec<Vector>] {
        &self.table
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &Vector {
        &self.table[i][j]
    }

    pub fn set_bracket_basis(&mut self, i: usize, j: usize, value: Vector) {
        self.table[i][j] = value;
    }

    /// Entries `(i, j, [b_i, b_j])` with `i ≤ j` and nonzero value.
    pub fn upper_entries(&self) -> Vec<(usize, usize, &Vector)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                if !linalg::is_zero_vector(&self.table[i][j]) {
                    out.push((i, j, &self.table[i][j]));
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().flatten().all(|v| linalg::is_zero_vector(v))
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let n = self.dim();
        let mut out = linalg::zero_vector(n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() {
                    linalg::axpy(&mut out, &(xi * yj), &self.table[i][j]);
                }
            }
        }
        out
    }

    /// Matrix of `ad(X)`, columns `[X, b_j]`.
    pub fn adjoint(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| self.bracket(x, &linalg::unit_vector(n, j))).collect();
        Matrix::from_columns(n, &cols)
    }

    /// The algebra in the basis `f_j = P b_j`, where `P` is block diagonal and invertible.
    pub fn change_basis(&self, p: &Matrix) -> Result<Qls> {
        let (d0, d1) = (self.space.dim0(), self.space.dim1());
        let n = self.dim();
        if p.rows() != n || p.cols() != n {
            return Err(QlsError::Shape("basis change has the wrong size".into()));
        }
        for r in 0..n {
            for c in 0..n {
                if (r < d0) != (c < d0) && !p.get(r, c).is_zero() {
                    return Err(QlsError::Parity("basis change mixes even and odd vectors".into()));
                }
            }
        }
        let inv = p.inverse().ok_or_else(|| QlsError::NotInvertible("basis change is singular".into()))?;
        let even: Vec<usize> = (0..d0).collect();
        let odd: Vec<usize> = (d0..d0 + d1).collect();
        let space = self.space.transformed(&p.submatrix(&even, &even), &p.submatrix(&odd, &odd))?;
        let images: Vec<Vector> = (0..n).map(|j| p.column(j)).collect();
        let table = (0..n)
            .map(|i| (0..n).map(|j| inv.apply(&self.bracket(&images[i], &images[j]))).collect())
            .collect();
        Ok(Qls { space: Arc::new(space), table })
    }

    /// Relabels the basis: new vector `k` is old vector `order[k]`, parity blocks kept in place.
    pub fn relabel(&self, order: &[usize]) -> Result<Qls> {
        let n = self.dim();
        let mut seen = vec![false; n];
        for &o in order {
            if o >= n || std::mem::replace(&mut seen[o], true) {
                return Err(QlsError::Shape("relabelling is not a permutation".into()));
            }
        }
        if order.len() != n {
            return Err(QlsError::Shape("relabelling is not a permutation".into()));
        }
        let p = Matrix::from_fn(n, n, |r, c| if order[c] == r { Scalar::one() } else { Scalar::zero() });
        self.change_basis(&p)
    }

    /// Orthogonal direct sum; the basis is `g₀ ⊕ g'₀` followed by `g₁ ⊕ g'₁`.
    pub fn orthogonal_sum(&self, other: &Qls) -> Qls {
        let space = Arc::new(self.space.direct_sum(&other.space));
        let (a0, a1) = (self.space.dim0(), self.space.dim1());
        let (b0, b1) = (other.space.dim0(), other.space.dim1());
        let place_a = |i: usize| if i < a0 { i } else { i + b0 };
        let place_b = |i: usize| if i < b0 { a0 + i } else { a0 + b0 + a1 + (i - b0) };
        let n = space.dim();
        let mut table = vec![vec![linalg::zero_vector(n); n]; n];
        for (src, place, m) in [(self, &place_a as &dyn Fn(usize) -> usize, a0 + a1), (other, &place_b, b0 + b1)] {
            for i in 0..m {
                for j in 0..m {
                    let v = &src.table[i][j];
                    for (k, c) in v.iter().enumerate() {
                        table[place(i)][place(j)][place(k)] = c.clone();
                    }
                }
            }
        }
        Qls { space, table }
    }

    /// The subalgebra on `basis` (homogeneous vectors spanning an ideal on which `B` is nondegenerate).
    ///
    /// Basis vectors are reordered even first; coordinates of brackets are taken in that order.
    pub fn restrict_to_ideal(&self, basis: &[Vector]) -> Result<Qls> {
        let n = self.dim();
        let mut even = Vec::new();
        let mut odd = Vec::new();
        for v in basis {
            match self.space.parity(v)? {
                Parity::Even => even.push(v.clone()),
                Parity::Odd => odd.push(v.clone()),
            }
        }
        let ordered: Vec<Vector> = even.iter().chain(&odd).cloned().collect();
        let gram_of = |vs: &[Vector]| Matrix::from_fn(vs.len(), vs.len(), |r, c| self.space.bilinear(&vs[r], &vs[c]));
        let space = Arc::new(QuadraticZ2Space::new(gram_of(&even), gram_of(&odd))?);
        let m = ordered.len();
        let mut table = vec![vec![linalg::zero_vector(m); m]; m];
        for i in 0..m {
            for j in 0..m {
                let value = self.bracket(&ordered[i], &ordered[j]);
                table[i][j] = linalg::coordinates(n, &ordered, &value)
                    .ok_or_else(|| QlsError::Shape("span is not closed under the bracket".into()))?;
            }
        }
        Ok(Qls { space, table })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::EvenStyle;

    fn small() -> Qls {
        let space = Arc::new(QuadraticZ2Space::canonical(2, 2, EvenStyle::Hyperbolic).unwrap());
        let v = |c: [i64; 4]| c.iter().map(|&x| Scalar::from_int(x)).collect::<Vector>();
        Qls::from_upper_entries(space, [(3, 3, v([-2, 0, 0, 0])), (1, 3, v([0, 0, -2, 0]))]).unwrap()
    }

    #[test]
    fn antisymmetric_completion() {
        let g = small();
        assert_eq!(g.bracket_basis(3, 1), &vec![Scalar::zero(), Scalar::zero(), Scalar::from_int(2), Scalar::zero()]);
        assert_eq!(g.upper_entries().len(), 2);
    }

    #[test]
    fn identity_basis_change_is_trivial() {
        let g = small();
        assert_eq!(g.change_basis(&Matrix::identity(4)).unwrap(), g);
        assert_eq!(g.relabel(&[0, 1, 2, 3]).unwrap(), g);
    }

    #[test]
    fn mixing_basis_change_is_rejected() {
        let g = small();
        let mut p = Matrix::identity(4);
        p.set(0, 2, Scalar::one());
        assert!(matches!(g.change_basis(&p), Err(QlsError::Parity(_))));
    }

    #[test]
    fn orthogonal_sum_places_blocks() {
        let g = small();
        let s = g.orthogonal_sum(&g);
        assert_eq!(s.dim(), 8);
        assert_eq!(s.upper_entries().len(), 4);
        let restricted = s.restrict_to_ideal(&[0, 1, 4, 5].map(|i| linalg::unit_vector(8, i))).unwrap();
        assert_eq!(restricted, g);
    }
}
