use super::Qls;
use crate::error::{QlsError, Result};
use crate::linalg::{self, Matrix};
use crate::scalar::Scalar;

impl Qls {
    /// Basis of the even maps `D` with `B(DX, Y) = B(X, DY)` and `D[X, Y] = [DX, Y] = [X, DY]`.
    pub fn centromorphism_basis(&self) -> Vec<Matrix> {
        let n = self.dim();
        let d0 = self.space.dim0();
        let same_block = |r: usize, c: usize| (r < d0) == (c < d0);
        let mut var = vec![vec![None; n]; n];
        let mut count = 0;
        for (r, row) in var.iter_mut().enumerate() {
            for (c, slot) in row.iter_mut().enumerate() {
                if same_block(r, c) {
                    *slot = Some(count);
                    count += 1;
                }
            }
        }
        let gram = self.space.gram();
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        let mut push = |row: Vec<Scalar>| {
            if !linalg::is_zero_vector(&row) {
                rows.push(row);
            }
        };
        // (DᵀG)_{ij} − (GD)_{ij} = Σ_k D_{ki} G_{kj} − G_{ik} D_{kj}
        for i in 0..n {
            for j in 0..n {
                let mut row = linalg::zero_vector(count);
                for (k, vars_k) in var.iter().enumerate() {
                    if let Some(v) = vars_k[i] {
                        row[v] += gram.get(k, j);
                    }
                    if let Some(v) = vars_k[j] {
                        row[v] -= gram.get(i, k);
                    }
                }
                push(row);
            }
        }
        for i in 0..n {
            for j in 0..n {
                let value = &self.table[i][j];
                for r in 0..n {
                    // (D[b_i,b_j])_r − [D b_i, b_j]_r and (D[b_i,b_j])_r − [b_i, D b_j]_r
                    let mut left = linalg::zero_vector(count);
                    let mut right = linalg::zero_vector(count);
                    for c in 0..n {
                        if let Some(v) = var[r][c] {
                            left[v] += &value[c];
                            right[v] += &value[c];
                        }
                        if let Some(v) = var[c][i] {
                            left[v] -= &self.table[c][j][r];
                        }
                        if let Some(v) = var[c][j] {
                            right[v] -= &self.table[i][c][r];
                        }
                    }
                    push(left);
                    push(right);
                }
            }
        }
        let system = Matrix::from_fn(rows.len(), count, |r, c| rows[r][c].clone());
        let solutions = if rows.is_empty() {
            (0..count).map(|v| linalg::unit_vector(count, v)).collect()
        } else {
            system.nullspace()
        };
        solutions
            .iter()
            .map(|sol| {
                Matrix::from_fn(n, n, |r, c| var[r][c].map(|v| sol[v].clone()).unwrap_or_default())
            })
            .collect()
    }

    /// Dimension of the centromorphism space, checked against the closed formulas
    /// for reduced algebras with a two-dimensional even part and for reduced
    /// type-S₁ algebras with `[g₁, g₁] ≠ 0`.
    pub fn quadratic_dimension(&self) -> Result<usize> {
        let dim = self.centromorphism_basis().len();
        if self.is_abelian() || !self.is_reduced() {
            return Ok(dim);
        }
        let center = self.center();
        let (z0, z1) = self.graded_dims(&center);
        let z = z0 + z1;
        if self.space.dim0() == 2 && z >= 1 {
            let expected = 2 + (z - 1) * (z.saturating_sub(2)) / 2;
            if expected != dim {
                return Err(QlsError::Internal(format!(
                    "quadratic dimension {dim} differs from the two-dimensional-even-part formula {expected}"
                )));
            }
        }
        if self.dup_number()? == 1 && self.odd_brackets_nonzero() {
            let expected = 1 + z0 * (z0 + 1) / 2 + z1 * z1.saturating_sub(1) / 2;
            if expected != dim {
                return Err(QlsError::Internal(format!(
                    "quadratic dimension {dim} differs from the type S1 formula {expected}"
                )));
            }
        }
        Ok(dim)
    }

    /// `[g₁, g₁] ≠ 0`.
    pub fn odd_brackets_nonzero(&self) -> bool {
        let odd = self.space.odd_indices();
        odd.clone().any(|a| odd.clone().any(|b| !linalg::is_zero_vector(&self.table[a][b])))
    }
}
