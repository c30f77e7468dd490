use super::canonical::is_skew;
use super::partition::Partition;
use crate::error::{QlsError, Result};
use crate::linalg::{self, Matrix, Vector};
use crate::scalar::Scalar;

/// Jordan block sizes of `a` at eigenvalue zero, from the rank sequence of its powers.
pub(crate) fn zero_eigen_partition(a: &Matrix) -> Partition {
    let n = a.rows();
    let mut ranks = vec![n];
    let mut power = Matrix::identity(n);
    for _ in 0..=n {
        power = power.mul(a);
        ranks.push(power.rank());
    }
    let mut parts = Vec::new();
    for k in 1..=n {
        let mult = ranks[k - 1] + ranks[k + 1] - 2 * ranks[k];
        parts.extend(std::iter::repeat_n(k, mult));
    }
    Partition::from_unsorted(parts).expect("positive parts")
}

/// Jordan type of a nilpotent matrix.
pub fn jordan_partition(n: &Matrix) -> Result<Partition> {
    if !n.is_square() {
        return Err(QlsError::Shape("Jordan type needs a square matrix".into()));
    }
    if !n.pow(n.rows()).is_zero() {
        return Err(QlsError::NotNilpotent);
    }
    Ok(zero_eigen_partition(n))
}

/// The decomposition `V = V_N ⊕ V_I` of a skew map into its nilpotent and invertible blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FittingResult {
    pub nilpotent_basis: Vec<Vector>,
    pub invertible_basis: Vec<Vector>,
    pub nilpotent_map: Matrix,
    pub invertible_map: Matrix,
    pub nilpotent_gram: Matrix,
    pub invertible_gram: Matrix,
}

/// Matrix of `c` restricted to the invariant subspace spanned by `basis`.
pub(crate) fn restrict(c: &Matrix, basis: &[Vector]) -> Result<Matrix> {
    let n = c.rows();
    let cols = basis
        .iter()
        .map(|b| {
            linalg::coordinates(n, basis, &c.apply(b))
                .ok_or_else(|| QlsError::Internal("subspace is not invariant".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(basis.len(), &cols))
}

pub(crate) fn gram_on(gram: &Matrix, basis: &[Vector]) -> Matrix {
    Matrix::from_fn(basis.len(), basis.len(), |r, c| {
        basis[r].iter().zip(gram.apply(&basis[c])).map(|(a, b)| a * &b).sum::<Scalar>()
    })
}

pub fn fitting(c: &Matrix, gram: &Matrix) -> Result<FittingResult> {
    if !is_skew(c, gram) {
        return Err(QlsError::NotSkew("Cᵀ·B + B·C ≠ 0".into()));
    }
    let m = c.rows();
    let power = c.pow(m);
    if power.rank() != power.mul(c).rank() {
        return Err(QlsError::Internal("rank of powers did not stabilise".into()));
    }
    let nilpotent_basis = power.nullspace();
    let columns: Vec<Vector> = (0..m).map(|j| power.column(j)).collect();
    let invertible_basis = linalg::span_basis(m, &columns);
    Ok(FittingResult {
        nilpotent_map: restrict(c, &nilpotent_basis)?,
        invertible_map: restrict(c, &invertible_basis)?,
        nilpotent_gram: gram_on(gram, &nilpotent_basis),
        invertible_gram: gram_on(gram, &invertible_basis),
        nilpotent_basis,
        invertible_basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbits::canonical::jordan_block;
    use crate::space::darboux_gram;

    #[test]
    fn simple_jordan_types() {
        assert_eq!(jordan_partition(&Matrix::zeros(3, 3)).unwrap().parts(), &[1, 1, 1]);
        assert_eq!(jordan_partition(&jordan_block(3, &Scalar::zero())).unwrap().parts(), &[3]);
        assert!(matches!(jordan_partition(&Matrix::identity(2)), Err(QlsError::NotNilpotent)));
    }

    #[test]
    fn mixed_fitting() {
        let nil = Matrix::from_ints(&[[0, 1], [0, 0]]);
        let inv = Matrix::from_ints(&[[1, 0], [0, -1]]);
        // Darboux coordinates (E1, E2, F1, F2) with the two pairs (E1, F1), (E2, F2).
        let order = [0, 2, 1, 3];
        let block = Matrix::block_diag(&[nil, inv]);
        let c = Matrix::from_fn(4, 4, |r, col| block.get(order[r], order[col]).clone());
        let g = darboux_gram(4);
        assert!(is_skew(&c, &g));
        let f = fitting(&c, &g).unwrap();
        assert_eq!(f.nilpotent_basis.len(), 2);
        assert_eq!(f.invertible_basis.len(), 2);
        assert!(f.invertible_map.determinant() != Scalar::zero());
        assert!(f.nilpotent_map.pow(2).is_zero());
    }
}
