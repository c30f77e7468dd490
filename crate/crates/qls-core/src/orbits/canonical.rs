use super::partition::{FormKind, Partition};
use crate::error::{QlsError, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// One indecomposable block: `len` vectors `E`, optionally `G`, and `len` vectors `F`.
struct Block {
    len: usize,
    middle: bool,
    /// Adds `C F_len = E_len` (the `q+q` type).
    closing: bool,
}

impl Block {
    fn blocks_for(d: &Partition, kind: FormKind) -> Vec<Block> {
        let mut blocks = Vec::new();
        let mut parts = d.parts().to_vec();
        parts.dedup();
        for p in parts {
            let count = d.multiplicity(p);
            match (kind, p % 2) {
                (FormKind::Symplectic, 0) => {
                    blocks.extend((0..count).map(|_| Block { len: p / 2, middle: false, closing: true }));
                }
                (FormKind::Orthogonal, 1) => {
                    blocks.extend((0..count).map(|_| Block { len: p / 2, middle: true, closing: false }));
                }
                _ => {
                    blocks.extend((0..count / 2).map(|_| Block { len: p, middle: false, closing: false }));
                }
            }
        }
        blocks
    }
}

/// The canonical skew map of Jordan type `d` and the Gram matrix it is skew for.
///
/// Coordinates list every block's `E` vectors first, then the `G` vectors,
/// then the `F` vectors, with `B(E_i, F_i) = 1`, `B(F_i, E_i) = ε` and
/// `B(G, G) = 1`. The Gram matrix is the canonical hyperbolic (`ε = +1`) or
/// Darboux (`ε = −1`) form whenever at most one `G` occurs.
pub fn canonical_skew_map(d: &Partition, kind: FormKind) -> Result<(Matrix, Matrix)> {
    if !d.is_admissible(kind) {
        return Err(QlsError::InadmissiblePartition(d.to_string()));
    }
    let blocks = Block::blocks_for(d, kind);
    let n: usize = blocks.iter().map(|b| b.len).sum();
    let g_count = blocks.iter().filter(|b| b.middle).count();
    let m = 2 * n + g_count;
    let mut c = Matrix::zeros(m, m);
    let mut gram = Matrix::zeros(m, m);
    let eps = Scalar::from_int(kind.sign());
    let one = Scalar::one();
    let minus = Scalar::from_int(-1);
    for i in 0..n {
        gram.set(i, n + g_count + i, one.clone());
        gram.set(n + g_count + i, i, eps.clone());
    }
    for k in 0..g_count {
        gram.set(n + k, n + k, one.clone());
    }
    let (mut e_start, mut g_next) = (0, n);
    for b in &blocks {
        let e = |i: usize| e_start + i;
        let f = |i: usize| n + g_count + e_start + i;
        for i in 0..b.len {
            if i + 1 < b.len {
                c.set(e(i), e(i + 1), one.clone());
                c.set(f(i + 1), f(i), minus.clone());
            }
        }
        if b.middle {
            let g = g_next;
            g_next += 1;
            if b.len > 0 {
                c.set(e(b.len - 1), g, one.clone());
                c.set(g, f(b.len - 1), minus.clone());
            }
        }
        if b.closing && b.len > 0 {
            c.set(e(b.len - 1), f(b.len - 1), one.clone());
        }
        e_start += b.len;
    }
    Ok((c, gram))
}

/// Whether `c` is skew for `gram`: `cᵀ·gram + gram·c = 0`.
pub fn is_skew(c: &Matrix, gram: &Matrix) -> bool {
    c.rows() == gram.rows() && c.is_square() && c.transpose().mul(gram).add(&gram.mul(c)).is_zero()
}

/// The `p × p` Jordan block with eigenvalue `lambda` (ones above the diagonal).
pub fn jordan_block(p: usize, lambda: &Scalar) -> Matrix {
    Matrix::from_fn(p, p, |r, c| {
        if r == c {
            lambda.clone()
        } else if c == r + 1 {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    })
}

/// `diag(J_p(λ), −J_p(λ)ᵀ)` on a Darboux basis of dimension `2p`.
pub fn jordan_pair_map(p: usize, lambda: &Scalar) -> Matrix {
    let j = jordan_block(p, lambda);
    Matrix::block_diag(&[j.clone(), j.transpose().neg()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{darboux_gram, hyperbolic_gram};

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn small_symplectic_maps() {
        let (c, g) = canonical_skew_map(&p(&[1, 1]), FormKind::Symplectic).unwrap();
        assert!(c.is_zero());
        assert_eq!(g, darboux_gram(2));
        let (c, g) = canonical_skew_map(&p(&[2, 2]), FormKind::Symplectic).unwrap();
        assert_eq!(g, darboux_gram(4));
        assert_eq!(c.get(0, 2), &Scalar::one());
        assert_eq!(c.get(1, 3), &Scalar::one());
        assert_eq!(c.rank(), 2);
        assert!(is_skew(&c, &g));
    }

    #[test]
    fn odd_orthogonal_block() {
        let (c, g) = canonical_skew_map(&p(&[3, 1]), FormKind::Orthogonal).unwrap();
        assert_eq!(c.rows(), 4);
        assert!(is_skew(&c, &g));
        assert_eq!(c.rank(), 2);
        assert!(c.pow(2).rank() == 1 && c.pow(3).is_zero());
        let (c, g) = canonical_skew_map(&p(&[3]), FormKind::Orthogonal).unwrap();
        assert_eq!(g, hyperbolic_gram(3));
        assert!(is_skew(&c, &g));
    }

    #[test]
    fn inadmissible_is_rejected() {
        assert!(matches!(
            canonical_skew_map(&p(&[3, 1]), FormKind::Symplectic),
            Err(QlsError::InadmissiblePartition(_))
        ));
    }

    #[test]
    fn jordan_pairs_are_skew() {
        let m = jordan_pair_map(3, &Scalar::from_int(2));
        assert!(is_skew(&m, &darboux_gram(6)));
    }
}
