//! Z₂-graded quadratic vector spaces.
//!
//! Basis vectors are indexed globally: indices `0..dim0` span the even part
//! and `dim0..dim0+dim1` the odd part. The bilinear form is block diagonal
//! with a symmetric even block and an antisymmetric odd block.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{QlsError, Result};
use crate::linalg::{Matrix, Vector};
use crate::scalar::{Field, Scalar};

/// Z₂-degree of a homogeneous element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn bit(self) -> usize {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn from_bit(b: usize) -> Self {
        if b.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

}

impl std::ops::Add for Parity {
    type Output = Parity;

    fn add(self, other: Parity) -> Parity {
        Parity::from_bit(self.bit() + other.bit())
    }
}

/// Shape of the canonical even Gram block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EvenStyle {
    /// Identity Gram matrix.
    Orthonormal,
    /// Pairs `E_i ↔ F_i` with a middle `G`, `B(G,G) = 1`, when the dimension is odd.
    Hyperbolic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticZ2Space {
    dim0: usize,
    dim1: usize,
    gram0: Matrix,
    gram1: Matrix,
    inv0: Option<Matrix>,
    inv1: Option<Matrix>,
    labels: Option<Vec<String>>,
}

/// Gram matrix of the canonical symmetric form on `m` coordinates, basis `E.., [G], F..`.
pub fn hyperbolic_gram(m: usize) -> Matrix {
    let n = m / 2;
    let mut g = Matrix::zeros(m, m);
    let off = m - n;
    for i in 0..n {
        g.set(i, off + i, Scalar::one());
        g.set(off + i, i, Scalar::one());
    }
    if m % 2 == 1 {
        g.set(n, n, Scalar::one());
    }
    g
}

/// Canonical Darboux Gram matrix `[[0, I], [−I, 0]]` on `m` (even) coordinates.
pub fn darboux_gram(m: usize) -> Matrix {
    let n = m / 2;
    let mut g = Matrix::zeros(m, m);
    for i in 0..n {
        g.set(i, n + i, Scalar::one());
        g.set(n + i, i, Scalar::from_int(-1));
    }
    g
}

/// Canonical Gram matrix of sign `eps`: symmetric hyperbolic (`+1`) or Darboux (`−1`).
pub fn canonical_gram(m: usize, eps: i8) -> Result<Matrix> {
    match eps {
        1 => Ok(hyperbolic_gram(m)),
        -1 if m.is_multiple_of(2) => Ok(darboux_gram(m)),
        -1 => Err(QlsError::InvalidSpace(format!("symplectic dimension {m} is odd"))),
        _ => Err(QlsError::Parse(format!("sign must be +1 or -1, got {eps}"))),
    }
}

impl QuadraticZ2Space {
    /// A space whose Gram blocks satisfy every invariant.
    pub fn new(gram0: Matrix, gram1: Matrix) -> Result<Self> {
        let s = Self::new_unchecked(gram0, gram1)?;
        s.validate()?;
        Ok(s)
    }

    /// Checks only the shapes; symmetry and invertibility are left to [`validate`](Self::validate).
    pub fn new_unchecked(gram0: Matrix, gram1: Matrix) -> Result<Self> {
        if !gram0.is_square() || !gram1.is_square() {
            return Err(QlsError::Shape("Gram blocks must be square".into()));
        }
        if !gram1.rows().is_multiple_of(2) {
            return Err(QlsError::InvalidSpace(format!("odd dimension {} is not even", gram1.rows())));
        }
        Ok(Self {
            dim0: gram0.rows(),
            dim1: gram1.rows(),
            inv0: gram0.inverse(),
            inv1: gram1.inverse(),
            gram0,
            gram1,
            labels: None,
        })
    }

    pub fn validate(&self) -> Result<()> {
        if !self.gram0.is_symmetric() {
            return Err(QlsError::InvalidSpace("even Gram block is not symmetric".into()));
        }
        if !self.gram1.is_antisymmetric() {
            return Err(QlsError::InvalidSpace("odd Gram block is not antisymmetric".into()));
        }
        if !self.is_nondegenerate() {
            return Err(QlsError::InvalidSpace("Gram data is degenerate".into()));
        }
        Ok(())
    }

    /// The canonical space of the given dimensions.
    pub fn canonical(dim0: usize, dim1: usize, style: EvenStyle) -> Result<Self> {
        if !dim1.is_multiple_of(2) {
            return Err(QlsError::InvalidSpace(format!("odd dimension {dim1} is not even")));
        }
        let gram0 = match style {
            EvenStyle::Orthonormal => Matrix::identity(dim0),
            EvenStyle::Hyperbolic => hyperbolic_gram(dim0),
        };
        Self::new(gram0, darboux_gram(dim1))
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim() {
            return Err(QlsError::Shape("label count differs from dimension".into()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn dim0(&self) -> usize {
        self.dim0
    }

    pub fn dim1(&self) -> usize {
        self.dim1
    }

    pub fn dim(&self) -> usize {
        self.dim0 + self.dim1
    }

    pub fn gram0(&self) -> &Matrix {
        &self.gram0
    }

    pub fn gram1(&self) -> &Matrix {
        &self.gram1
    }

    /// Inverse of the even block, absent when degenerate.
    pub fn gram0_inverse(&self) -> Option<&Matrix> {
        self.inv0.as_ref()
    }

    /// Inverse of the odd block, absent when degenerate.
    pub fn gram1_inverse(&self) -> Option<&Matrix> {
        self.inv1.as_ref()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.inv0.is_some() && self.inv1.is_some()
    }

    /// Full block-diagonal Gram matrix.
    pub fn gram(&self) -> Matrix {
        Matrix::block_diag(&[self.gram0.clone(), self.gram1.clone()])
    }

    pub fn parity_of_index(&self, i: usize) -> Parity {
        if i < self.dim0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn even_indices(&self) -> std::ops::Range<usize> {
        0..self.dim0
    }

    pub fn odd_indices(&self) -> std::ops::Range<usize> {
        self.dim0..self.dim()
    }

    fn check_len(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(QlsError::Shape(format!("vector of length {} in a space of dimension {}", v.len(), self.dim())));
        }
        Ok(())
    }

    /// Parity of a homogeneous vector; the zero vector counts as even.
    pub fn parity(&self, v: &[Scalar]) -> Result<Parity> {
        self.check_len(v)?;
        let even = v[..self.dim0].iter().any(|x| !x.is_zero());
        let odd = v[self.dim0..].iter().any(|x| !x.is_zero());
        match (even, odd) {
            (true, true) => Err(QlsError::Parity("vector has both even and odd components".into())),
            (_, true) => Ok(Parity::Odd),
            _ => Ok(Parity::Even),
        }
    }

    /// Splits `v` into its even and odd components.
    pub fn split(&self, v: &[Scalar]) -> (Vector, Vector) {
        let mut even = v.to_vec();
        let mut odd = v.to_vec();
        for x in &mut even[self.dim0..] {
            *x = Scalar::zero();
        }
        for x in &mut odd[..self.dim0] {
            *x = Scalar::zero();
        }
        (even, odd)
    }

    pub fn bilinear(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let d0 = self.dim0;
        let mut acc = Scalar::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let (gram, off, range) = if i < d0 {
                (&self.gram0, 0, 0..d0)
            } else {
                (&self.gram1, d0, d0..self.dim())
            };
            for j in range {
                let g = gram.get(i - off, j - off);
                if !g.is_zero() && !y[j].is_zero() {
                    acc += &(&(xi * g) * &y[j]);
                }
            }
        }
        acc
    }

    /// `φ(X) = B(X, ·)` as coefficients on the dual basis.
    pub fn phi(&self, x: &[Scalar]) -> Result<Vector> {
        self.check_len(x)?;
        Ok(self.gram().transpose().apply(x))
    }

    /// Inverse of [`phi`](Self::phi).
    pub fn phi_inv(&self, covector: &[Scalar]) -> Result<Vector> {
        self.check_len(covector)?;
        let g = self.gram().transpose();
        g.solve(covector)
            .filter(|_| self.is_nondegenerate())
            .ok_or_else(|| QlsError::NotInvertible("Gram data is degenerate".into()))
    }

    /// Orthogonal direct sum; even parts and odd parts are concatenated separately.
    pub fn direct_sum(&self, other: &QuadraticZ2Space) -> QuadraticZ2Space {
        let g0 = Matrix::block_diag(&[self.gram0.clone(), other.gram0.clone()]);
        let g1 = Matrix::block_diag(&[self.gram1.clone(), other.gram1.clone()]);
        QuadraticZ2Space::new_unchecked(g0, g1).expect("block sums keep valid shapes")
    }

    /// Gram data after the basis change whose columns are the new basis vectors.
    pub fn transformed(&self, p0: &Matrix, p1: &Matrix) -> Result<QuadraticZ2Space> {
        let g0 = p0.transpose().mul(&self.gram0).mul(p0);
        let g1 = p1.transpose().mul(&self.gram1).mul(p1);
        QuadraticZ2Space::new(g0, g1)
    }

    /// Basis change (columns) bringing the even block to the identity.
    pub fn orthonormal_basis0(&self, field: Field) -> Result<Matrix> {
        orthonormalize(&self.gram0, field)
    }

    /// Basis change (columns) bringing the odd block to the canonical Darboux form.
    pub fn darboux_basis1(&self) -> Result<Matrix> {
        symplectic_gram_schmidt(&self.gram1)
    }
}

/// Exact square root in `field`, if one exists.
pub fn sqrt_in(s: &Scalar, field: Field) -> Option<Scalar> {
    if s.is_real() {
        if let Some(r) = rational_sqrt(s.re()) {
            return Some(Scalar::real(r));
        }
        if field == Field::Gaussian && s.re().is_negative() {
            return rational_sqrt(&-s.re()).map(|r| Scalar::gaussian(BigRational::zero(), r));
        }
        return None;
    }
    if field == Field::Rational {
        return None;
    }
    let modulus = rational_sqrt(&s.norm_sqr())?;
    let two = BigRational::from_integer(BigInt::from(2));
    let x = rational_sqrt(&((s.re() + &modulus) / &two))?;
    if x.is_zero() {
        return None;
    }
    let y = s.im() / (&two * &x);
    Some(Scalar::gaussian(x, y))
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| BigRational::new(n, d))
}

fn orthonormalize(gram: &Matrix, field: Field) -> Result<Matrix> {
    let n = gram.rows();
    let form = |x: &[Scalar], y: &[Scalar]| -> Scalar {
        let gy = gram.apply(y);
        x.iter().zip(&gy).map(|(a, b)| a * b).sum()
    };
    let mut remaining: Vec<Vector> = (0..n).map(|i| crate::linalg::unit_vector(n, i)).collect();
    let mut basis: Vec<Vector> = Vec::new();
    while !remaining.is_empty() {
        let mut candidates: Vec<(usize, Vector)> = remaining.iter().cloned().enumerate().collect();
        for i in 0..remaining.len() {
            for j in i + 1..remaining.len() {
                candidates.push((i, crate::linalg::add_vectors(&remaining[i], &remaining[j])));
                candidates.push((i, crate::linalg::sub_vectors(&remaining[i], &remaining[j])));
            }
        }
        let nonisotropic: Vec<(usize, Vector, Scalar)> = candidates
            .into_iter()
            .map(|(i, v)| {
                let norm = form(&v, &v);
                (i, v, norm)
            })
            .filter(|(_, _, norm)| !norm.is_zero())
            .collect();
        let first_norm = nonisotropic
            .first()
            .map(|(_, _, n)| n.clone())
            .ok_or_else(|| QlsError::NotInvertible("symmetric form is degenerate".into()))?;
        let Some((index, pick, root)) = nonisotropic
            .into_iter()
            .find_map(|(i, v, norm)| sqrt_in(&norm, field).map(|r| (i, v, r)))
        else {
            return Err(QlsError::MissingSquareRoot(format!("no square root of {first_norm}")));
        };
        remaining.remove(index);
        let unit = crate::linalg::scale_vector(&pick, &root.inv().expect("nonzero root"));
        for v in remaining.iter_mut() {
            let c = form(&unit, v);
            crate::linalg::axpy(v, &-c, &unit);
        }
        remaining.retain(|v| !crate::linalg::is_zero_vector(v));
        basis.push(unit);
    }
    if basis.len() != n {
        return Err(QlsError::NotInvertible("symmetric form is degenerate".into()));
    }
    Ok(Matrix::from_columns(n, &basis))
}

/// Columns `X_1..X_k, Y_1..Y_k` with `B(X_i, Y_j) = δ_ij` and all other pairings zero.
fn symplectic_gram_schmidt(gram: &Matrix) -> Result<Matrix> {
    let n = gram.rows();
    let form = |x: &[Scalar], y: &[Scalar]| -> Scalar {
        let gy = gram.apply(y);
        x.iter().zip(&gy).map(|(a, b)| a * b).sum()
    };
    let mut remaining: Vec<Vector> = (0..n).map(|i| crate::linalg::unit_vector(n, i)).collect();
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    while !remaining.is_empty() {
        let x = remaining.remove(0);
        let Some(j) = remaining.iter().position(|y| !form(&x, y).is_zero()) else {
            if crate::linalg::is_zero_vector(&x) {
                continue;
            }
            return Err(QlsError::NotInvertible("antisymmetric form is degenerate".into()));
        };
        let y0 = remaining.remove(j);
        let y = crate::linalg::scale_vector(&y0, &form(&x, &y0).inv().expect("nonzero pairing"));
        for v in remaining.iter_mut() {
            // v ← v − B(v,Y)·X + B(v,X)·Y
            let a = form(v, &y);
            let b = form(v, &x);
            crate::linalg::axpy(v, &-a, &x);
            crate::linalg::axpy(v, &b, &y);
        }
        remaining.retain(|v| !crate::linalg::is_zero_vector(v));
        xs.push(x);
        ys.push(y);
    }
    xs.extend(ys);
    if xs.len() != n {
        return Err(QlsError::NotInvertible("antisymmetric form is degenerate".into()));
    }
    Ok(Matrix::from_columns(n, &xs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_orthonormal_space() {
        let s = QuadraticZ2Space::canonical(2, 2, EvenStyle::Orthonormal).unwrap();
        assert_eq!(s.gram0(), &Matrix::identity(2));
        assert_eq!(s.gram1(), &Matrix::from_ints(&[[0, 1], [-1, 0]]));
    }

    #[test]
    fn canonical_hyperbolic_odd_dimension() {
        let s = QuadraticZ2Space::canonical(3, 0, EvenStyle::Hyperbolic).unwrap();
        assert_eq!(s.gram0(), &Matrix::from_ints(&[[0, 0, 1], [0, 1, 0], [1, 0, 0]]));
        assert_eq!(s.dim1(), 0);
    }

    #[test]
    fn purely_odd_space() {
        let s = QuadraticZ2Space::canonical(0, 2, EvenStyle::Hyperbolic).unwrap();
        assert_eq!(s.gram0().rows(), 0);
        assert_eq!(s.gram1(), &Matrix::from_ints(&[[0, 1], [-1, 0]]));
    }

    #[test]
    fn odd_dimension_must_be_even() {
        assert!(matches!(
            QuadraticZ2Space::canonical(1, 3, EvenStyle::Orthonormal),
            Err(QlsError::InvalidSpace(_))
        ));
    }

    #[test]
    fn musical_map_on_darboux_pair() {
        let s = QuadraticZ2Space::canonical(0, 2, EvenStyle::Hyperbolic).unwrap();
        let x = vec![Scalar::one(), Scalar::zero()];
        let y = vec![Scalar::zero(), Scalar::one()];
        assert_eq!(s.phi(&x).unwrap(), y);
        assert_eq!(s.phi(&y).unwrap(), vec![Scalar::from_int(-1), Scalar::zero()]);
        assert_eq!(s.phi_inv(&s.phi(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn musical_map_on_orthonormal_vector() {
        let s = QuadraticZ2Space::canonical(2, 0, EvenStyle::Orthonormal).unwrap();
        let e1 = vec![Scalar::one(), Scalar::zero()];
        assert_eq!(s.phi(&e1).unwrap(), e1);
    }

    #[test]
    fn parity_detection() {
        let s = QuadraticZ2Space::canonical(1, 2, EvenStyle::Orthonormal).unwrap();
        let mixed = vec![Scalar::one(), Scalar::one(), Scalar::zero()];
        assert!(matches!(s.parity(&mixed), Err(QlsError::Parity(_))));
        assert_eq!(s.parity(&[Scalar::zero(), Scalar::zero(), Scalar::one()]).unwrap(), Parity::Odd);
        assert!(s.parity(&[Scalar::one()]).is_err());
    }

    #[test]
    fn gram_schmidt_reaches_canonical_forms() {
        let g0 = Matrix::from_ints(&[[2, 1], [1, 1]]);
        let g1 = Matrix::from_ints(&[[0, 3, 1, 0], [-3, 0, 0, 2], [-1, 0, 0, 5], [0, -2, -5, 0]]);
        let s = QuadraticZ2Space::new(g0, g1).unwrap();
        let p1 = s.darboux_basis1().unwrap();
        assert_eq!(p1.transpose().mul(s.gram1()).mul(&p1), darboux_gram(4));
        let p0 = s.orthonormal_basis0(Field::Rational).unwrap();
        assert_eq!(p0.transpose().mul(s.gram0()).mul(&p0), Matrix::identity(2));
    }

    #[test]
    fn missing_square_root_is_reported() {
        let s = QuadraticZ2Space::new(Matrix::from_ints(&[[2]]), Matrix::zeros(0, 0)).unwrap();
        assert!(matches!(s.orthonormal_basis0(Field::Rational), Err(QlsError::MissingSquareRoot(_))));
        let neg = QuadraticZ2Space::new(Matrix::from_ints(&[[-4]]), Matrix::zeros(0, 0)).unwrap();
        let p = neg.orthonormal_basis0(Field::Gaussian).unwrap();
        assert_eq!(p.transpose().mul(neg.gram0()).mul(&p), Matrix::identity(1));
    }

    #[test]
    fn gaussian_square_roots() {
        let z = Scalar::gaussian(BigRational::from_integer(3.into()), BigRational::from_integer(4.into()));
        let r = sqrt_in(&z, Field::Gaussian).unwrap();
        assert_eq!(&r * &r, z);
        assert!(sqrt_in(&z, Field::Rational).is_none());
    }
}
