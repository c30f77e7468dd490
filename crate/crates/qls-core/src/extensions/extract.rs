use std::sync::Arc;

use super::DoubleExtDescriptor;
use crate::algebra::Qls;
use crate::error::{QlsError, Result};
use crate::linalg::{self, Matrix, Vector};
use crate::scalar::Scalar;
use crate::space::{Parity, QuadraticZ2Space};

/// Recovers `(q, C̄)` from a type S₁ algebra, together with the basis
/// `X₀, Y₀, q₀…, q₁…` (as columns) in which `g` equals the rebuilt extension.
pub fn extract_descriptor(g: &Qls) -> Result<(DoubleExtDescriptor, Matrix)> {
    if g.is_abelian() {
        return Err(QlsError::NotExtractable("abelian algebra".into()));
    }
    let covectors = g.singular_covectors()?;
    if covectors.len() != 1 {
        return Err(QlsError::NotExtractable(format!("dup-number is {}, expected 1", covectors.len())));
    }
    let space = g.space();
    let n = space.dim();
    let x0 = space.phi_inv(&covectors[0])?;
    if space.parity(&x0)? != Parity::Even || !space.bilinear(&x0, &x0).is_zero() {
        return Err(QlsError::Internal("singular vector is not even and isotropic".into()));
    }
    let partner = space
        .even_indices()
        .map(|k| linalg::unit_vector(n, k))
        .find(|e| !space.bilinear(&x0, e).is_zero())
        .ok_or_else(|| QlsError::Internal("singular vector pairs trivially with the even part".into()))?;
    let partner = linalg::scale_vector(&partner, &space.bilinear(&x0, &partner).inv().expect("nonzero pairing"));
    let half = Scalar::ratio(1, 2)?;
    let shift = &space.bilinear(&partner, &partner) * &half;
    let y0 = linalg::sub_vectors(&partner, &linalg::scale_vector(&x0, &shift));

    let constraints = Matrix::from_fn(2, space.dim0(), |r, c| {
        let v = if r == 0 { &x0 } else { &y0 };
        space.bilinear(v, &linalg::unit_vector(n, c))
    });
    let even_base: Vec<Vector> = constraints
        .nullspace()
        .into_iter()
        .map(|mut v| {
            v.extend(std::iter::repeat_n(Scalar::zero(), space.dim1()));
            v
        })
        .collect();
    let odd_base: Vec<Vector> = space.odd_indices().map(|k| linalg::unit_vector(n, k)).collect();
    let base_vectors: Vec<Vector> = even_base.iter().chain(&odd_base).cloned().collect();
    let gram_of = |vs: &[Vector]| Matrix::from_fn(vs.len(), vs.len(), |r, c| space.bilinear(&vs[r], &vs[c]));
    let base = Arc::new(QuadraticZ2Space::new(gram_of(&even_base), gram_of(&odd_base))?);

    let images = base_vectors
        .iter()
        .map(|v| {
            linalg::coordinates(n, &base_vectors, &g.bracket(&y0, v))
                .ok_or_else(|| QlsError::Internal("ad(Y0) does not preserve the base".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let map = Matrix::from_columns(base_vectors.len(), &images);
    let descriptor = if even_base.is_empty() {
        DoubleExtDescriptor::symplectic(base, map)?
    } else {
        DoubleExtDescriptor::type_s1(base, map)?
    };
    let mut columns = vec![x0, y0];
    columns.extend(base_vectors);
    Ok((descriptor, Matrix::from_columns(n, &columns)))
}
