//! Double extensions of quadratic spaces by skew maps.
//!
//! Three recipes are supported. The symplectic and type S₁ recipes adjoin a
//! hyperbolic even plane `ℂX₀ ⊕ ℂY₀` (basis `X₀, Y₀` first, then the base)
//! and set `[Y₀, X] = C̄X`, `[X, Y] = B(C̄X, Y)X₀` on the base. The generalized
//! recipe adjoins an odd symplectic pair `X₁, Y₁` (basis: base even part,
//! `X₁`, base odd part, `Y₁`) and uses an odd map `C̄` with `C̄² = 0`.

mod catalog;
mod extract;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::Qls;
use crate::error::{QlsError, Result};
use crate::linalg::{self, Matrix, Vector};
use crate::orbits::is_skew;
use crate::scalar::Scalar;
use crate::space::{Parity, QuadraticZ2Space};

pub use catalog::{catalog, catalog_descriptor, CatalogName};
pub use extract::extract_descriptor;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Symplectic,
    TypeS1,
    Generalized,
}

/// A base space with the data needed to double-extend it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleExtDescriptor {
    variant: Variant,
    base: Arc<QuadraticZ2Space>,
    map: Matrix,
    x0: Option<Vector>,
}

fn invariant_error(msg: impl Into<String>) -> QlsError {
    QlsError::DescriptorInvariant(msg.into())
}

impl DoubleExtDescriptor {
    /// `C̄ ∈ sp(q)` on a purely odd base.
    pub fn symplectic(base: Arc<QuadraticZ2Space>, map: Matrix) -> Result<Self> {
        if base.dim0() != 0 {
            return Err(invariant_error("symplectic base must be purely odd"));
        }
        let d = Self { variant: Variant::Symplectic, base, map, x0: None };
        d.check_even_skew()?;
        Ok(d)
    }

    /// `C̄ = C̄₀ ⊕ C̄₁` with `C̄₀ ∈ o(q₀)` and `C̄₁ ∈ sp(q₁)`, given as one block-diagonal matrix.
    pub fn type_s1(base: Arc<QuadraticZ2Space>, map: Matrix) -> Result<Self> {
        let d = Self { variant: Variant::TypeS1, base, map, x0: None };
        d.check_even_skew()?;
        Ok(d)
    }

    /// Odd skew-supersymmetric `C̄` with `C̄² = 0`, and an isotropic even `x₀ ∈ ker C̄`.
    pub fn generalized(base: Arc<QuadraticZ2Space>, map: Matrix, x0: Vector) -> Result<Self> {
        let d = Self { variant: Variant::Generalized, base, map, x0: Some(x0) };
        d.check_generalized()?;
        Ok(d)
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn base(&self) -> &Arc<QuadraticZ2Space> {
        &self.base
    }

    pub fn map(&self) -> &Matrix {
        &self.map
    }

    pub fn x0(&self) -> Option<&Vector> {
        self.x0.as_ref()
    }

    fn check_shape(&self) -> Result<()> {
        let n = self.base.dim();
        if self.map.rows() != n || self.map.cols() != n {
            return Err(QlsError::Shape(format!("map must be {n}×{n}")));
        }
        Ok(())
    }

    /// Whether entry `(r, c)` of the map connects vectors of different parity.
    fn mixes(&self, r: usize, c: usize) -> bool {
        self.base.parity_of_index(r) != self.base.parity_of_index(c)
    }

    fn check_even_skew(&self) -> Result<()> {
        self.check_shape()?;
        let n = self.base.dim();
        if (0..n).any(|r| (0..n).any(|c| self.mixes(r, c) && !self.map.get(r, c).is_zero())) {
            return Err(invariant_error("map must preserve parity"));
        }
        if !is_skew(&self.map, &self.base.gram()) {
            return Err(invariant_error("map is not skew for the base form"));
        }
        Ok(())
    }

    fn check_generalized(&self) -> Result<()> {
        self.check_shape()?;
        let n = self.base.dim();
        if (0..n).any(|r| (0..n).any(|c| !self.mixes(r, c) && !self.map.get(r, c).is_zero())) {
            return Err(invariant_error("map must be odd"));
        }
        for i in 0..n {
            let x = linalg::unit_vector(n, i);
            let cx = self.map.apply(&x);
            for j in 0..n {
                let y = linalg::unit_vector(n, j);
                let lhs = self.base.bilinear(&cx, &y);
                let rhs = self.base.bilinear(&x, &self.map.apply(&y));
                let sign = if self.base.parity_of_index(i) == Parity::Odd { rhs } else { -rhs };
                if lhs != sign {
                    return Err(invariant_error("map is not skew-supersymmetric"));
                }
            }
        }
        if !self.map.mul(&self.map).is_zero() {
            return Err(invariant_error("map must square to zero"));
        }
        let x0 = self.x0.as_ref().expect("generalized descriptors carry x0");
        if x0.len() != n {
            return Err(QlsError::Shape("x0 has the wrong length".into()));
        }
        if self.base.parity(x0)? != Parity::Even {
            return Err(invariant_error("x0 must be even"));
        }
        if !self.base.bilinear(x0, x0).is_zero() {
            return Err(invariant_error("x0 must be isotropic"));
        }
        if !linalg::is_zero_vector(&self.map.apply(x0)) {
            return Err(invariant_error("x0 must lie in the kernel of the map"));
        }
        Ok(())
    }

    /// Even block `C̄₀` and odd block `C̄₁` of a parity-preserving map.
    pub fn blocks(&self) -> (Matrix, Matrix) {
        let d0 = self.base.dim0();
        let even: Vec<usize> = (0..d0).collect();
        let odd: Vec<usize> = (d0..self.base.dim()).collect();
        (self.map.submatrix(&even, &even), self.map.submatrix(&odd, &odd))
    }

    /// The same recipe with `C̄` replaced by `λC̄`.
    pub fn scaled(&self, lambda: &Scalar) -> Result<Self> {
        if self.variant == Variant::Generalized {
            return Err(QlsError::UnsupportedVariant("scaling applies to hyperbolic-plane extensions".into()));
        }
        Ok(Self { map: self.map.scale(lambda), ..self.clone() })
    }

    pub fn build(&self) -> Result<Qls> {
        match self.variant {
            Variant::Symplectic | Variant::TypeS1 => Ok(build_hyperbolic(&self.base, &self.map)),
            Variant::Generalized => Ok(build_generalized(&self.base, &self.map, self.x0.as_ref().expect("x0"))),
        }
    }
}

fn build_hyperbolic(base: &QuadraticZ2Space, map: &Matrix) -> Qls {
    let plane = Matrix::from_ints(&[[0, 1], [1, 0]]);
    let gram0 = Matrix::block_diag(&[plane, base.gram0().clone()]);
    let space = Arc::new(QuadraticZ2Space::new_unchecked(gram0, base.gram1().clone()).expect("valid shapes"));
    let m = base.dim();
    let n = m + 2;
    let lift = |v: &[Scalar]| -> Vector {
        let mut out = linalg::zero_vector(2);
        out.extend_from_slice(v);
        out
    };
    let mut table = vec![vec![linalg::zero_vector(n); n]; n];
    let images: Vec<Vector> = (0..m).map(|i| map.column(i)).collect();
    for i in 0..m {
        let image = lift(&images[i]);
        table[1][2 + i] = image.clone();
        table[2 + i][1] = linalg::scale_vector(&image, &Scalar::from_int(-1));
        for j in 0..m {
            let coeff = base.bilinear(&images[i], &linalg::unit_vector(m, j));
            table[2 + i][2 + j] = linalg::scale_vector(&linalg::unit_vector(n, 0), &coeff);
        }
    }
    Qls::from_table(space, table).expect("table has matching size")
}

fn build_generalized(base: &QuadraticZ2Space, map: &Matrix, x0: &[Scalar]) -> Qls {
    let (d0, d1) = (base.dim0(), base.dim1());
    let n = d0 + d1 + 2;
    let x1 = d0;
    let y1 = d0 + d1 + 1;
    let place = |i: usize| if i < d0 { i } else { i + 1 };
    let mut gram1 = Matrix::zeros(d1 + 2, d1 + 2);
    gram1.set(0, d1 + 1, Scalar::one());
    gram1.set(d1 + 1, 0, Scalar::from_int(-1));
    for a in 0..d1 {
        for b in 0..d1 {
            gram1.set(1 + a, 1 + b, base.gram1().get(a, b).clone());
        }
    }
    let space = Arc::new(QuadraticZ2Space::new_unchecked(base.gram0().clone(), gram1).expect("valid shapes"));
    let lift = |v: &[Scalar]| -> Vector {
        let mut out = linalg::zero_vector(n);
        for (i, c) in v.iter().enumerate() {
            out[place(i)] = c.clone();
        }
        out
    };
    let m = base.dim();
    let mut table = vec![vec![linalg::zero_vector(n); n]; n];
    table[y1][y1] = lift(x0);
    for i in 0..m {
        let x = linalg::unit_vector(m, i);
        let cx = map.apply(&x);
        let mut value = lift(&cx);
        value[x1] -= &base.bilinear(&x, x0);
        let odd_x = base.parity_of_index(i) == Parity::Odd;
        let back = Scalar::from_int(if odd_x { -1 } else { 1 });
        table[place(i)][y1] = linalg::scale_vector(&value, &-back);
        table[y1][place(i)] = value;
        for j in 0..m {
            let coeff = base.bilinear(&cx, &linalg::unit_vector(m, j));
            let mut v = linalg::zero_vector(n);
            v[x1] = -coeff;
            table[place(i)][place(j)] = v;
        }
    }
    Qls::from_table(space, table).expect("table has matching size")
}

/// Double extension of a purely odd symplectic space by `C̄ ∈ sp(q)`.
pub fn double_extension_symplectic(base: Arc<QuadraticZ2Space>, map: Matrix) -> Result<Qls> {
    DoubleExtDescriptor::symplectic(base, map)?.build()
}

/// Double extension of a graded space by `C̄₀ ⊕ C̄₁`.
pub fn double_extension_s1(base: Arc<QuadraticZ2Space>, even_map: &Matrix, odd_map: &Matrix) -> Result<Qls> {
    if even_map.rows() != base.dim0() || odd_map.rows() != base.dim1() {
        return Err(QlsError::Shape("block sizes do not match the base".into()));
    }
    let map = Matrix::block_diag(&[even_map.clone(), odd_map.clone()]);
    DoubleExtDescriptor::type_s1(base, map)?.build()
}

pub fn generalized_double_extension(base: Arc<QuadraticZ2Space>, map: Matrix, x0: Vector) -> Result<Qls> {
    DoubleExtDescriptor::generalized(base, map, x0)?.build()
}

/// The symplectic descriptor of an amalgamated product: orthogonal sum of bases, block-diagonal map.
pub fn amalgamate(descriptors: &[DoubleExtDescriptor]) -> Result<DoubleExtDescriptor> {
    if descriptors.is_empty() {
        return Err(QlsError::Empty("amalgamated product of no factors".into()));
    }
    if let Some(d) = descriptors.iter().find(|d| d.variant != Variant::Symplectic) {
        return Err(QlsError::UnsupportedVariant(format!("{:?} factors cannot be amalgamated", d.variant)));
    }
    let maps: Vec<Matrix> = descriptors.iter().map(|d| d.map.clone()).collect();
    let grams: Vec<Matrix> = descriptors.iter().map(|d| d.base.gram1().clone()).collect();
    let base = QuadraticZ2Space::new(Matrix::zeros(0, 0), Matrix::block_diag(&grams))?;
    DoubleExtDescriptor::symplectic(Arc::new(base), Matrix::block_diag(&maps))
}

pub fn amalgamated_product(descriptors: &[DoubleExtDescriptor]) -> Result<Qls> {
    amalgamate(descriptors)?.build()
}

/// The ambient map `C = ad(Y₁)` of a generalized extension, as a matrix on the whole algebra.
pub fn ambient_map(g: &Qls) -> Matrix {
    let n = g.dim();
    g.adjoint(&linalg::unit_vector(n, n - 1))
}
