//! Exact computations with quadratic Lie superalgebras.
//!
//! The crate is organised bottom-up: [`scalar`] and [`linalg`] provide exact
//! arithmetic, [`space`] the graded quadratic spaces, [`forms`] the
//! super-exterior algebra with its Poisson bracket, [`algebra`] the algebras
//! themselves, [`extensions`] the double-extension constructions and the
//! named catalog, and [`orbits`] the adjoint-orbit classification of skew maps.

pub mod algebra;
pub mod error;
pub mod exec;
pub mod extensions;
pub mod forms;
pub mod json;
pub mod linalg;
pub mod orbits;
pub mod sample;
pub mod scalar;
pub mod space;

pub use algebra::{AlgebraType, Classification, Qls, ReducedDecomposition, StructureReport};
pub use error::{QlsError, Result};
pub use exec::Exec;
pub use forms::{MonomialKey, SuperForm};
pub use linalg::{Matrix, Vector};
pub use scalar::{Field, Scalar};
pub use space::{EvenStyle, Parity, QuadraticZ2Space};
