//! JSON encodings of spaces, algebras, descriptors, forms, matrices and orbit data.
//!
//! Output goes through [`serde_json::Value`], whose object keys are sorted, so
//! identical inputs give byte-identical text.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::Qls;
use crate::error::{QlsError, Result};
use crate::extensions::{DoubleExtDescriptor, Variant};
use crate::forms::SuperForm;
use crate::linalg::{Matrix, Vector};
use crate::orbits::{FormKind, OrbitInvariant};
use crate::scalar::Scalar;
use crate::space::QuadraticZ2Space;

fn parse_err(e: serde_json::Error) -> QlsError {
    QlsError::Parse(e.to_string())
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("plain data serializes")
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    to_value(&m.to_rows())
}

fn matrix_from_rows(rows: Vec<Vec<Scalar>>, expected: Option<usize>) -> Result<Matrix> {
    let m = if rows.is_empty() { Matrix::zeros(0, 0) } else { Matrix::from_rows(rows)? };
    if let Some(n) = expected {
        if m.rows() != n || m.cols() != n {
            return Err(QlsError::Parse(format!("expected a {n}×{n} matrix")));
        }
    }
    Ok(m)
}

#[derive(Serialize, Deserialize)]
struct SpaceRecord {
    dim0: usize,
    dim1: usize,
    gram0: Vec<Vec<Scalar>>,
    gram1: Vec<Vec<Scalar>>,
}

impl SpaceRecord {
    fn from_space(s: &QuadraticZ2Space) -> Self {
        Self { dim0: s.dim0(), dim1: s.dim1(), gram0: s.gram0().to_rows(), gram1: s.gram1().to_rows() }
    }

    fn into_space(self) -> Result<QuadraticZ2Space> {
        let g0 = matrix_from_rows(self.gram0, Some(self.dim0))?;
        let g1 = matrix_from_rows(self.gram1, Some(self.dim1))?;
        QuadraticZ2Space::new(g0, g1)
    }
}

pub fn space_to_json(s: &QuadraticZ2Space) -> Value {
    to_value(&SpaceRecord::from_space(s))
}

pub fn space_from_json(v: &Value) -> Result<QuadraticZ2Space> {
    SpaceRecord::deserialize(v).map_err(parse_err)?.into_space()
}

#[derive(Serialize, Deserialize)]
struct BracketRecord {
    i: usize,
    j: usize,
    value: Vec<Scalar>,
}

#[derive(Serialize, Deserialize)]
struct QlsRecord {
    space: SpaceRecord,
    brackets: Vec<BracketRecord>,
}

pub fn qls_to_json(g: &Qls) -> Value {
    let brackets = g
        .upper_entries()
        .into_iter()
        .map(|(i, j, v)| BracketRecord { i, j, value: v.clone() })
        .collect();
    to_value(&QlsRecord { space: SpaceRecord::from_space(g.space()), brackets })
}

/// Reads an algebra. Gram data is only shape-checked: a degenerate form is
/// accepted and surfaces as a failing nondegeneracy flag in the structure report.
pub fn qls_from_json(v: &Value) -> Result<Qls> {
    let rec = QlsRecord::deserialize(v).map_err(parse_err)?;
    let g0 = matrix_from_rows(rec.space.gram0, Some(rec.space.dim0))?;
    let g1 = matrix_from_rows(rec.space.gram1, Some(rec.space.dim1))?;
    let space = Arc::new(QuadraticZ2Space::new_unchecked(g0, g1)?);
    let n = space.dim();
    let entries = rec.brackets.into_iter().map(|b| (b.i, b.j, b.value)).collect::<Vec<_>>();
    if entries.iter().any(|(i, j, v)| *i >= n || *j >= n || v.len() != n || i > j) {
        return Err(QlsError::Parse(format!("bracket entries must satisfy i ≤ j < {n} with {n} coordinates")));
    }
    Qls::from_upper_entries(space, entries)
}

#[derive(Serialize, Deserialize)]
struct DescriptorRecord {
    variant: Variant,
    base: SpaceRecord,
    map: Vec<Vec<Scalar>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    x0: Option<Vec<Scalar>>,
}

pub fn descriptor_to_json(d: &DoubleExtDescriptor) -> Value {
    to_value(&DescriptorRecord {
        variant: d.variant(),
        base: SpaceRecord::from_space(d.base()),
        map: d.map().to_rows(),
        x0: d.x0().cloned(),
    })
}

pub fn descriptor_from_json(v: &Value) -> Result<DoubleExtDescriptor> {
    let rec = DescriptorRecord::deserialize(v).map_err(parse_err)?;
    let base = Arc::new(rec.base.into_space()?);
    let map = matrix_from_rows(rec.map, Some(base.dim()))?;
    match (rec.variant, rec.x0) {
        (Variant::Symplectic, None) => DoubleExtDescriptor::symplectic(base, map),
        (Variant::TypeS1, None) => DoubleExtDescriptor::type_s1(base, map),
        (Variant::Generalized, Some(x0)) => DoubleExtDescriptor::generalized(base, map, x0),
        (Variant::Generalized, None) => Err(QlsError::Parse("generalized descriptor needs x0".into())),
        (_, Some(_)) => Err(QlsError::Parse("x0 is only meaningful for generalized descriptors".into())),
    }
}

/// Whether a JSON document looks like a descriptor rather than a matrix file.
pub fn is_descriptor(v: &Value) -> bool {
    v.get("variant").is_some()
}

pub fn form_to_json(f: &SuperForm) -> Value {
    Value::Array(
        f.terms()
            .iter()
            .map(|(k, c)| json!({"alt": k.alt, "sym": k.sym, "coeff": to_value(c)}))
            .collect(),
    )
}

/// A skew map with optional Gram data and form sign.
pub struct MatrixInput {
    pub matrix: Matrix,
    pub gram: Option<Matrix>,
    pub kind: Option<FormKind>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MatrixRecord {
    Bare(Vec<Vec<Scalar>>),
    Full {
        matrix: Vec<Vec<Scalar>>,
        #[serde(default)]
        gram: Option<Vec<Vec<Scalar>>>,
        #[serde(default)]
        eps: Option<i64>,
    },
}

fn square_from_rows(rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
    let matrix = matrix_from_rows(rows, None)?;
    if !matrix.is_square() {
        return Err(QlsError::Parse("matrix must be square".into()));
    }
    Ok(matrix)
}

pub fn matrix_input_from_json(v: &Value) -> Result<MatrixInput> {
    match MatrixRecord::deserialize(v).map_err(parse_err)? {
        MatrixRecord::Bare(rows) => Ok(MatrixInput { matrix: square_from_rows(rows)?, gram: None, kind: None }),
        MatrixRecord::Full { matrix, gram, eps } => {
            let matrix = square_from_rows(matrix)?;
            let gram = gram.map(|g| matrix_from_rows(g, Some(matrix.rows()))).transpose()?;
            let kind = eps.map(FormKind::from_sign).transpose().map_err(|e| QlsError::Parse(e.to_string()))?;
            Ok(MatrixInput { matrix, gram, kind })
        }
    }
}

pub fn orbit_invariant_to_json(inv: &OrbitInvariant) -> Value {
    json!({
        "eps": inv.kind.sign(),
        "nilpotent": inv.nilpotent.parts(),
        "invertible": inv.invertible.entries.iter().map(|e| json!({"lambda": to_value(&e.lambda), "d": e.d.parts()})).collect::<Vec<_>>(),
        "nilpotent_dim": inv.nilpotent_dim,
        "invertible_dim": inv.invertible_dim,
    })
}

pub fn vectors_to_json(vs: &[Vector]) -> Value {
    to_value(&vs)
}

/// Serializes any library report type through the sorted-key value model.
pub fn report_to_json<T: Serialize>(t: &T) -> Value {
    to_value(t)
}
