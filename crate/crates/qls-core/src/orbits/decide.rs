use serde::Serialize;

use super::invariant::{orbit_invariant, projective_scale, OrbitInvariant};
use super::partition::FormKind;
use crate::error::{QlsError, Result};
use crate::extensions::{DoubleExtDescriptor, Variant};
use crate::linalg::Matrix;
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decision {
    pub i_isomorphic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl Decision {
    fn no(reason: impl Into<String>) -> Self {
        Self { i_isomorphic: false, reason: Some(reason.into()) }
    }
}

fn components(d: &DoubleExtDescriptor, field: Field) -> Result<Vec<OrbitInvariant>> {
    let (c0, c1) = d.blocks();
    let mut out = Vec::new();
    let base = d.base();
    let pieces: [(&Matrix, &Matrix, FormKind); 2] =
        [(&c0, base.gram0(), FormKind::Orthogonal), (&c1, base.gram1(), FormKind::Symplectic)];
    for (map, gram, kind) in pieces {
        if d.variant() == Variant::Symplectic && kind == FormKind::Orthogonal {
            continue;
        }
        out.push(orbit_invariant(map, gram, kind, field)?);
    }
    Ok(out)
}

/// Whether the algebras built from two descriptors are isomorphic through an isometry.
///
/// Both recipes with a hyperbolic plane reduce to finding one nonzero `λ`
/// that carries every component map of `a` into the orbit of the matching
/// component of `b`.
pub fn decide_i_isomorphic(a: &DoubleExtDescriptor, b: &DoubleExtDescriptor, field: Field) -> Result<Decision> {
    if a.variant() == Variant::Generalized || b.variant() == Variant::Generalized {
        return Err(QlsError::UnsupportedVariant("isomorphism of generalized extensions".into()));
    }
    if a.variant() != b.variant() {
        return Ok(Decision::no("variant-mismatch"));
    }
    if a.base().dim0() != b.base().dim0() || a.base().dim1() != b.base().dim1() {
        return Ok(Decision::no("dimension-mismatch"));
    }
    let ca = components(a, field)?;
    let cb = components(b, field)?;
    let pairs: Vec<(&OrbitInvariant, &OrbitInvariant)> = ca.iter().zip(&cb).collect();
    Ok(match projective_scale(&pairs) {
        Some(_) => Decision { i_isomorphic: true, reason: None },
        None => Decision::no("no-common-scale"),
    })
}

/// Isomorphism and isometric isomorphism coincide for these extensions.
pub fn decide_isomorphic(a: &DoubleExtDescriptor, b: &DoubleExtDescriptor, field: Field) -> Result<Decision> {
    decide_i_isomorphic(a, b, field)
}
