use serde::Serialize;

use super::canonical::is_skew;
use super::jordan::{fitting, jordan_partition, zero_eigen_partition};
use super::partition::{FormKind, Partition};
use super::spectrum::split_roots;
use crate::error::{QlsError, Result};
use crate::exec::Exec;
use crate::linalg::Matrix;
use crate::scalar::{Field, Scalar};

/// The representative of `{λ, −λ}` with the larger `(re, im)` pair.
pub fn pair_representative(lambda: &Scalar) -> Scalar {
    let neg = -lambda.clone();
    if (neg.re(), neg.im()) > (lambda.re(), lambda.im()) {
        neg
    } else {
        lambda.clone()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TripleEntry {
    pub lambda: Scalar,
    pub d: Partition,
}

/// Spectrum and per-eigenvalue Jordan data of an invertible skew map, one entry per `{λ, −λ}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct InvertibleTriple {
    pub entries: Vec<TripleEntry>,
}

impl InvertibleTriple {
    /// `m(λ)`, the multiplicity of a representative.
    pub fn multiplicity(&self, lambda: &Scalar) -> usize {
        let rep = pair_representative(lambda);
        self.entries.iter().find(|e| e.lambda == rep).map_or(0, |e| e.d.total())
    }

    /// Dimension of the space the triple describes.
    pub fn dimension(&self) -> usize {
        2 * self.entries.iter().map(|e| e.d.total()).sum::<usize>()
    }

    /// The triple of `μ·C`.
    pub fn scaled(&self, mu: &Scalar) -> InvertibleTriple {
        let mut entries: Vec<TripleEntry> = self
            .entries
            .iter()
            .map(|e| TripleEntry { lambda: pair_representative(&(&e.lambda * mu)), d: e.d.clone() })
            .collect();
        entries.sort_by(|a, b| a.lambda.cmp(&b.lambda));
        InvertibleTriple { entries }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

pub fn invertible_triple(c: &Matrix, gram: &Matrix, field: Field) -> Result<InvertibleTriple> {
    if !is_skew(c, gram) {
        return Err(QlsError::NotSkew("Cᵀ·B + B·C ≠ 0".into()));
    }
    let n = c.rows();
    if c.rank() != n {
        return Err(QlsError::NotInvertible("invertible part must have full rank".into()));
    }
    let roots = split_roots(&c.charpoly(), field)?;
    let partition_at = |lambda: &Scalar| zero_eigen_partition(&c.sub(&Matrix::identity(n).scale(lambda)));
    let mut entries = Vec::new();
    for lambda in &roots {
        if pair_representative(lambda) != *lambda {
            continue;
        }
        let d = partition_at(lambda);
        let partner = partition_at(&-lambda.clone());
        if d != partner || !roots.contains(&-lambda.clone()) {
            return Err(QlsError::Internal(format!("spectrum of a skew map is not symmetric at {lambda}")));
        }
        entries.push(TripleEntry { lambda: lambda.clone(), d });
    }
    entries.sort_by(|a, b| a.lambda.cmp(&b.lambda));
    let triple = InvertibleTriple { entries };
    if triple.dimension() != n {
        return Err(QlsError::Internal("multiplicities do not add up to the dimension".into()));
    }
    Ok(triple)
}

/// Complete adjoint-orbit datum of a skew map.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct OrbitInvariant {
    pub kind: FormKind,
    pub nilpotent: Partition,
    pub invertible: InvertibleTriple,
    pub nilpotent_dim: usize,
    pub invertible_dim: usize,
}

fn check_form(gram: &Matrix, kind: FormKind) -> Result<()> {
    let ok = match kind {
        FormKind::Orthogonal => gram.is_symmetric(),
        FormKind::Symplectic => gram.is_antisymmetric(),
    };
    if !ok || gram.rank() != gram.rows() {
        return Err(QlsError::InvalidSpace(format!("Gram matrix is not a nondegenerate {kind:?} form")));
    }
    Ok(())
}

pub fn orbit_invariant(c: &Matrix, gram: &Matrix, kind: FormKind, field: Field) -> Result<OrbitInvariant> {
    check_form(gram, kind)?;
    let fit = fitting(c, gram)?;
    let nilpotent = jordan_partition(&fit.nilpotent_map)?;
    if !nilpotent.is_admissible(kind) {
        return Err(QlsError::Internal(format!("nilpotent part {nilpotent} is not admissible")));
    }
    let invertible = invertible_triple(&fit.invertible_map, &fit.invertible_gram, field)?;
    Ok(OrbitInvariant {
        kind,
        nilpotent,
        invertible,
        nilpotent_dim: fit.nilpotent_basis.len(),
        invertible_dim: fit.invertible_basis.len(),
    })
}

pub fn same_orbit(c: &Matrix, other: &Matrix, gram: &Matrix, kind: FormKind, field: Field) -> Result<bool> {
    if c.rows() != other.rows() {
        return Ok(false);
    }
    Ok(orbit_invariant(c, gram, kind, field)? == orbit_invariant(other, gram, kind, field)?)
}

pub fn projective_same_orbit(c: &Matrix, other: &Matrix, gram: &Matrix, kind: FormKind, field: Field) -> Result<bool> {
    if c.rows() != other.rows() {
        return Ok(false);
    }
    let a = orbit_invariant(c, gram, kind, field)?;
    let b = orbit_invariant(other, gram, kind, field)?;
    Ok(projective_scale(&[(&a, &b)]).is_some())
}

/// Scale ratios `μ'/μ` sending a fixed eigenvalue of `from` onto an eigenvalue of `to`.
pub fn scale_candidates(from: &InvertibleTriple, to: &InvertibleTriple) -> Vec<Scalar> {
    let Some(first) = from.entries.first() else { return Vec::new() };
    let inv = first.lambda.inv().expect("eigenvalues of an invertible map are nonzero");
    let mut out: Vec<Scalar> = Vec::new();
    for e in &to.entries {
        for target in [e.lambda.clone(), -e.lambda.clone()] {
            let r = &target * &inv;
            if !out.contains(&r) {
                out.push(r);
            }
        }
    }
    out
}

/// A common nonzero scale `λ` with `inv(λ·Cₖ) = inv(C'ₖ)` for every pair, if one exists.
///
/// Nilpotent parts must agree exactly. When every invertible part is empty
/// the answer is `1`.
pub fn projective_scale(pairs: &[(&OrbitInvariant, &OrbitInvariant)]) -> Option<Scalar> {
    for (a, b) in pairs {
        if a.kind != b.kind || a.nilpotent != b.nilpotent || a.invertible_dim != b.invertible_dim {
            return None;
        }
    }
    let Some((a, b)) = pairs.iter().find(|(a, _)| !a.invertible.is_empty()) else {
        return Some(Scalar::one());
    };
    let candidates = scale_candidates(&a.invertible, &b.invertible);
    let found = Exec::default().find_first(candidates.len(), |k| {
        let mu = &candidates[k];
        pairs.iter().all(|(x, y)| x.invertible.scaled(mu) == y.invertible).then(|| mu.clone())
    });
    found
}
